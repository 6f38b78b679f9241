// Copyright 2026 The photonmux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "photonmux/optical_elements.h"

#include <set>

#include "photonmux/error.h"

namespace photonmux {

char basis_label(Basis basis, int bit) {
    static constexpr char kLabels[3][2] = {{'H', 'V'}, {'P', 'M'}, {'R', 'L'}};
    return kLabels[static_cast<int>(basis)][bit ? 1 : 0];
}

std::string to_string(Basis basis) {
    switch (basis) {
        case Basis::HV:
            return "HV";
        case Basis::PM:
            return "PM";
        case Basis::RL:
            return "RL";
    }
    return "?";
}

Basis parse_basis(const std::string &text) {
    if (text == "HV") {
        return Basis::HV;
    }
    if (text == "PM") {
        return Basis::PM;
    }
    if (text == "RL") {
        return Basis::RL;
    }
    throw ConfigError("unknown basis '" + text + "' (expected HV, PM or RL)");
}

ElementDescriptor ElementDescriptor::half_wave(Spatial port, int slot, double angle_deg) {
    ElementDescriptor e;
    e.kind = ElementKind::HWP;
    e.port = port;
    e.slot = slot;
    e.angle_deg = angle_deg;
    return e;
}

ElementDescriptor ElementDescriptor::quarter_wave(Spatial port, int slot, double angle_deg) {
    ElementDescriptor e = half_wave(port, slot, angle_deg);
    e.kind = ElementKind::QWP;
    return e;
}

ElementDescriptor ElementDescriptor::phase(Spatial port, int slot, double phase_rad) {
    ElementDescriptor e;
    e.kind = ElementKind::PhaseShift;
    e.port = port;
    e.slot = slot;
    e.phase_rad = phase_rad;
    return e;
}

ElementDescriptor ElementDescriptor::delay_line(Spatial port, int slot_shift) {
    if (slot_shift < 1) {
        throw ModelError("delay slot shift must be >= 1");
    }
    ElementDescriptor e;
    e.kind = ElementKind::Delay;
    e.port = port;
    e.slot_shift = slot_shift;
    return e;
}

ElementDescriptor ElementDescriptor::beam_splitter(Spatial a, Spatial b, Spatial out_a, Spatial out_b, int slot) {
    ElementDescriptor e;
    e.kind = ElementKind::PBS;
    e.port = a;
    e.port_b = b;
    e.out_a = out_a;
    e.out_b = out_b;
    e.slot = slot;
    return e;
}

StateVector apply_polarization_unitary(
    const StateVector &state, Spatial port, int slot, const Eigen::Matrix2cd &jones) {
    std::set<int> envelopes;
    for (const auto &mode : state.occupied_modes()) {
        if (mode.spatial == port && mode.time_slot == slot) {
            envelopes.insert(mode.envelope);
        }
    }
    StateVector out = state;
    for (int env : envelopes) {
        const PhotonMode modes[2] = {
            {port, slot, Polarization::H, env},
            {port, slot, Polarization::V, env},
        };
        out = apply_mode_unitary(out, modes, jones);
    }
    return out;
}

StateVector pbs(const StateVector &state, Spatial port_a, Spatial port_b, Spatial out_a, Spatial out_b, int slot) {
    if (port_a == port_b || out_a == out_b) {
        throw ModelError("pbs port collision");
    }
    const std::set<Spatial> inputs{port_a, port_b};
    const std::set<Spatial> outputs{out_a, out_b};
    if (inputs != outputs) {
        for (const auto &mode : state.occupied_modes()) {
            if (mode.time_slot == slot && outputs.contains(mode.spatial) && !inputs.contains(mode.spatial)) {
                throw ModelError("pbs output port already occupied at " + mode.str());
            }
        }
    }
    return relabel_modes(state, [&](PhotonMode m) {
        if (m.time_slot != slot || !inputs.contains(m.spatial)) {
            return m;
        }
        const bool from_a = m.spatial == port_a;
        if (m.polarization == Polarization::H) {
            m.spatial = from_a ? out_a : out_b;
        } else {
            m.spatial = from_a ? out_b : out_a;
        }
        return m;
    });
}

StateVector hwp(const StateVector &state, Spatial port, int slot, double angle_deg) {
    return apply_polarization_unitary(state, port, slot, hwp_jones(angle_deg));
}

StateVector qwp(const StateVector &state, Spatial port, int slot, double angle_deg) {
    return apply_polarization_unitary(state, port, slot, qwp_jones(angle_deg));
}

StateVector phase_shift(const StateVector &state, Spatial port, int slot, double phase_rad) {
    return apply_polarization_unitary(state, port, slot, phase_jones(phase_rad));
}

StateVector delay(const StateVector &state, Spatial port, int slot_shift) {
    if (slot_shift < 1) {
        throw ModelError("delay slot shift must be >= 1");
    }
    return relabel_modes(state, [&](PhotonMode m) {
        if (m.spatial == port) {
            m.time_slot += slot_shift;
        }
        return m;
    });
}

std::vector<ElementDescriptor> analyzer_basis(Basis basis, Spatial port, int slot) {
    switch (basis) {
        case Basis::HV:
            return {};
        case Basis::PM:
            return {ElementDescriptor::half_wave(port, slot, 22.5)};
        case Basis::RL:
            // QWP(45) sends R=(h+iv)/sqrt2 to h and L to v under this Jones convention.
            return {ElementDescriptor::quarter_wave(port, slot, 45.0)};
    }
    return {};
}

StateVector apply(const StateVector &state, const ElementDescriptor &e) {
    switch (e.kind) {
        case ElementKind::PBS:
            return pbs(state, e.port, e.port_b, e.out_a, e.out_b, e.slot);
        case ElementKind::HWP:
            return hwp(state, e.port, e.slot, e.angle_deg);
        case ElementKind::QWP:
            return qwp(state, e.port, e.slot, e.angle_deg);
        case ElementKind::PhaseShift:
            return phase_shift(state, e.port, e.slot, e.phase_rad);
        case ElementKind::Delay:
            return delay(state, e.port, e.slot_shift);
    }
    return state;
}

StateVector apply(const StateVector &state, std::span<const ElementDescriptor> elements) {
    StateVector out = state;
    for (const auto &e : elements) {
        out = apply(out, e);
    }
    return out;
}

}  // namespace photonmux
