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

#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "photonmux/quantum_state.h"

namespace photonmux {

/// Measurement bases. The first label of each basis lands on the H detector after the analyzer.
enum class Basis : std::uint8_t { HV, PM, RL };

/// Detection label characters: {H,V}, {P,M}, {R,L}.
char basis_label(Basis basis, int bit);
std::string to_string(Basis basis);
Basis parse_basis(const std::string &text);

enum class ElementKind : std::uint8_t { PBS, HWP, QWP, PhaseShift, Delay };

struct ElementDescriptor {
    ElementKind kind = ElementKind::HWP;
    double angle_deg = 0;   // wave plates
    double phase_rad = 0;   // phase shift on V relative to H
    int slot_shift = 0;     // delay
    Spatial port = Spatial::Port1;
    Spatial port_b = Spatial::Port2;  // PBS second input
    Spatial out_a = Spatial::Port1;   // PBS outputs
    Spatial out_b = Spatial::Port2;
    int slot = 0;

    static ElementDescriptor half_wave(Spatial port, int slot, double angle_deg);
    static ElementDescriptor quarter_wave(Spatial port, int slot, double angle_deg);
    static ElementDescriptor phase(Spatial port, int slot, double phase_rad);
    static ElementDescriptor delay_line(Spatial port, int slot_shift);
    static ElementDescriptor beam_splitter(Spatial a, Spatial b, Spatial out_a, Spatial out_b, int slot);
};

/// Half-wave plate Jones matrix [[cos 2t, sin 2t], [sin 2t, -cos 2t]] on (H, V).
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, 2, 2> hwp_jones(Scalar angle_deg) {
    const Scalar t = 2 * angle_deg * std::numbers::pi_v<Scalar> / 180;
    Eigen::Matrix<std::complex<Scalar>, 2, 2> m;
    m << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
    return m;
}

/// Quarter-wave plate: diag(1, i) conjugated by a rotation through the plate angle.
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, 2, 2> qwp_jones(Scalar angle_deg) {
    const Scalar t = angle_deg * std::numbers::pi_v<Scalar> / 180;
    Eigen::Matrix<std::complex<Scalar>, 2, 2> rot;
    rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    Eigen::Matrix<std::complex<Scalar>, 2, 2> retarder = Eigen::Matrix<std::complex<Scalar>, 2, 2>::Zero();
    retarder(0, 0) = 1;
    retarder(1, 1) = std::complex<Scalar>(0, 1);
    return rot * retarder * rot.transpose();
}

template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, 2, 2> phase_jones(Scalar phase_rad) {
    Eigen::Matrix<std::complex<Scalar>, 2, 2> m = Eigen::Matrix<std::complex<Scalar>, 2, 2>::Zero();
    m(0, 0) = 1;
    m(1, 1) = std::polar(Scalar(1), phase_rad);
    return m;
}

/// Applies a polarization operator at (port, slot) to every envelope present there.
StateVector apply_polarization_unitary(
    const StateVector &state, Spatial port, int slot, const Eigen::Matrix2cd &jones);

/// Transmits H (a->out_a, b->out_b) and reflects V (a->out_b, b->out_a) at one time slot.
/// The PBS is a pure permutation: no reflection phase.
StateVector pbs(const StateVector &state, Spatial port_a, Spatial port_b, Spatial out_a, Spatial out_b, int slot);
StateVector hwp(const StateVector &state, Spatial port, int slot, double angle_deg);
StateVector qwp(const StateVector &state, Spatial port, int slot, double angle_deg);
StateVector phase_shift(const StateVector &state, Spatial port, int slot, double phase_rad);
/// Shifts every photon in `port` by slot_shift >= 1 time slots.
StateVector delay(const StateVector &state, Spatial port, int slot_shift);

/// Wave plates mapping `basis` onto the HV detection basis at (port, slot).
std::vector<ElementDescriptor> analyzer_basis(Basis basis, Spatial port, int slot);

StateVector apply(const StateVector &state, const ElementDescriptor &element);
StateVector apply(const StateVector &state, std::span<const ElementDescriptor> elements);

}  // namespace photonmux
