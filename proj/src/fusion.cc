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

#include "photonmux/fusion.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "photonmux/error.h"
#include "photonmux/tolerances.h"

namespace photonmux {

namespace {

constexpr Spatial kRight = Spatial::Port1Prime;
constexpr Spatial kLeft = Spatial::Port2Prime;

StateVector product_pair(Polarization right, Polarization left, int slot) {
    const PhotonMode modes[2] = {{kRight, slot, right, 0}, {kLeft, slot, left, 0}};
    return single_term(BasisState::from_modes(modes));
}

/// Writes the right photon's envelope as s*(reference) + sqrt(1-s^2)*(fresh label).
StateVector split_envelope(const StateVector &state, Spatial port, int slot, double s, int fresh_envelope) {
    if (s >= 1.0) {
        return state;
    }
    const double c = std::sqrt(std::max(0.0, 1.0 - s * s));
    Eigen::Matrix2cd mix;
    mix << s, -c, c, s;
    StateVector out = state;
    for (auto pol : {Polarization::H, Polarization::V}) {
        const PhotonMode modes[2] = {{port, slot, pol, 0}, {port, slot, pol, fresh_envelope}};
        out = apply_mode_unitary(out, modes, mix);
    }
    return out;
}

/// Routes a freshly created pair: envelope mismatch on the right photon, delay on the left one,
/// optional wave plates on both PBS inputs.
StateVector route_pair(StateVector pair, int index, int slot, const ChainSpec &spec) {
    if (index > 0) {
        pair = split_envelope(pair, kRight, slot, spec.overlap.s, index);
    }
    pair = delay(pair, kLeft, spec.delay_slots);
    if (spec.hwp_before_pbs) {
        pair = hwp(pair, kRight, slot, 22.5);
        pair = hwp(pair, kLeft, slot + spec.delay_slots, 22.5);
    }
    return pair;
}

void validate(const ChainSpec &spec) {
    if (spec.n_pairs < 2) {
        throw ModelError("grow_chain needs at least 2 pairs");
    }
    if (spec.n_pairs > spec.max_pairs) {
        throw ModelError(
            "grow_chain: n_pairs " + std::to_string(spec.n_pairs) + " exceeds maximum " + std::to_string(spec.max_pairs));
    }
    if (spec.delay_slots < 1) {
        throw ModelError("delay_slots must be >= 1");
    }
    if (!(spec.overlap.s >= 0 && spec.overlap.s <= 1)) {
        throw ModelError("overlap s must lie in [0, 1]");
    }
    if (!(spec.source_quality >= 0 && spec.source_quality <= 1)) {
        throw ModelError("source_quality must lie in [0, 1]");
    }
}

FusionResult grow_from_pairs(const std::vector<StateVector> &pairs, const ChainSpec &spec) {
    const int n = static_cast<int>(pairs.size());
    const int d = spec.delay_slots;
    StateVector running = route_pair(pairs[0], 0, 0, spec);
    double success = 1;
    std::vector<std::pair<Spatial, int>> deferred;
    for (int k = 1; k < n; ++k) {
        const int slot = k * d;
        running = tensor(running, route_pair(pairs[k], k, slot, spec));
        running = pbs(running, kRight, kLeft, Spatial::Port1, Spatial::Port2, slot);
        if (spec.schedule == Postselection::Greedy) {
            auto step = postselect_one_per_port(running, {{Spatial::Port1, slot}, {Spatial::Port2, slot}});
            success *= step.success_probability;
            if (step.null_state()) {
                FusionResult out;
                out.n_photons = 2 * n;
                out.mode_layout = chain_layout(n, d, spec.hwp_before_pbs);
                return out;
            }
            running = std::move(step.state);
        } else {
            deferred.emplace_back(Spatial::Port1, slot);
            deferred.emplace_back(Spatial::Port2, slot);
        }
    }
    FusionResult out;
    if (spec.schedule == Postselection::Deferred) {
        out = postselect_one_per_port(running, deferred);
    } else {
        out.state = std::move(running);
        out.success_probability = success;
    }
    out.n_photons = 2 * n;
    out.mode_layout = chain_layout(n, d, spec.hwp_before_pbs);
    return out;
}

}  // namespace

PairKind PairKind::phi_i() {
    return phi_with_phase(std::numbers::pi / 2);
}

std::string PairKind::str() const {
    switch (kind) {
        case Kind::PhiPlus:
            return "phi_plus";
        case Kind::PsiPlus:
            return "psi_plus";
        case Kind::PhiWithPhase: {
            std::ostringstream out;
            out.precision(17);
            out << "phi_phase(" << phase << ")";
            return out.str();
        }
    }
    return "?";
}

double overlap_for_delay(double delay, double sigma) {
    if (!(sigma > 0)) {
        throw ModelError("sigma must be > 0");
    }
    return std::exp(-delay * delay / (2 * sigma * sigma));
}

OverlapModel OverlapModel::from_delay(double delay, double sigma) {
    return {overlap_for_delay(delay, sigma)};
}

StateVector make_pair(const PairKind &kind, Spatial right_port, Spatial left_port, int slot) {
    if (right_port == left_port) {
        throw ModelError("pair ports must differ");
    }
    using P = Polarization;
    auto term = [&](P r, P l) {
        const PhotonMode modes[2] = {{right_port, slot, r, 0}, {left_port, slot, l, 0}};
        return BasisState::from_modes(modes);
    };
    const double a = 1 / std::numbers::sqrt2;
    StateBuilder b;
    switch (kind.kind) {
        case PairKind::Kind::PhiPlus:
            b.add(term(P::H, P::H), a);
            b.add(term(P::V, P::V), a);
            break;
        case PairKind::Kind::PsiPlus:
            b.add(term(P::H, P::V), a);
            b.add(term(P::V, P::H), a);
            break;
        case PairKind::Kind::PhiWithPhase:
            b.add(term(P::H, P::H), a);
            b.add(term(P::V, P::V), std::polar(a, kind.phase));
            break;
    }
    return b.build();
}

FusionResult postselect_one_per_port(const StateVector &state, const std::vector<std::pair<Spatial, int>> &ports_slots) {
    const double input = state.norm_squared();
    if (state.empty() || input == 0) {
        throw ModelError("null state");
    }
    StateBuilder kept;
    for (const auto &[basis, amp] : state.terms()) {
        bool ok = true;
        for (const auto &[port, slot] : ports_slots) {
            int n = 0;
            for (const auto &o : basis.occupations()) {
                if (o.mode.spatial == port && o.mode.time_slot == slot) {
                    n += o.count;
                }
            }
            if (n != 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            kept.add(basis, amp);
        }
    }
    FusionResult out;
    StateVector survivors = kept.build();
    out.n_photons = state.photon_number();
    if (survivors.empty()) {
        return out;
    }
    auto [normalized, norm] = normalize(survivors);
    out.state = std::move(normalized);
    out.success_probability = norm * norm / input;
    return out;
}

std::vector<LayoutSlot> chain_layout(int n_pairs, int delay_slots, bool hwp_before_pbs) {
    std::vector<LayoutSlot> layout;
    std::optional<Basis> outer;
    if (hwp_before_pbs) {
        outer = Basis::RL;
    }
    layout.push_back({kRight, 0, outer});
    for (int k = 1; k < n_pairs; ++k) {
        layout.push_back({Spatial::Port2, k * delay_slots, std::nullopt});
        layout.push_back({Spatial::Port1, k * delay_slots, std::nullopt});
    }
    layout.push_back({kLeft, n_pairs * delay_slots, outer});
    return layout;
}

FusionResult grow_chain(const ChainSpec &spec) {
    validate(spec);
    std::vector<StateVector> pairs;
    for (int k = 0; k < spec.n_pairs; ++k) {
        pairs.push_back(make_pair(spec.kind, kRight, kLeft, k * spec.delay_slots));
    }
    return grow_from_pairs(pairs, spec);
}

FusionResult grow_chain(int n_pairs, const PairKind &kind, const OverlapModel &overlap, bool hwp_before_pbs) {
    ChainSpec spec;
    spec.n_pairs = n_pairs;
    spec.kind = kind;
    spec.overlap = overlap;
    spec.hwp_before_pbs = hwp_before_pbs;
    return grow_chain(spec);
}

ChainEnsemble chain_ensemble(const ChainSpec &spec) {
    validate(spec);
    ChainEnsemble out;
    out.n_photons = 2 * spec.n_pairs;
    out.mode_layout = chain_layout(spec.n_pairs, spec.delay_slots, spec.hwp_before_pbs);

    // Per pair: the ideal state with weight q, or one of four HV product states with (1-q)/4 each.
    const double q = spec.source_quality;
    const int choices = q < 1.0 ? 5 : 1;
    int members = 1;
    for (int k = 0; k < spec.n_pairs; ++k) {
        members *= choices;
    }
    double total = 0;
    for (int code = 0; code < members; ++code) {
        std::vector<StateVector> pairs;
        double prior = 1;
        int rest = code;
        for (int k = 0; k < spec.n_pairs; ++k) {
            const int choice = rest % choices;
            rest /= choices;
            const int slot = k * spec.delay_slots;
            if (choice == 0) {
                pairs.push_back(make_pair(spec.kind, kRight, kLeft, slot));
                prior *= q;
            } else {
                const int bits = choice - 1;
                pairs.push_back(product_pair(
                    bits & 2 ? Polarization::V : Polarization::H, bits & 1 ? Polarization::V : Polarization::H, slot));
                prior *= (1 - q) / 4;
            }
        }
        if (prior == 0) {
            continue;
        }
        FusionResult r = grow_from_pairs(pairs, spec);
        if (r.null_state()) {
            continue;
        }
        const double w = prior * r.success_probability;
        total += w;
        out.members.push_back({w, std::move(r)});
    }
    if (total <= 0) {
        throw ModelError("chain never post-selects");
    }
    for (auto &m : out.members) {
        m.weight /= total;
    }
    out.success_probability = total;
    return out;
}

ParityGroups parity_amplitude_groups(int n_photons) {
    if (n_photons < 2 || n_photons % 2 != 0 || n_photons > 30) {
        throw ModelError("parity groups need an even photon number >= 2");
    }
    ParityGroups g;
    const std::uint32_t total = std::uint32_t{1} << n_photons;
    for (std::uint32_t k = 0; k < total; ++k) {
        (std::popcount(k) % 2 == 0 ? g.even : g.odd).push_back(k);
    }
    return g;
}

std::string outcome_string(std::uint32_t outcome, const std::vector<Basis> &bases) {
    const int n = static_cast<int>(bases.size());
    std::string s(bases.size(), '?');
    for (int j = 0; j < n; ++j) {
        const int bit = (outcome >> (n - 1 - j)) & 1;
        s[j] = basis_label(bases[j], bit);
    }
    return s;
}

}  // namespace photonmux
