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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "photonmux/optical_elements.h"
#include "photonmux/quantum_state.h"

namespace photonmux {

struct PairKind {
    enum class Kind : std::uint8_t { PhiPlus, PsiPlus, PhiWithPhase };
    Kind kind = Kind::PhiPlus;
    double phase = 0;  // only for PhiWithPhase

    static PairKind phi_plus() {
        return {Kind::PhiPlus, 0};
    }
    static PairKind psi_plus() {
        return {Kind::PsiPlus, 0};
    }
    static PairKind phi_with_phase(double phase_rad) {
        return {Kind::PhiWithPhase, phase_rad};
    }
    /// (hh + i vv)/sqrt2
    static PairKind phi_i();

    std::string str() const;
};

/// One post-selected photon position. Photons with a fixed basis are measured by the PBS itself
/// and cannot be analyzed further.
struct LayoutSlot {
    Spatial port = Spatial::Port1;
    int slot = 0;
    std::optional<Basis> fixed_basis;

    bool operator==(const LayoutSlot &) const = default;
};

struct FusionResult {
    StateVector state;
    double success_probability = 0;
    int n_photons = 0;
    std::vector<LayoutSlot> mode_layout;

    bool null_state() const {
        return state.empty();
    }
};

/// Overlap s between the envelopes of the two photons meeting at the PBS.
struct OverlapModel {
    double s = 1.0;

    static OverlapModel from_delay(double delay, double sigma);
};

/// exp(-delay^2 / (2 sigma^2)).
double overlap_for_delay(double delay, double sigma);

enum class Postselection : std::uint8_t { Greedy, Deferred };

struct ChainSpec {
    int n_pairs = 2;
    PairKind kind;
    OverlapModel overlap;
    bool hwp_before_pbs = false;
    int delay_slots = 8;
    /// Werner weight of each pair; the remainder is white noise.
    double source_quality = 1.0;
    Postselection schedule = Postselection::Greedy;
    int max_pairs = 5;
};

struct WeightedResult {
    double weight = 0;
    FusionResult result;
};

/// Post-selected mixture: member weights sum to one.
struct ChainEnsemble {
    std::vector<WeightedResult> members;
    double success_probability = 0;
    int n_photons = 0;
    std::vector<LayoutSlot> mode_layout;
};

/// Two-photon state with the right photon in `right_port` and the left one in `left_port`.
StateVector make_pair(const PairKind &kind, Spatial right_port, Spatial left_port, int slot);

/// Keeps terms with exactly one photon in each listed (port, slot), any polarization or envelope.
FusionResult postselect_one_per_port(const StateVector &state, const std::vector<std::pair<Spatial, int>> &ports_slots);

/// Sequential pairs fused on one PBS. Pair k is created at slot (k-1) * delay_slots; its left photon
/// is delayed by delay_slots and meets the right photon of pair k+1.
FusionResult grow_chain(const ChainSpec &spec);
FusionResult grow_chain(int n_pairs, const PairKind &kind, const OverlapModel &overlap, bool hwp_before_pbs);

/// Like grow_chain, but expands white noise from source_quality < 1 into weighted members.
ChainEnsemble chain_ensemble(const ChainSpec &spec);

/// Layout for n pairs: (1',0), then (2,k*d), (1,k*d) per fusion, then (2', n*d).
std::vector<LayoutSlot> chain_layout(int n_pairs, int delay_slots, bool hwp_before_pbs);

struct ParityGroups {
    std::vector<std::uint32_t> even;
    std::vector<std::uint32_t> odd;
};

/// Splits the 2^n outcomes by parity of the number of second labels (V, M or L).
ParityGroups parity_amplitude_groups(int n_photons);

/// Outcome index -> string, photon 0 is the most significant bit.
std::string outcome_string(std::uint32_t outcome, const std::vector<Basis> &bases);

}  // namespace photonmux
