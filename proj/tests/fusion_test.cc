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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "photonmux/error.h"

namespace photonmux {
namespace {

StateVector ghz(const std::vector<LayoutSlot> &layout, Polarization first = Polarization::H, bool flip_pattern = false) {
    StateBuilder b;
    for (int branch = 0; branch < 2; ++branch) {
        std::vector<PhotonMode> modes;
        for (std::size_t j = 0; j < layout.size(); ++j) {
            bool v = (branch == 1) != (first == Polarization::V);
            if (flip_pattern && (j == 1 || j == 2)) {
                v = !v;
            }
            modes.push_back({layout[j].port, layout[j].slot, v ? Polarization::V : Polarization::H, 0});
        }
        b.add(BasisState::from_modes(modes), 1 / std::numbers::sqrt2);
    }
    return b.build();
}

std::vector<int> envelopes(const BasisState &basis, const std::vector<LayoutSlot> &layout) {
    std::vector<int> out(layout.size(), -1);
    for (const auto &occ : basis.occupations()) {
        for (std::size_t j = 0; j < layout.size(); ++j) {
            if (layout[j].port == occ.mode.spatial && layout[j].slot == occ.mode.time_slot) {
                out[j] = occ.mode.envelope;
            }
        }
    }
    return out;
}

TEST(MakePair, PhiPlusAndPsiPlus) {
    const StateVector phi = make_pair(PairKind::phi_plus(), Spatial::Port1Prime, Spatial::Port2Prime, 0);
    const StateVector psi = make_pair(PairKind::psi_plus(), Spatial::Port1Prime, Spatial::Port2Prime, 0);
    EXPECT_EQ(phi.size(), 2u);
    EXPECT_NEAR(phi.norm_squared(), 1, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(phi, psi)), 0, 1e-15);
}

TEST(MakePair, PhaseOnVV) {
    const StateVector s = make_pair(PairKind::phi_i(), Spatial::Port1Prime, Spatial::Port2Prime, 0);
    const PhotonMode vv[2] = {{Spatial::Port1Prime, 0, Polarization::V, 0}, {Spatial::Port2Prime, 0, Polarization::V, 0}};
    EXPECT_NEAR(std::abs(s.amplitude(BasisState::from_modes(vv)) - Complex(0, 1 / std::numbers::sqrt2)), 0, 1e-15);
}

TEST(MakePair, SamePortThrows) {
    EXPECT_THROW(make_pair(PairKind::phi_plus(), Spatial::Port1, Spatial::Port1, 0), ModelError);
}

TEST(GrowChain, InductionGivesGhzWithHalvingSuccess) {
    for (int n = 2; n <= 5; ++n) {
        const FusionResult r = grow_chain(n, PairKind::phi_plus(), OverlapModel{1.0}, false);
        EXPECT_NEAR(std::norm(inner_product(r.state, ghz(r.mode_layout))), 1.0, 1e-12) << n;
        EXPECT_NEAR(r.success_probability, std::pow(2.0, -(n - 1)), 1e-15);
        EXPECT_EQ(r.n_photons, 2 * n);
        EXPECT_EQ(r.mode_layout.size(), static_cast<std::size_t>(2 * n));
    }
}

TEST(GrowChain, PsiPlusPairsGiveHVVHandVHHV) {
    const FusionResult r = grow_chain(2, PairKind::psi_plus(), OverlapModel{1.0}, false);
    EXPECT_NEAR(std::norm(inner_product(r.state, ghz(r.mode_layout, Polarization::H, true))), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(r.success_probability, 0.5);
}

TEST(GrowChain, DistinguishablePhotonsLoseCoherence) {
    const FusionResult r = grow_chain(2, PairKind::phi_plus(), OverlapModel{0.0}, false);
    EXPECT_DOUBLE_EQ(r.success_probability, 0.5);
    ASSERT_EQ(r.state.size(), 2u);
    auto it = r.state.terms().begin();
    const auto first = envelopes(it->first, r.mode_layout);
    const double p_first = std::norm(it->second);
    ++it;
    const auto second = envelopes(it->first, r.mode_layout);
    EXPECT_NE(first, second);  // orthogonal sectors: no coherence between the two amplitudes
    EXPECT_NEAR(p_first, 0.5, 1e-12);
    EXPECT_NEAR(std::norm(it->second), 0.5, 1e-12);
}

TEST(GrowChain, DeferredMatchesGreedy) {
    for (int n = 2; n <= 4; ++n) {
        for (bool plates : {false, true}) {
            ChainSpec s;
            s.n_pairs = n;
            s.kind = PairKind::phi_i();
            s.hwp_before_pbs = plates;
            s.overlap.s = 0.7;
            const FusionResult g = grow_chain(s);
            s.schedule = Postselection::Deferred;
            const FusionResult d = grow_chain(s);
            EXPECT_NEAR(g.success_probability, d.success_probability, 1e-12);
            EXPECT_NEAR(std::abs(inner_product(g.state, d.state)), 1.0, 1e-12);
        }
    }
}

TEST(GrowChain, SuccessIndependentOfPlatesAndOverlap) {
    for (double s : {0.0, 0.3, 1.0}) {
        const FusionResult r = grow_chain(3, PairKind::phi_i(), OverlapModel{s}, true);
        EXPECT_NEAR(r.success_probability, 0.25, 1e-12);
        EXPECT_NEAR(r.state.norm_squared(), 1.0, 1e-12);
    }
}

TEST(GrowChain, RejectsBadSpecs) {
    ChainSpec s;
    s.n_pairs = 1;
    EXPECT_THROW(grow_chain(s), ModelError);
    s.n_pairs = 6;
    EXPECT_THROW(grow_chain(s), ModelError);
    s.n_pairs = 2;
    s.overlap.s = 1.5;
    EXPECT_THROW(grow_chain(s), ModelError);
    s.overlap.s = 1;
    s.source_quality = -0.1;
    EXPECT_THROW(grow_chain(s), ModelError);
    s.source_quality = 1;
    s.delay_slots = 0;
    EXPECT_THROW(grow_chain(s), ModelError);
}

TEST(ChainLayout, FixedBasesOnlyWithPlates) {
    const auto plain = chain_layout(3, 8, false);
    const auto plated = chain_layout(3, 8, true);
    ASSERT_EQ(plain.size(), 6u);
    EXPECT_FALSE(plain.front().fixed_basis.has_value());
    EXPECT_EQ(plated.front().fixed_basis, Basis::RL);
    EXPECT_EQ(plated.back().fixed_basis, Basis::RL);
    EXPECT_FALSE(plated[2].fixed_basis.has_value());
    EXPECT_EQ(plated.back().slot, 24);
    EXPECT_EQ(plated.back().port, Spatial::Port2Prime);
}

TEST(ChainEnsemble, PureSourceIsOneMember) {
    ChainSpec s;
    const ChainEnsemble e = chain_ensemble(s);
    ASSERT_EQ(e.members.size(), 1u);
    EXPECT_DOUBLE_EQ(e.members[0].weight, 1.0);
    EXPECT_DOUBLE_EQ(e.success_probability, 0.5);
}

TEST(ChainEnsemble, NoisySourceWeightsSumToOne) {
    ChainSpec s;
    s.n_pairs = 3;
    s.source_quality = 0.8;
    const ChainEnsemble e = chain_ensemble(s);
    double sum = 0;
    for (const auto &m : e.members) {
        sum += m.weight;
        EXPECT_GT(m.weight, 0);
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_LE(e.members.size(), 125u);
}

TEST(Overlap, GaussianInDelay) {
    EXPECT_DOUBLE_EQ(overlap_for_delay(0, 1), 1.0);
    EXPECT_NEAR(overlap_for_delay(1, 1), std::exp(-0.5), 1e-15);
    EXPECT_DOUBLE_EQ(overlap_for_delay(2, 3), overlap_for_delay(-2, 3));
    EXPECT_THROW(overlap_for_delay(1, 0), ModelError);
}

TEST(ParityGroups, SplitByCount) {
    const ParityGroups g = parity_amplitude_groups(4);
    EXPECT_EQ(g.even.size(), 8u);
    EXPECT_EQ(g.odd.size(), 8u);
    EXPECT_EQ(g.even.front(), 0u);
    EXPECT_THROW(parity_amplitude_groups(3), ModelError);
}

TEST(OutcomeString, MostSignificantFirst) {
    EXPECT_EQ(outcome_string(0b0110, {Basis::HV, Basis::HV, Basis::HV, Basis::HV}), "HVVH");
    EXPECT_EQ(outcome_string(0b1000, {Basis::RL, Basis::PM, Basis::PM, Basis::RL}), "LPPR");
}

TEST(Postselect, NullWhenNothingSurvives) {
    const StateVector s = single_photon({Spatial::Port1, 0, Polarization::H, 0});
    const FusionResult r = postselect_one_per_port(s, {{Spatial::Port2, 0}});
    EXPECT_TRUE(r.null_state());
    EXPECT_EQ(r.success_probability, 0);
    EXPECT_THROW(postselect_one_per_port(StateVector{}, {}), ModelError);
}

}  // namespace
}  // namespace photonmux
