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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "photonmux/error.h"

namespace photonmux {
namespace {

const double kR = 1 / std::numbers::sqrt2;

StateVector photon(Spatial s, int slot, Polarization p) {
    return single_photon({s, slot, p, 0});
}

Complex amp(const StateVector &s, Spatial sp, int slot, Polarization p) {
    const PhotonMode m[1] = {{sp, slot, p, 0}};
    return s.amplitude(BasisState::from_modes(m));
}

TEST(Jones, WavePlatesAreUnitary) {
    for (double a = -90; a <= 90; a += 7.5) {
        EXPECT_TRUE(is_unitary(hwp_jones(a), 1e-12));
        EXPECT_TRUE(is_unitary(qwp_jones(a), 1e-12));
        EXPECT_TRUE(is_unitary(phase_jones(a / 10), 1e-12));
    }
}

TEST(Jones, HalfWaveAt22p5MapsHtoP) {
    const Eigen::Matrix2cd m = hwp_jones(22.5);
    EXPECT_NEAR(std::abs(m(0, 0) - kR), 0, 1e-15);
    EXPECT_NEAR(std::abs(m(1, 0) - kR), 0, 1e-15);
}

TEST(Jones, QuarterWaveAt45MapsCircularToLinear) {
    // R = (h + i v)/sqrt2 lands on H up to phase, L on V.
    const Eigen::Matrix2cd q = qwp_jones(45.0);
    Eigen::Vector2cd r(kR, Complex(0, kR)), l(kR, Complex(0, -kR));
    const Eigen::Vector2cd qr = q * r, ql = q * l;
    EXPECT_NEAR(std::abs(qr[1]), 0, 1e-12);
    EXPECT_NEAR(std::abs(ql[0]), 0, 1e-12);
}

TEST(Pbs, TransmitsHReflectsV) {
    auto s = pbs(photon(Spatial::Port1Prime, 0, Polarization::H), Spatial::Port1Prime, Spatial::Port2Prime, Spatial::Port1,
                 Spatial::Port2, 0);
    EXPECT_NEAR(std::abs(amp(s, Spatial::Port1, 0, Polarization::H)), 1, 1e-15);
    s = pbs(photon(Spatial::Port1Prime, 0, Polarization::V), Spatial::Port1Prime, Spatial::Port2Prime, Spatial::Port1,
            Spatial::Port2, 0);
    EXPECT_NEAR(std::abs(amp(s, Spatial::Port2, 0, Polarization::V) - 1.0), 0, 1e-15);
    s = pbs(photon(Spatial::Port2Prime, 0, Polarization::V), Spatial::Port1Prime, Spatial::Port2Prime, Spatial::Port1,
            Spatial::Port2, 0);
    EXPECT_NEAR(std::abs(amp(s, Spatial::Port1, 0, Polarization::V) - 1.0), 0, 1e-15);
}

TEST(Pbs, OtherSlotsUntouched) {
    const auto s = pbs(photon(Spatial::Port1Prime, 3, Polarization::V), Spatial::Port1Prime, Spatial::Port2Prime,
                       Spatial::Port1, Spatial::Port2, 0);
    EXPECT_NEAR(std::abs(amp(s, Spatial::Port1Prime, 3, Polarization::V)), 1, 1e-15);
}

TEST(Pbs, PortCollisionThrows) {
    EXPECT_THROW(pbs(photon(Spatial::Port1, 0, Polarization::H), Spatial::Port1, Spatial::Port1, Spatial::Port1,
                     Spatial::Port2, 0),
                 ModelError);
}

TEST(Pbs, OccupiedOutputThrows) {
    const StateVector s = tensor(photon(Spatial::Port1Prime, 0, Polarization::H), photon(Spatial::Port1, 0, Polarization::H));
    EXPECT_THROW(pbs(s, Spatial::Port1Prime, Spatial::Port2Prime, Spatial::Port1, Spatial::Port2, 0), ModelError);
}

TEST(Delay, ShiftsOnlyThatPort) {
    const StateVector s = tensor(photon(Spatial::Port2Prime, 0, Polarization::H), photon(Spatial::Port1Prime, 0, Polarization::H));
    const StateVector d = delay(s, Spatial::Port2Prime, 8);
    bool saw_shift = false;
    for (const auto &occ : d.terms().begin()->first.occupations()) {
        if (occ.mode.spatial == Spatial::Port2Prime) {
            saw_shift = occ.mode.time_slot == 8;
        } else {
            EXPECT_EQ(occ.mode.time_slot, 0);
        }
    }
    EXPECT_TRUE(saw_shift);
    EXPECT_THROW(delay(s, Spatial::Port2Prime, 0), ModelError);
}

TEST(PhaseShift, OnlyV) {
    StateBuilder b;
    const PhotonMode h[1] = {{Spatial::Port1, 0, Polarization::H, 0}}, v[1] = {{Spatial::Port1, 0, Polarization::V, 0}};
    b.add(BasisState::from_modes(h), kR);
    b.add(BasisState::from_modes(v), kR);
    const StateVector s = phase_shift(b.build(), Spatial::Port1, 0, std::numbers::pi / 2);
    EXPECT_NEAR(std::abs(amp(s, Spatial::Port1, 0, Polarization::H) - kR), 0, 1e-15);
    EXPECT_NEAR(std::abs(amp(s, Spatial::Port1, 0, Polarization::V) - Complex(0, kR)), 0, 1e-15);
}

TEST(Analyzer, BasisFirstLabelLandsOnH) {
    auto check = [](Basis basis, Eigen::Vector2cd first) {
        StateBuilder b;
        const PhotonMode h[1] = {{Spatial::Port1, 0, Polarization::H, 0}}, v[1] = {{Spatial::Port1, 0, Polarization::V, 0}};
        b.add(BasisState::from_modes(h), first[0]);
        b.add(BasisState::from_modes(v), first[1]);
        const auto elements = analyzer_basis(basis, Spatial::Port1, 0);
        const StateVector out = photonmux::apply(b.build(), std::span<const ElementDescriptor>(elements));
        EXPECT_NEAR(std::abs(amp(out, Spatial::Port1, 0, Polarization::H)), 1, 1e-12) << to_string(basis);
    };
    check(Basis::HV, Eigen::Vector2cd(1, 0));
    check(Basis::PM, Eigen::Vector2cd(kR, kR));
    check(Basis::RL, Eigen::Vector2cd(kR, Complex(0, kR)));
}

TEST(Analyzer, EmptyForHV) {
    EXPECT_TRUE(analyzer_basis(Basis::HV, Spatial::Port1, 0).empty());
}

TEST(Basis, ParseAndLabels) {
    EXPECT_EQ(parse_basis("RL"), Basis::RL);
    EXPECT_EQ(basis_label(Basis::PM, 1), 'M');
    EXPECT_EQ(basis_label(Basis::RL, 0), 'R');
    EXPECT_THROW(parse_basis("XY"), ConfigError);
}

TEST(Apply, DescriptorsMatchDirectCalls) {
    const StateVector s = photon(Spatial::Port1, 0, Polarization::H);
    const auto via = photonmux::apply(s, ElementDescriptor::half_wave(Spatial::Port1, 0, 10.0));
    const auto direct = hwp(s, Spatial::Port1, 0, 10.0);
    EXPECT_NEAR(std::abs(inner_product(via, direct)), 1, 1e-15);
}

}  // namespace
}  // namespace photonmux
