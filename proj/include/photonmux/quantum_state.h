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

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "photonmux/linalg.h"

namespace photonmux {

/// Spatial ports around the projecting PBS: 1 and 2 after it, 1' and 2' before it.
enum class Spatial : std::uint8_t { Port1, Port2, Port1Prime, Port2Prime };

enum class Polarization : std::uint8_t { H, V };

std::string to_string(Spatial s);
char to_char(Polarization p);

/// One optical mode. Time slots are in pulse periods; envelope 0 is the reference wave packet,
/// other envelope labels are mutually orthogonal.
struct PhotonMode {
    Spatial spatial = Spatial::Port1;
    int time_slot = 0;
    Polarization polarization = Polarization::H;
    int envelope = 0;

    /// Ordered by time slot first so canonical keys read in detection order.
    std::strong_ordering operator<=>(const PhotonMode &other) const;
    bool operator==(const PhotonMode &other) const = default;

    std::string str() const;
};

struct Occupation {
    PhotonMode mode;
    std::uint8_t count = 1;

    auto operator<=>(const Occupation &) const = default;
};

/// Canonical Fock occupancy: strictly ordered modes, counts in {1, 2}.
class BasisState {
   public:
    BasisState() = default;

    /// One photon per listed mode; repeated modes accumulate occupancy.
    static BasisState from_modes(std::span<const PhotonMode> modes);
    static BasisState from_occupations(std::vector<Occupation> occupations);

    const std::vector<Occupation> &occupations() const {
        return occupations_;
    }
    int photon_number() const;
    int count(const PhotonMode &mode) const;
    /// Product of n! over occupied modes.
    double factorial_weight() const;
    /// Merges two occupancy lists; counts add.
    BasisState merged(const BasisState &other) const;
    bool shares_mode_with(const BasisState &other) const;

    auto operator<=>(const BasisState &) const = default;
    bool operator==(const BasisState &) const = default;

    std::string str() const;

   private:
    std::vector<Occupation> occupations_;
};

/// Immutable sparse superposition of basis states with a uniform photon number.
class StateVector {
   public:
    using TermMap = std::map<BasisState, Complex>;

    StateVector() = default;

    const TermMap &terms() const {
        return terms_;
    }
    int photon_number() const {
        return photon_number_;
    }
    bool empty() const {
        return terms_.empty();
    }
    std::size_t size() const {
        return terms_.size();
    }
    Complex amplitude(const BasisState &basis) const;
    double norm_squared() const;

    /// Every occupied mode across all terms.
    std::vector<PhotonMode> occupied_modes() const;

    StateVector scaled(Complex factor) const;

    std::string str() const;

   private:
    friend class StateBuilder;
    TermMap terms_;
    int photon_number_ = 0;
};

/// Accumulates amplitudes, then emits a pruned canonical StateVector.
class StateBuilder {
   public:
    void add(const BasisState &basis, Complex amplitude);
    /// Throws ModelError on mixed photon numbers or occupancy above the cap.
    StateVector build() const;

   private:
    StateVector::TermMap terms_;
};

StateVector vacuum();
StateVector single_term(const BasisState &basis, Complex amplitude = 1.0);
StateVector single_photon(const PhotonMode &mode);

/// Product of states on disjoint modes. Throws "mode collision" otherwise.
StateVector tensor(const StateVector &a, const StateVector &b);

/// Replaces each creation operator on modes[i] by sum_j matrix(j, i) a^dagger(modes[j]).
StateVector apply_mode_unitary(
    const StateVector &state, std::span<const PhotonMode> modes, const Eigen::MatrixXcd &matrix);

Complex inner_product(const StateVector &a, const StateVector &b);

/// Returns the unit-norm state and the norm it had before rescaling.
std::pair<StateVector, double> normalize(const StateVector &state);

/// Injective relabeling of occupied modes, e.g. permutations and delays.
template <typename Fn>
StateVector relabel_modes(const StateVector &state, Fn &&fn);

}  // namespace photonmux

#include "photonmux/quantum_state.inl"
