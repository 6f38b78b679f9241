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

#include "photonmux/quantum_state.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "photonmux/error.h"
#include "photonmux/tolerances.h"

namespace photonmux {

std::string to_string(Spatial s) {
    switch (s) {
        case Spatial::Port1:
            return "1";
        case Spatial::Port2:
            return "2";
        case Spatial::Port1Prime:
            return "1'";
        case Spatial::Port2Prime:
            return "2'";
    }
    return "?";
}

char to_char(Polarization p) {
    return p == Polarization::H ? 'h' : 'v';
}

std::strong_ordering PhotonMode::operator<=>(const PhotonMode &other) const {
    return std::tie(time_slot, spatial, polarization, envelope) <=>
           std::tie(other.time_slot, other.spatial, other.polarization, other.envelope);
}

std::string PhotonMode::str() const {
    std::ostringstream out;
    out << to_char(polarization) << '@' << to_string(spatial) << ",t" << time_slot;
    if (envelope != 0) {
        out << ",e" << envelope;
    }
    return out.str();
}

BasisState BasisState::from_modes(std::span<const PhotonMode> modes) {
    std::vector<Occupation> occ;
    for (const auto &m : modes) {
        occ.push_back({m, 1});
    }
    return from_occupations(std::move(occ));
}

BasisState BasisState::from_occupations(std::vector<Occupation> occupations) {
    std::sort(occupations.begin(), occupations.end(), [](const Occupation &a, const Occupation &b) {
        return a.mode < b.mode;
    });
    BasisState out;
    for (const auto &o : occupations) {
        if (o.count == 0) {
            continue;
        }
        if (!out.occupations_.empty() && out.occupations_.back().mode == o.mode) {
            out.occupations_.back().count = static_cast<std::uint8_t>(out.occupations_.back().count + o.count);
        } else {
            out.occupations_.push_back(o);
        }
    }
    return out;
}

int BasisState::photon_number() const {
    int n = 0;
    for (const auto &o : occupations_) {
        n += o.count;
    }
    return n;
}

int BasisState::count(const PhotonMode &mode) const {
    auto it = std::lower_bound(occupations_.begin(), occupations_.end(), mode, [](const Occupation &o, const PhotonMode &m) {
        return o.mode < m;
    });
    if (it != occupations_.end() && it->mode == mode) {
        return it->count;
    }
    return 0;
}

double BasisState::factorial_weight() const {
    double w = 1;
    for (const auto &o : occupations_) {
        for (int k = 2; k <= o.count; ++k) {
            w *= k;
        }
    }
    return w;
}

BasisState BasisState::merged(const BasisState &other) const {
    std::vector<Occupation> all = occupations_;
    all.insert(all.end(), other.occupations_.begin(), other.occupations_.end());
    return from_occupations(std::move(all));
}

bool BasisState::shares_mode_with(const BasisState &other) const {
    auto a = occupations_.begin();
    auto b = other.occupations_.begin();
    while (a != occupations_.end() && b != other.occupations_.end()) {
        if (a->mode == b->mode) {
            return true;
        }
        if (a->mode < b->mode) {
            ++a;
        } else {
            ++b;
        }
    }
    return false;
}

std::string BasisState::str() const {
    if (occupations_.empty()) {
        return "|vac>";
    }
    std::ostringstream out;
    out << '|';
    bool first = true;
    for (const auto &o : occupations_) {
        if (!first) {
            out << ' ';
        }
        first = false;
        out << o.mode.str();
        if (o.count > 1) {
            out << '^' << int(o.count);
        }
    }
    out << '>';
    return out.str();
}

Complex StateVector::amplitude(const BasisState &basis) const {
    auto it = terms_.find(basis);
    return it == terms_.end() ? Complex{0, 0} : it->second;
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &[b, a] : terms_) {
        total += std::norm(a);
    }
    return total;
}

std::vector<PhotonMode> StateVector::occupied_modes() const {
    std::set<PhotonMode> modes;
    for (const auto &[b, a] : terms_) {
        for (const auto &o : b.occupations()) {
            modes.insert(o.mode);
        }
    }
    return {modes.begin(), modes.end()};
}

StateVector StateVector::scaled(Complex factor) const {
    StateBuilder builder;
    for (const auto &[b, a] : terms_) {
        builder.add(b, a * factor);
    }
    return builder.build();
}

std::string StateVector::str() const {
    std::ostringstream out;
    bool first = true;
    for (const auto &[b, a] : terms_) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << '(' << a.real() << (a.imag() < 0 ? "" : "+") << a.imag() << "i)" << b.str();
    }
    return first ? "0" : out.str();
}

void StateBuilder::add(const BasisState &basis, Complex amplitude) {
    terms_[basis] += amplitude;
}

StateVector StateBuilder::build() const {
    StateVector out;
    bool have_number = false;
    for (const auto &[b, a] : terms_) {
        if (std::abs(a) < Tolerances::prune) {
            continue;
        }
        const int n = b.photon_number();
        if (!have_number) {
            out.photon_number_ = n;
            have_number = true;
        } else if (n != out.photon_number_) {
            throw ModelError("terms with different photon numbers in one state");
        }
        for (const auto &o : b.occupations()) {
            if (o.count > kMaxOccupancy) {
                throw ModelError("occupancy above " + std::to_string(kMaxOccupancy) + " in mode " + o.mode.str());
            }
        }
        out.terms_.emplace_hint(out.terms_.end(), b, a);
    }
    return out;
}

StateVector vacuum() {
    return single_term(BasisState{}, 1.0);
}

StateVector single_term(const BasisState &basis, Complex amplitude) {
    StateBuilder b;
    b.add(basis, amplitude);
    return b.build();
}

StateVector single_photon(const PhotonMode &mode) {
    return single_term(BasisState::from_modes(std::span<const PhotonMode>(&mode, 1)));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    const auto modes_a = a.occupied_modes();
    const auto modes_b = b.occupied_modes();
    std::vector<PhotonMode> common;
    std::set_intersection(modes_a.begin(), modes_a.end(), modes_b.begin(), modes_b.end(), std::back_inserter(common));
    if (!common.empty()) {
        throw ModelError("mode collision at " + common.front().str());
    }
    StateBuilder builder;
    for (const auto &[ba, xa] : a.terms()) {
        for (const auto &[bb, xb] : b.terms()) {
            builder.add(ba.merged(bb), xa * xb);
        }
    }
    return builder.build();
}

StateVector apply_mode_unitary(
    const StateVector &state, std::span<const PhotonMode> modes, const Eigen::MatrixXcd &matrix) {
    const auto m = static_cast<Eigen::Index>(modes.size());
    if (matrix.rows() != m || matrix.cols() != m) {
        throw ModelError("mode unitary size does not match mode list");
    }
    if (!is_unitary(matrix, Tolerances::unitarity)) {
        throw ModelError("matrix is not unitary");
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
        for (std::size_t j = i + 1; j < modes.size(); ++j) {
            if (modes[i] == modes[j]) {
                throw ModelError("duplicate mode " + modes[i].str() + " in mode unitary");
            }
        }
    }

    using CountKey = std::vector<std::uint8_t>;
    StateBuilder builder;
    for (const auto &[basis, amp] : state.terms()) {
        std::vector<Occupation> rest;
        std::vector<int> inputs;
        double input_weight = 1;
        for (const auto &occ : basis.occupations()) {
            auto it = std::find(modes.begin(), modes.end(), occ.mode);
            if (it == modes.end()) {
                rest.push_back(occ);
                continue;
            }
            for (int k = 0; k < occ.count; ++k) {
                inputs.push_back(static_cast<int>(it - modes.begin()));
                input_weight *= (k + 1);
            }
        }
        if (inputs.empty()) {
            builder.add(basis, amp);
            continue;
        }

        std::map<CountKey, Complex> expansion{{CountKey(modes.size(), 0), Complex{1, 0}}};
        for (int in : inputs) {
            std::map<CountKey, Complex> next;
            for (const auto &[key, c] : expansion) {
                for (Eigen::Index j = 0; j < m; ++j) {
                    const Complex u = matrix(j, in);
                    if (u == Complex{0, 0}) {
                        continue;
                    }
                    CountKey k2 = key;
                    ++k2[j];
                    next[k2] += c * u;
                }
            }
            expansion = std::move(next);
        }

        for (const auto &[key, c] : expansion) {
            std::vector<Occupation> occ = rest;
            double output_weight = 1;
            for (std::size_t j = 0; j < key.size(); ++j) {
                if (key[j] == 0) {
                    continue;
                }
                occ.push_back({modes[j], key[j]});
                for (int k = 2; k <= key[j]; ++k) {
                    output_weight *= k;
                }
            }
            builder.add(BasisState::from_occupations(std::move(occ)), amp * c * std::sqrt(output_weight / input_weight));
        }
    }
    return builder.build();
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.empty() || b.empty()) {
        return {0, 0};
    }
    if (a.photon_number() != b.photon_number()) {
        throw ModelError("inner product between states of different photon number");
    }
    Complex total{0, 0};
    // Both maps are ordered by the same key.
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() && ib != b.terms().end()) {
        if (ia->first == ib->first) {
            total += std::conj(ia->second) * ib->second;
            ++ia;
            ++ib;
        } else if (ia->first < ib->first) {
            ++ia;
        } else {
            ++ib;
        }
    }
    return total;
}

std::pair<StateVector, double> normalize(const StateVector &state) {
    const double norm = std::sqrt(state.norm_squared());
    if (state.empty() || norm == 0) {
        throw ModelError("null state");
    }
    return {state.scaled(1.0 / norm), norm};
}

}  // namespace photonmux
