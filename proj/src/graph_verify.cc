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

#include "photonmux/graph_verify.h"

#include <bit>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <sstream>

#include "photonmux/error.h"
#include "photonmux/tolerances.h"

namespace photonmux {

namespace {

/// Returns (qubit index, envelope per position) for one basis state, or throws.
std::pair<Eigen::Index, std::vector<int>> locate(const BasisState &basis, const std::vector<LayoutSlot> &layout) {
    const int n = static_cast<int>(layout.size());
    Eigen::Index index = 0;
    std::vector<int> envelopes(n, 0);
    std::vector<int> seen(n, 0);
    for (const auto &occ : basis.occupations()) {
        int pos = -1;
        for (int j = 0; j < n; ++j) {
            if (layout[j].port == occ.mode.spatial && layout[j].slot == occ.mode.time_slot) {
                pos = j;
                break;
            }
        }
        if (pos < 0) {
            throw ModelError("photon outside the post-selected layout: " + occ.mode.str());
        }
        seen[pos] += occ.count;
        envelopes[pos] = occ.mode.envelope;
        if (occ.mode.polarization == Polarization::V) {
            index |= Eigen::Index{1} << (n - 1 - pos);
        }
    }
    for (int j = 0; j < n; ++j) {
        if (seen[j] != 1) {
            throw ModelError("state is not post-selected: layout position " + std::to_string(j) + " holds " +
                             std::to_string(seen[j]) + " photons");
        }
    }
    return {index, envelopes};
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
    Eigen::Matrix2cd m;
    const Complex i(0, 1);
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, -i, i, 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

std::string matrix_key(const Eigen::Matrix2cd &m) {
    // Canonical up to global phase: make the first significant entry real and positive.
    Complex phase{1, 0};
    for (int k = 0; k < 4; ++k) {
        const Complex v = m(k % 2, k / 2);
        if (std::abs(v) > 1e-9) {
            phase = std::conj(v) / std::abs(v);
            break;
        }
    }
    std::ostringstream key;
    for (int k = 0; k < 4; ++k) {
        const Complex v = m(k % 2, k / 2) * phase;
        key << std::lround(v.real() * 1e6) << ',' << std::lround(v.imag() * 1e6) << ';';
    }
    return key.str();
}

std::vector<SingleQubitClifford> build_cliffords() {
    const double r = 1 / std::numbers::sqrt2;
    Eigen::Matrix2cd h;
    h << r, r, r, -r;
    Eigen::Matrix2cd s;
    s << 1, 0, 0, Complex(0, 1);
    const std::pair<std::string, Eigen::Matrix2cd> gens[2] = {{"H", h}, {"S", s}};

    std::vector<SingleQubitClifford> out;
    std::map<std::string, int> seen;
    std::deque<std::pair<std::string, Eigen::Matrix2cd>> queue{{"I", Eigen::Matrix2cd::Identity()}};
    seen[matrix_key(Eigen::Matrix2cd::Identity())] = 0;
    while (!queue.empty()) {
        auto [label, m] = queue.front();
        queue.pop_front();
        SingleQubitClifford c;
        c.label = label;
        c.matrix = m;
        for (int p = 1; p <= 3; ++p) {
            const Eigen::Matrix2cd conj = m.adjoint() * pauli_matrix(static_cast<Pauli>(p)) * m;
            bool matched = false;
            for (int q = 1; q <= 3 && !matched; ++q) {
                for (int sign : {1, -1}) {
                    if ((conj - double(sign) * pauli_matrix(static_cast<Pauli>(q))).cwiseAbs().maxCoeff() < 1e-9) {
                        c.conjugated[p - 1] = {static_cast<Pauli>(q), sign};
                        matched = true;
                        break;
                    }
                }
            }
            if (!matched) {
                throw ModelError("clifford table construction failed");
            }
        }
        out.push_back(c);
        for (const auto &[glabel, g] : gens) {
            Eigen::Matrix2cd next = g * m;
            const std::string key = matrix_key(next);
            if (seen.contains(key)) {
                continue;
            }
            seen[key] = static_cast<int>(seen.size());
            queue.emplace_back(label == "I" ? glabel : glabel + label, next);
        }
    }
    return out;
}

/// Expectations of every unsigned Pauli string, indexed base 4 with qubit 0 most significant.
std::vector<double> all_pauli_expectations(const QubitState &state) {
    const int n = state.n;
    std::size_t count = 1;
    for (int k = 0; k < n; ++k) {
        count *= 4;
    }
    std::vector<double> out(count);
    PauliString p;
    p.n = n;
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rest = idx;
        p.x = p.z = 0;
        for (int q = n - 1; q >= 0; --q) {
            p.set(q, static_cast<Pauli>(rest % 4));
            rest /= 4;
        }
        out[idx] = pauli_expectation(state, p);
    }
    return out;
}

}  // namespace

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>> &edges) {
    Graph g;
    g.n = n;
    for (auto [a, b] : edges) {
        if (a == b) {
            throw ModelError("graph self-loop at " + std::to_string(a));
        }
        if (a < 0 || b < 0 || a >= n || b >= n) {
            throw ModelError("graph edge out of range");
        }
        g.edges.insert({std::min(a, b), std::max(a, b)});
    }
    return g;
}

Graph Graph::star(int n) {
    std::vector<std::pair<int, int>> e;
    for (int k = 1; k < n; ++k) {
        e.emplace_back(0, k);
    }
    return from_edges(n, e);
}

Graph Graph::path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int k = 1; k < n; ++k) {
        e.emplace_back(k - 1, k);
    }
    return from_edges(n, e);
}

Graph Graph::branched_chain(int n_pairs) {
    if (n_pairs < 2) {
        throw ModelError("branched_chain needs at least 2 pairs");
    }
    const int n = 2 * n_pairs;
    std::vector<std::vector<int>> blocks{{0, 1, 2}};
    for (int k = 2; k < n_pairs; ++k) {
        blocks.push_back({2 * k - 1, 2 * k});
    }
    blocks.back().push_back(n - 1);
    std::vector<std::pair<int, int>> e;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const int center = blocks[b].front();
        for (std::size_t j = 1; j < blocks[b].size(); ++j) {
            e.emplace_back(center, blocks[b][j]);
        }
        if (b > 0) {
            e.emplace_back(blocks[b - 1].front(), center);
        }
    }
    return from_edges(n, e);
}

std::vector<int> Graph::neighbors(int a) const {
    std::vector<int> out;
    for (auto [u, v] : edges) {
        if (u == a) {
            out.push_back(v);
        } else if (v == a) {
            out.push_back(u);
        }
    }
    return out;
}

std::string Graph::str() const {
    std::ostringstream out;
    out << "n=" << n << " edges=";
    bool first = true;
    for (auto [a, b] : edges) {
        out << (first ? "" : " ") << a << '-' << b;
        first = false;
    }
    return out.str();
}

Pauli PauliString::at(int qubit) const {
    const bool xb = (x >> qubit) & 1;
    const bool zb = (z >> qubit) & 1;
    if (xb && zb) {
        return Pauli::Y;
    }
    if (xb) {
        return Pauli::X;
    }
    return zb ? Pauli::Z : Pauli::I;
}

void PauliString::set(int qubit, Pauli p) {
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    x &= ~bit;
    z &= ~bit;
    if (p == Pauli::X || p == Pauli::Y) {
        x |= bit;
    }
    if (p == Pauli::Z || p == Pauli::Y) {
        z |= bit;
    }
}

bool PauliString::commutes_with(const PauliString &o) const {
    return std::popcount((x & o.z) ^ (z & o.x)) % 2 == 0;
}

std::string PauliString::str() const {
    std::string s = sign > 0 ? "+" : "-";
    for (int q = 0; q < n; ++q) {
        s += "IXYZ"[static_cast<int>(at(q))];
    }
    return s;
}

StabilizerSet StabilizerSet::from_graph(const Graph &g) {
    if (g.n > 64) {
        throw ModelError("graphs above 64 qubits are not supported");
    }
    StabilizerSet s;
    for (int a = 0; a < g.n; ++a) {
        PauliString k;
        k.n = g.n;
        k.set(a, Pauli::X);
        for (int b : g.neighbors(a)) {
            k.set(b, Pauli::Z);
        }
        s.generators.push_back(k);
    }
    return s;
}

bool StabilizerSet::pairwise_commuting() const {
    for (std::size_t i = 0; i < generators.size(); ++i) {
        for (std::size_t j = i + 1; j < generators.size(); ++j) {
            if (!generators[i].commutes_with(generators[j])) {
                return false;
            }
        }
    }
    return true;
}

bool StabilizerSet::independent() const {
    // Gaussian elimination over GF(2) on rows [x | z].
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
    for (const auto &g : generators) {
        rows.emplace_back(g.x, g.z);
    }
    std::size_t rank = 0;
    for (int col = 0; col < 128 && rank < rows.size(); ++col) {
        auto bit = [&](const std::pair<std::uint64_t, std::uint64_t> &r) {
            return col < 64 ? (r.first >> col) & 1 : (r.second >> (col - 64)) & 1;
        };
        std::size_t pivot = rank;
        while (pivot < rows.size() && !bit(rows[pivot])) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && bit(rows[r])) {
                rows[r].first ^= rows[rank].first;
                rows[r].second ^= rows[rank].second;
            }
        }
        ++rank;
    }
    return rank == generators.size();
}

QubitState to_qubits(const FusionResult &result) {
    if (result.null_state()) {
        throw ModelError("null state has no qubit representation");
    }
    const int n = static_cast<int>(result.mode_layout.size());
    QubitState q;
    q.n = n;
    q.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    std::optional<std::vector<int>> sector;
    for (const auto &[basis, amp] : result.state.terms()) {
        auto [index, envelopes] = locate(basis, result.mode_layout);
        if (sector && *sector != envelopes) {
            throw ModelError("state spans several envelope sectors; use to_density");
        }
        sector = envelopes;
        q.amplitudes[index] += amp;
    }
    return q;
}

Eigen::MatrixXcd to_density(const ChainEnsemble &ensemble) {
    const int n = static_cast<int>(ensemble.mode_layout.size());
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &member : ensemble.members) {
        std::map<std::vector<int>, Eigen::VectorXcd> sectors;
        for (const auto &[basis, amp] : member.result.state.terms()) {
            auto [index, envelopes] = locate(basis, ensemble.mode_layout);
            auto [it, inserted] = sectors.try_emplace(envelopes, Eigen::VectorXcd::Zero(dim));
            it->second[index] += amp;
        }
        for (const auto &[key, psi] : sectors) {
            rho += member.weight * psi * psi.adjoint();
        }
    }
    return rho;
}

double pauli_expectation(const QubitState &state, const PauliString &p) {
    const int n = state.n;
    // Pauli bits are indexed by qubit; the state index puts qubit 0 at the top bit.
    Eigen::Index xmask = 0;
    Eigen::Index zmask = 0;
    int y_count = 0;
    for (int q = 0; q < n; ++q) {
        const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
        const Pauli l = p.at(q);
        if (l == Pauli::X || l == Pauli::Y) {
            xmask |= bit;
        }
        if (l == Pauli::Z || l == Pauli::Y) {
            zmask |= bit;
        }
        if (l == Pauli::Y) {
            ++y_count;
        }
    }
    // Y = i X Z acting on |b>: i (-1)^b |b^1>.
    static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex global = kIPow[y_count % 4];
    Complex total{0, 0};
    const auto &psi = state.amplitudes;
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
        const double zsign = std::popcount(static_cast<std::uint64_t>(k & zmask)) % 2 ? -1.0 : 1.0;
        total += std::conj(psi[k ^ xmask]) * psi[k] * zsign;
    }
    return (global * total).real() * p.sign;
}

std::vector<double> stabilizer_expectations(const QubitState &state, const Graph &graph) {
    if (state.n != graph.n) {
        throw ModelError("state has " + std::to_string(state.n) + " qubits but graph has " + std::to_string(graph.n));
    }
    std::vector<double> out;
    for (const auto &k : StabilizerSet::from_graph(graph).generators) {
        out.push_back(pauli_expectation(state, k));
    }
    return out;
}

const std::vector<SingleQubitClifford> &single_qubit_cliffords() {
    static const std::vector<SingleQubitClifford> table = build_cliffords();
    return table;
}

QubitState apply_local_unitaries(const QubitState &state, const std::vector<Eigen::Matrix2cd> &unitaries) {
    QubitState out = state;
    for (int q = 0; q < state.n && q < static_cast<int>(unitaries.size()); ++q) {
        out.amplitudes = apply_single_qubit<Complex>(unitaries[q], out.amplitudes, state.n, q);
    }
    return out;
}

QubitState apply_local_cliffords(const QubitState &state, const std::vector<int> &clifford_indices) {
    const auto &table = single_qubit_cliffords();
    std::vector<Eigen::Matrix2cd> u;
    for (int c : clifford_indices) {
        u.push_back(table.at(c).matrix);
    }
    return apply_local_unitaries(state, u);
}

LcCertificate lc_equivalent(const QubitState &state, const Graph &graph, int max_n) {
    if (state.n != graph.n) {
        throw ModelError("state has " + std::to_string(state.n) + " qubits but graph has " + std::to_string(graph.n));
    }
    if (graph.n > max_n) {
        throw ModelError("search too large: " + std::to_string(graph.n) + " qubits exceeds max_n " +
                         std::to_string(max_n) + "; supply corrections and check stabilizer expectations instead");
    }
    const int n = graph.n;
    const auto &table = single_qubit_cliffords();
    const auto generators = StabilizerSet::from_graph(graph).generators;
    const std::vector<double> expectations = all_pauli_expectations(state);

    // Generators are checked once the highest qubit in their support is assigned.
    std::vector<std::vector<int>> completed_at(n);
    for (int a = 0; a < n; ++a) {
        const std::uint64_t support = generators[a].x | generators[a].z;
        completed_at[63 - std::countl_zero(support)].push_back(a);
    }

    LcCertificate cert;
    std::vector<int> assignment(n, 0);
    auto satisfied = [&](const PauliString &k) {
        int sign = k.sign;
        std::size_t idx = 0;
        for (int q = 0; q < n; ++q) {
            const Pauli l = k.at(q);
            int letter = 0;
            if (l != Pauli::I) {
                const SignedPauli img = table[assignment[q]].conjugated[static_cast<int>(l) - 1];
                sign *= img.sign;
                letter = static_cast<int>(img.pauli);
            }
            idx = idx * 4 + letter;
        }
        return sign * expectations[idx] > 1 - Tolerances::stabilizer;
    };
    auto search = [&](auto &&self, int depth) -> bool {
        for (int c = 0; c < static_cast<int>(table.size()); ++c) {
            ++cert.nodes_visited;
            assignment[depth] = c;
            bool ok = true;
            for (int a : completed_at[depth]) {
                if (!satisfied(generators[a])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                continue;
            }
            if (depth + 1 == n || self(self, depth + 1)) {
                return true;
            }
        }
        return false;
    };
    if (n > 0 && search(search, 0)) {
        const QubitState corrected = apply_local_cliffords(state, assignment);
        bool all_plus = true;
        for (double e : stabilizer_expectations(corrected, graph)) {
            all_plus = all_plus && e > 1 - Tolerances::stabilizer;
        }
        if (all_plus) {
            cert.found = true;
            cert.clifford_indices = assignment;
            for (int c : assignment) {
                cert.labels.push_back(table[c].label);
            }
        }
    }
    return cert;
}

}  // namespace photonmux
