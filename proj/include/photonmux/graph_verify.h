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

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "photonmux/fusion.h"
#include "photonmux/linalg.h"

namespace photonmux {

/// Simple undirected graph on qubits 0..n-1.
struct Graph {
    int n = 0;
    std::set<std::pair<int, int>> edges;

    static Graph from_edges(int n, const std::vector<std::pair<int, int>> &edges);
    static Graph star(int n);
    static Graph path(int n);
    /// Star-shaped blocks joined center to center; for 3 pairs this is the H graph.
    /// Block 1 holds the first photon and the first fusion outputs, every later fusion starts a
    /// new block, and the last photon joins the final block.
    static Graph branched_chain(int n_pairs);

    std::vector<int> neighbors(int a) const;
    std::string str() const;
};

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Hermitian Pauli string in binary symplectic form with a +-1 sign.
struct PauliString {
    int n = 0;
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    int sign = 1;

    Pauli at(int qubit) const;
    void set(int qubit, Pauli p);
    bool commutes_with(const PauliString &other) const;
    std::string str() const;
};

struct StabilizerSet {
    std::vector<PauliString> generators;

    /// K_a = X_a prod_{b in N(a)} Z_b
    static StabilizerSet from_graph(const Graph &g);
    bool pairwise_commuting() const;
    bool independent() const;
};

/// Qubit register; qubit 0 is the most significant index bit. |h> -> |0>, |v> -> |1>.
struct QubitState {
    int n = 0;
    Eigen::VectorXcd amplitudes;
};

/// Maps each layout photon to a qubit in layout order. Requires one photon per layout position
/// and a single envelope sector.
QubitState to_qubits(const FusionResult &result);

/// Polarization density matrix of an ensemble with envelope labels traced out.
Eigen::MatrixXcd to_density(const ChainEnsemble &ensemble);

double pauli_expectation(const QubitState &state, const PauliString &p);
std::vector<double> stabilizer_expectations(const QubitState &state, const Graph &graph);

struct SignedPauli {
    Pauli pauli = Pauli::I;
    int sign = 1;
};

struct SingleQubitClifford {
    std::string label;  // word in H and S, matrix product order
    Eigen::Matrix2cd matrix;
    /// C^dagger P C for P = X, Y, Z.
    std::array<SignedPauli, 3> conjugated;
};

/// The 24 single-qubit Cliffords modulo global phase; index 0 is the identity.
const std::vector<SingleQubitClifford> &single_qubit_cliffords();

QubitState apply_local_cliffords(const QubitState &state, const std::vector<int> &clifford_indices);
QubitState apply_local_unitaries(const QubitState &state, const std::vector<Eigen::Matrix2cd> &unitaries);

struct LcCertificate {
    bool found = false;
    /// Applying corrections[q] to qubit q turns the state into the graph state.
    std::vector<int> clifford_indices;
    std::vector<std::string> labels;
    std::uint64_t nodes_visited = 0;
};

/// Depth-first search over local Cliffords, pruning on generators whose support is assigned.
LcCertificate lc_equivalent(const QubitState &state, const Graph &graph, int max_n = 6);

}  // namespace photonmux
