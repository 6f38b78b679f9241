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

#include <Eigen/Dense>
#include <complex>

namespace photonmux {

using Complex = std::complex<double>;

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived> &m, typename Derived::RealScalar tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix product = m.adjoint() * m;
    return (product - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// Kronecker product of two dense matrices.
template <typename A, typename B>
Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
    Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Applies a 2x2 operator to qubit `qubit` of an n-qubit vector. Qubit 0 is the most significant bit.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> apply_single_qubit(
    const Eigen::Matrix<Scalar, 2, 2> &op, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> &state, int n, int qubit) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(state.size());
    const Eigen::Index stride = Eigen::Index{1} << (n - 1 - qubit);
    for (Eigen::Index i = 0; i < state.size(); ++i) {
        if (i & stride) {
            continue;
        }
        const Scalar a0 = state[i];
        const Scalar a1 = state[i | stride];
        out[i] = op(0, 0) * a0 + op(0, 1) * a1;
        out[i | stride] = op(1, 0) * a0 + op(1, 1) * a1;
    }
    return out;
}

}  // namespace photonmux
