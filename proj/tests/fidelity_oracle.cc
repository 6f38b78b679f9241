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

#include "fidelity_oracle.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace photonmux::testing {

namespace {

constexpr int kQubits = 4;
constexpr int kDim = 1 << kQubits;
constexpr unsigned kMask = kDim - 1;

Eigen::MatrixXd parity_operator() {
    Eigen::Matrix2d x;
    x << 0, 1, 1, 0;
    Eigen::MatrixXd op = Eigen::MatrixXd::Ones(1, 1);
    for (int q = 0; q < kQubits; ++q) {
        Eigen::MatrixXd next(op.rows() * 2, op.cols() * 2);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                next.block(i * op.rows(), j * op.cols(), op.rows(), op.cols()) = x(i, j) * op;
            }
        }
        op = next;
    }
    return op;
}

struct Problem {
    std::vector<double> p;
    unsigned dominant = 0;
    std::vector<unsigned> others;  // representative of each unwanted complementary pair
    Eigen::MatrixXd parity = parity_operator();

    double coherence_limit(unsigned k) const {
        return std::sqrt(p[k] * p[k ^ kMask]);
    }

    Eigen::MatrixXd density(double c0, const std::vector<double> &c) const {
        Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(kDim, kDim);
        for (unsigned k = 0; k < kDim; ++k) {
            rho(k, k) = p[k];
        }
        rho(dominant, dominant ^ kMask) = rho(dominant ^ kMask, dominant) = c0;
        for (std::size_t j = 0; j < others.size(); ++j) {
            rho(others[j], others[j] ^ kMask) = rho(others[j] ^ kMask, others[j]) = c[j];
        }
        return rho;
    }

    double fidelity(const Eigen::MatrixXd &rho) const {
        Eigen::VectorXd ghz = Eigen::VectorXd::Zero(kDim);
        ghz[dominant] = ghz[dominant ^ kMask] = 1 / std::sqrt(2.0);
        const double plus = ghz.dot(rho * ghz);
        ghz[dominant ^ kMask] *= -1;
        const double minus = ghz.dot(rho * ghz);
        return std::max(plus, minus);
    }

    double parity_value(const Eigen::MatrixXd &rho) const {
        return (rho * parity).trace();
    }

    double min_eigenvalue(const Eigen::MatrixXd &rho) const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho);
        return solver.eigenvalues().minCoeff();
    }
};

/// c0 that reproduces the visibility given the unwanted coherences, clamped to positivity.
double solve_c0(const Problem &pr, const std::vector<double> &c, double visibility) {
    double rest = 0;
    for (double x : c) {
        rest += x;
    }
    const double limit = pr.coherence_limit(pr.dominant);
    return std::clamp(visibility / 2 - rest, -limit, limit);
}

}  // namespace

std::vector<double> idealized_histogram(double p_dominant, int n_photons, unsigned dominant) {
    const unsigned dim = 1u << n_photons;
    std::vector<double> p(dim, (1 - p_dominant) / (dim - 2));
    p[dominant] = p[dominant ^ (dim - 1)] = p_dominant / 2;
    return p;
}

OracleBounds extremize_fidelity(const std::vector<double> &hv_probabilities, double visibility) {
    if (hv_probabilities.size() != kDim) {
        throw std::invalid_argument("oracle handles four photons");
    }
    Problem pr;
    pr.p = hv_probabilities;
    for (unsigned k = 1; k < kDim / 2; ++k) {
        if (pr.p[k] + pr.p[k ^ kMask] > pr.p[pr.dominant] + pr.p[pr.dominant ^ kMask]) {
            pr.dominant = k;
        }
    }
    for (unsigned k = 0; k < kDim / 2; ++k) {
        if (k != pr.dominant && (k ^ kMask) != pr.dominant) {
            pr.others.push_back(k);
        }
    }
    const std::size_t m = pr.others.size();
    std::vector<double> limits(m);
    for (std::size_t j = 0; j < m; ++j) {
        limits[j] = pr.coherence_limit(pr.others[j]);
    }

    OracleBounds out;
    out.min_eigenvalue = std::numeric_limits<double>::infinity();

    // Upper: no unwanted coherence; the GHZ coherence alone carries the parity signal.
    {
        const std::vector<double> zero(m, 0.0);
        const Eigen::MatrixXd rho = pr.density(solve_c0(pr, zero, visibility), zero);
        out.upper = pr.fidelity(rho);
        out.min_eigenvalue = std::min(out.min_eigenvalue, pr.min_eigenvalue(rho));
        out.parity_residual = std::max(out.parity_residual, std::abs(std::abs(pr.parity_value(rho)) - visibility));
    }

    // Lower: unwanted coherences free within positivity, minimizing the fidelity.
    auto objective = [&](const std::vector<double> &c) {
        const double c0 = solve_c0(pr, c, visibility);
        const Eigen::MatrixXd rho = pr.density(c0, c);
        const double residual = std::abs(pr.parity_value(rho) - visibility);
        return pr.fidelity(rho) + 10 * residual;
    };
    std::vector<double> best(m, 0.0);
    double best_value = objective(best);
    for (int g = -10; g <= 10; ++g) {
        std::vector<double> c(m);
        for (std::size_t j = 0; j < m; ++j) {
            c[j] = limits[j] * g / 10.0;
        }
        const double v = objective(c);
        if (v < best_value) {
            best_value = v;
            best = c;
        }
    }
    for (double step = 0.25; step > 1e-9; step /= 2) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t j = 0; j < m; ++j) {
                for (double dir : {1.0, -1.0}) {
                    std::vector<double> c = best;
                    c[j] = std::clamp(c[j] + dir * step * limits[j], -limits[j], limits[j]);
                    const double v = objective(c);
                    if (v < best_value - 1e-15) {
                        best_value = v;
                        best = c;
                        improved = true;
                    }
                }
            }
        }
    }
    const Eigen::MatrixXd rho = pr.density(solve_c0(pr, best, visibility), best);
    out.lower = pr.fidelity(rho);
    out.min_eigenvalue = std::min(out.min_eigenvalue, pr.min_eigenvalue(rho));
    out.parity_residual = std::max(out.parity_residual, std::abs(pr.parity_value(rho) - visibility));
    return out;
}

}  // namespace photonmux::testing
