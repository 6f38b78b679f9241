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

#include <vector>

namespace photonmux::testing {

struct OracleBounds {
    double lower = 0;
    double upper = 0;
    /// Smallest eigenvalue over the extremal density matrices.
    double min_eigenvalue = 0;
    /// |<X...X> - V| at the extremal points.
    double parity_residual = 0;
};

/// GHZ fidelity extremized over four-photon density matrices with the given HV diagonal whose
/// parity expectation reproduces `visibility`. Coherences live only between complementary outcomes.
OracleBounds extremize_fidelity(const std::vector<double> &hv_probabilities, double visibility);

/// Two complementary dominant outcomes sharing p_dominant, the rest uniform.
std::vector<double> idealized_histogram(double p_dominant, int n_photons = 4, unsigned dominant = 0);

}  // namespace photonmux::testing
