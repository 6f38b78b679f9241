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

namespace photonmux {

/// Numerical tolerances shared by every module.
struct Tolerances {
    /// Terms with |amplitude| below this are dropped after each element.
    static constexpr double prune = 1e-14;
    static constexpr double unitarity = 1e-10;
    static constexpr double normalization = 1e-12;
    static constexpr double probability_sum = 1e-9;
    static constexpr double stabilizer = 1e-10;
};

/// Bosonic occupancy cap per mode.
inline constexpr int kMaxOccupancy = 2;

}  // namespace photonmux
