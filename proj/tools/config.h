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

#include <optional>
#include <string>
#include <vector>

#include "photonmux/fusion.h"
#include "photonmux/montecarlo.h"

namespace photonmux::cli {

struct AnalysisSpec {
    std::vector<double> delays;
    std::optional<double> sigma;
    Basis inner_basis = Basis::PM;
    /// Dominant:other count ratio used to mix white noise into the HV histogram.
    std::optional<double> noise_ratio;
    /// Use this visibility instead of the engine's.
    std::optional<double> visibility;
    double visibility_uncertainty = 0;
    /// Tune the chain's source quality to hit this visibility first.
    std::optional<double> target_visibility;
    std::vector<double> dead_time_delays;
};

struct MonteCarloSpec {
    std::vector<int> fold_pairs{2, 3};
    bool record_events = false;
    bool engine_outcomes = true;  // false: uniform outcome tables
};

struct GraphSpec {
    std::string kind = "auto";  // auto, star, branched_chain, path
    std::vector<std::string> corrections;  // Clifford labels per qubit; skips the search
    int max_search_qubits = 6;
};

struct RunConfig {
    ExperimentConfig experiment;
    ChainSpec chain;
    AnalysisSpec analysis;
    MonteCarloSpec montecarlo;
    GraphSpec graph;
};

/// Strict JSON: unknown keys and wrong types raise ConfigError.
RunConfig parse_config(const std::string &text);
RunConfig load_config(const std::string &path);
/// Every field, defaults resolved; parse_config(effective_config_json(c)) reproduces c.
std::string effective_config_json(const RunConfig &config);

std::string pair_kind_name(const PairKind &kind);

}  // namespace photonmux::cli
