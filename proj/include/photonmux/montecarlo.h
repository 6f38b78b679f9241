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
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "photonmux/quantum_state.h"

namespace photonmux {

struct ExperimentConfig {
    double rep_rate = 76e6;             // Hz
    double pair_prob = 0.015;           // per pulse
    int delay_slots = 8;                // pulses between a pair and its fusion partner
    double delay_time = 105e-9;         // s, added to left-photon timestamps
    double delay_transmittance = 0.9;
    double det_efficiency = 0.17;
    double dead_time = 50e-9;           // s, non-paralyzable
    /// Fraction f of pulses whose extra pair contaminates a chain: weight 1 - (1 - 2 f p)^n.
    double double_pair_factor = 0.5;
    double duration = 1.0;              // s
    std::uint64_t rng_seed = 1;
    int threads = 0;                    // 0: hardware concurrency

    double period() const {
        return 1.0 / rep_rate;
    }
    /// Throws ConfigError on out-of-range fields.
    void validate() const;
};

inline constexpr const char *kRngAlgorithm = "xoshiro256** per 65536-slot block for pair positions, splitmix64 counter hash per (slot, stream) for pair attributes";

/// Detector index: 2 * (port 2 ? 1 : 0) + (second label ? 1 : 0).
struct Detector {
    Spatial port = Spatial::Port1;
    int label = 0;

    int index() const;
    static Detector from_index(int index);
    std::string str() const;
};

struct EventRecord {
    std::int64_t slot = 0;
    Detector detector;
    double timestamp = 0;
};

/// Registered-outcome probabilities per chain length plus the per-fusion success probability.
struct OutcomeModel {
    /// tables[n] has 2^(2n) entries indexed like outcome_string, photon 0 most significant.
    std::map<int, std::vector<double>> tables;
    double fusion_success = 0.5;

    static OutcomeModel uniform(int max_pairs, double fusion_success = 0.5);
    int max_pairs() const;
    /// Throws ModelError for missing lengths or tables not summing to one.
    void validate() const;
};

struct FoldCounts {
    std::uint64_t attempts = 0;      // n consecutive pairs present
    std::uint64_t postselected = 0;  // every fusion succeeded
    std::uint64_t detected = 0;      // all 2n photons detected
    std::uint64_t registered = 0;    // and no click lost to dead time
    std::vector<std::uint64_t> outcome_counts;
};

struct CountSummary {
    std::uint64_t slots = 0;
    std::uint64_t pairs = 0;
    double duration = 0;
    std::uint64_t rng_seed = 0;
    std::array<std::uint64_t, 4> singles{};  // registered clicks per detector
    std::map<int, FoldCounts> folds;         // keyed by number of pairs
};

struct TimelineOptions {
    std::vector<int> fold_pairs{2, 3};
    /// Collect registered clicks; intended for short runs.
    bool record_events = false;
};

struct TimelineResult {
    CountSummary summary;
    std::vector<EventRecord> events;
};

TimelineResult run_timeline(const ExperimentConfig &config, const OutcomeModel &model, const TimelineOptions &options = {});

/// rep_rate * p^n * eta^(2n) * T_d^n * 2^-(n-1)
double analytic_rate(const ExperimentConfig &config, int n_pairs);

/// Weight of white-noise contamination for an n-pair chain from second-order emission.
double double_pair_weight(const ExperimentConfig &config, int n_pairs);
std::vector<double> contaminate(const std::vector<double> &table, double weight);
double total_variation(const std::vector<double> &a, const std::vector<double> &b);

/// Where each photon of a four-photon chain lands: photon 1 at 0, photons 2 and 3 at delay, photon 4 at 2 delay.
struct Click {
    Detector detector;
    double time = 0;
};
std::array<Click, 4> fourfold_clicks(std::uint32_t outcome, double delay_time);

/// Non-paralyzable dead time: a click registers when at least dead_time after the last registered click
/// on the same detector. Clicks need not be sorted. Returns one flag per click.
std::vector<bool> registered_clicks(const std::vector<Click> &clicks, double dead_time);

struct DeadTimeRow {
    double delay_time = 0;
    double efficiency = 0;  // registered fraction of fourfold candidates
    double lost_mass = 0;
};

std::vector<DeadTimeRow> dead_time_study(
    const ExperimentConfig &config, const std::vector<double> &delay_values, const std::vector<double> &fourfold_table);

void write_count_summary(std::ostream &out, const CountSummary &summary, const ExperimentConfig &config);
void write_events(std::ostream &out, const std::vector<EventRecord> &events);
void write_dead_time_table(std::ostream &out, const std::vector<DeadTimeRow> &rows);

}  // namespace photonmux
