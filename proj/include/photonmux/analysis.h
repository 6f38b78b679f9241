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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "photonmux/fusion.h"
#include "photonmux/montecarlo.h"

namespace photonmux {

/// Outcome table over 2^n strings, photon 0 most significant; labels follow the per-photon basis.
struct Histogram {
    int n_photons = 0;
    std::vector<Basis> bases;
    bool counts = false;  // values are nonnegative integers when true
    std::vector<double> values;

    static Histogram from_counts(const std::vector<Basis> &bases, const std::vector<std::uint64_t> &counts);

    double total() const;
    std::vector<double> probabilities() const;
    std::string label(std::uint32_t outcome) const;
};

/// Per-photon bases: the fixed ones from the layout, `free_basis` elsewhere.
std::vector<Basis> default_bases(const std::vector<LayoutSlot> &layout, Basis free_basis);

/// Rotates each photon into its basis and projects on HV. Photons the layout already measures can only be
/// asked for their fixed basis.
Histogram histogram(const FusionResult &result, const std::vector<Basis> &bases);
Histogram histogram(const ChainEnsemble &ensemble, const std::vector<Basis> &bases);

/// (1 - weight) * hist + weight * uniform, in probability mode.
Histogram mix_white_noise(const Histogram &hist, double weight);
/// Noise weight that makes each of `n_dominant` outcomes `ratio` times more likely than any other one,
/// starting from equal dominant outcomes.
double white_noise_weight_for_ratio(double ratio, int n_outcomes, int n_dominant);

struct VisibilityResult {
    double even_sum = 0;
    double odd_sum = 0;
    double visibility = 0;
    double uncertainty = 0;

    bool odd_constructive() const {
        return odd_sum > even_sum;
    }
};

/// |odd - even| / (odd + even) over the parity groups. Binomial error in count mode.
VisibilityResult parity_visibility(const Histogram &hist);
VisibilityResult visibility_from_sums(double even_sum, double odd_sum, double total_counts = 0);

struct DelayRow {
    double delay = 0;
    double overlap = 1;
    VisibilityResult parity;
    std::vector<double> probabilities;
};

/// Rebuilds the chain at each delay with overlap exp(-delay^2 / (2 sigma^2)).
std::vector<DelayRow> delay_scan(
    const ChainSpec &spec, const std::vector<double> &delays, double sigma, const std::vector<Basis> &bases);

struct FidelityBounds {
    double lower = 0;
    double upper = 0;
    double dominant_population = 0;
    double coherence = 0;  // GHZ coherence under the no-coherence model

    bool genuine_entanglement() const {
        return lower > 0.5;
    }
};

/// GHZ fidelity from an HV histogram and a parity visibility. The upper bound credits every bit of
/// visibility to the GHZ coherence; the lower bound first lets unwanted complementary populations
/// explain as much visibility as their full mutual coherence allows.
FidelityBounds fidelity_bounds(const Histogram &hist_hv, double visibility);

double mermin_threshold(int n_particles);

struct ViolationResult {
    bool violated = false;
    double margin = 0;
    double threshold = 0;
};

/// Violation iff visibility - uncertainty > threshold.
ViolationResult violation_check(const VisibilityResult &v, int n_particles);

/// Bisection on the per-pair Werner weight until the parity visibility matches `target`.
double calibrate_source_quality(ChainSpec spec, const std::vector<Basis> &bases, double target, double tol = 1e-10);

/// HV-basis outcome tables of grown chains, for use as Monte Carlo registration statistics.
OutcomeModel outcome_model_from_engine(ChainSpec spec, int max_pairs);

void write_histogram_table(std::ostream &out, const Histogram &hist);
void write_parity_table(std::ostream &out, const std::vector<DelayRow> &rows);
void write_amplitude_table(std::ostream &out, const std::vector<DelayRow> &rows, const std::vector<Basis> &bases);
void write_analysis_summary(std::ostream &out, const VisibilityResult &v, const FidelityBounds &bounds,
                            const ViolationResult &violation, int n_particles);

}  // namespace photonmux
