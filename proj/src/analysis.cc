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

#include "photonmux/analysis.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "photonmux/error.h"
#include "photonmux/tolerances.h"

namespace photonmux {

namespace {

std::string num(double x) {
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

int layout_position(const std::vector<LayoutSlot> &layout, const PhotonMode &mode) {
    for (std::size_t j = 0; j < layout.size(); ++j) {
        if (layout[j].port == mode.spatial && layout[j].slot == mode.time_slot) {
            return static_cast<int>(j);
        }
    }
    throw ModelError("photon outside the post-selected layout: " + mode.str());
}

/// Outcome probabilities of a rotated, normalized state; orthogonal envelopes add incoherently.
std::vector<double> hv_probabilities(const StateVector &state, const std::vector<LayoutSlot> &layout) {
    const int n = static_cast<int>(layout.size());
    std::vector<double> p(std::size_t{1} << n, 0.0);
    double total = 0;
    for (const auto &[basis, amp] : state.terms()) {
        std::uint32_t index = 0;
        for (const auto &occ : basis.occupations()) {
            if (occ.count != 1) {
                throw ModelError("histogram expects one photon per layout position");
            }
            if (occ.mode.polarization == Polarization::V) {
                index |= std::uint32_t{1} << (n - 1 - layout_position(layout, occ.mode));
            }
        }
        p[index] += std::norm(amp);
        total += std::norm(amp);
    }
    if (total <= 0) {
        throw ModelError("histogram of a null state");
    }
    for (double &x : p) {
        x /= total;
    }
    return p;
}

StateVector rotate_into(const FusionResult &result, const std::vector<Basis> &bases) {
    const auto &layout = result.mode_layout;
    if (bases.size() != layout.size()) {
        throw ModelError("basis list has " + std::to_string(bases.size()) + " entries for " +
                         std::to_string(layout.size()) + " photons");
    }
    StateVector state = result.state;
    for (std::size_t j = 0; j < layout.size(); ++j) {
        if (layout[j].fixed_basis) {
            if (bases[j] != *layout[j].fixed_basis) {
                throw ModelError("photon " + std::to_string(j) + " is measured in the " +
                                 to_string(*layout[j].fixed_basis) + " basis by the setup");
            }
            continue;
        }
        const auto elements = analyzer_basis(bases[j], layout[j].port, layout[j].slot);
        state = photonmux::apply(state, std::span<const ElementDescriptor>(elements));
    }
    return state;
}

Histogram make_histogram(const std::vector<Basis> &bases) {
    Histogram h;
    h.n_photons = static_cast<int>(bases.size());
    h.bases = bases;
    h.values.assign(std::size_t{1} << h.n_photons, 0.0);
    return h;
}

}  // namespace

Histogram Histogram::from_counts(const std::vector<Basis> &bases, const std::vector<std::uint64_t> &counts) {
    Histogram h = make_histogram(bases);
    if (counts.size() != h.values.size()) {
        throw ModelError("count table has " + std::to_string(counts.size()) + " entries, expected " +
                         std::to_string(h.values.size()));
    }
    h.counts = true;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        h.values[k] = static_cast<double>(counts[k]);
    }
    return h;
}

double Histogram::total() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

std::vector<double> Histogram::probabilities() const {
    const double t = total();
    if (t <= 0) {
        throw ModelError("empty histogram");
    }
    std::vector<double> p(values);
    for (double &x : p) {
        x /= t;
    }
    return p;
}

std::string Histogram::label(std::uint32_t outcome) const {
    return outcome_string(outcome, bases);
}

std::vector<Basis> default_bases(const std::vector<LayoutSlot> &layout, Basis free_basis) {
    std::vector<Basis> out;
    for (const auto &slot : layout) {
        out.push_back(slot.fixed_basis.value_or(free_basis));
    }
    return out;
}

Histogram histogram(const FusionResult &result, const std::vector<Basis> &bases) {
    if (result.null_state()) {
        throw ModelError("histogram of a null state");
    }
    Histogram h = make_histogram(bases);
    h.values = hv_probabilities(rotate_into(result, bases), result.mode_layout);
    return h;
}

Histogram histogram(const ChainEnsemble &ensemble, const std::vector<Basis> &bases) {
    Histogram h = make_histogram(bases);
    if (bases.size() != ensemble.mode_layout.size()) {
        throw ModelError("basis list has " + std::to_string(bases.size()) + " entries for " +
                         std::to_string(ensemble.mode_layout.size()) + " photons");
    }
    for (const auto &m : ensemble.members) {
        const auto p = hv_probabilities(rotate_into(m.result, bases), m.result.mode_layout);
        for (std::size_t k = 0; k < p.size(); ++k) {
            h.values[k] += m.weight * p[k];
        }
    }
    return h;
}

Histogram mix_white_noise(const Histogram &hist, double weight) {
    if (weight < 0 || weight > 1) {
        throw ModelError("noise weight must lie in [0, 1]");
    }
    Histogram out = hist;
    out.counts = false;
    out.values = contaminate(hist.probabilities(), weight);
    return out;
}

double white_noise_weight_for_ratio(double ratio, int n_outcomes, int n_dominant) {
    if (ratio < 1 || n_dominant < 1 || n_dominant >= n_outcomes) {
        throw ModelError("ratio must be >= 1 with fewer dominant outcomes than outcomes");
    }
    // dominant: (1-w)/d + w/N, other: w/N
    const double n = n_outcomes;
    return n / (n + n_dominant * (ratio - 1));
}

VisibilityResult visibility_from_sums(double even_sum, double odd_sum, double total_counts) {
    VisibilityResult v;
    v.even_sum = even_sum;
    v.odd_sum = odd_sum;
    const double sum = even_sum + odd_sum;
    if (sum <= 0) {
        throw ModelError("visibility of an empty histogram");
    }
    v.visibility = std::abs(odd_sum - even_sum) / sum;
    if (total_counts > 0) {
        const double f = odd_sum / sum;
        v.uncertainty = 2 * std::sqrt(f * (1 - f) / total_counts);
    }
    return v;
}

VisibilityResult parity_visibility(const Histogram &hist) {
    for (Basis b : hist.bases) {
        if (b == Basis::HV) {
            throw ModelError("parity visibility needs every photon in a rotated basis (PM or RL)");
        }
    }
    const auto groups = parity_amplitude_groups(hist.n_photons);
    double even = 0, odd = 0;
    for (auto k : groups.even) {
        even += hist.values[k];
    }
    for (auto k : groups.odd) {
        odd += hist.values[k];
    }
    return visibility_from_sums(even, odd, hist.counts ? hist.total() : 0);
}

std::vector<DelayRow> delay_scan(
    const ChainSpec &spec, const std::vector<double> &delays, double sigma, const std::vector<Basis> &bases) {
    if (!(sigma > 0)) {
        throw ModelError("delay_scan needs sigma > 0");
    }
    std::vector<DelayRow> rows;
    ChainSpec s = spec;
    for (double delay : delays) {
        s.overlap = OverlapModel::from_delay(delay, sigma);
        const Histogram h = histogram(chain_ensemble(s), bases);
        rows.push_back({delay, s.overlap.s, parity_visibility(h), h.values});
    }
    return rows;
}

FidelityBounds fidelity_bounds(const Histogram &hist_hv, double visibility) {
    if (!(visibility >= 0 && visibility <= 1)) {
        throw ModelError("visibility must lie in [0, 1]");
    }
    for (Basis b : hist_hv.bases) {
        if (b != Basis::HV) {
            throw ModelError("fidelity bounds need an HV-basis histogram");
        }
    }
    const auto p = hist_hv.probabilities();
    const std::uint32_t mask = static_cast<std::uint32_t>(p.size() - 1);
    std::uint32_t best = 0;
    for (std::uint32_t k = 0; k <= mask / 2; ++k) {
        if (p[k] + p[k ^ mask] > p[best] + p[best ^ mask]) {
            best = k;
        }
    }
    const double pa = p[best], pb = p[best ^ mask];
    double unwanted = 0;
    for (std::uint32_t k = 0; k <= mask / 2; ++k) {
        if (k != best) {
            unwanted += 2 * std::sqrt(p[k] * p[k ^ mask]);
        }
    }
    const double cmax = std::sqrt(pa * pb);
    FidelityBounds f;
    f.dominant_population = pa + pb;
    f.coherence = std::min(visibility / 2, cmax);
    f.upper = f.dominant_population / 2 + f.coherence;
    f.lower = f.dominant_population / 2 + std::min(std::max(0.0, (visibility - unwanted) / 2), cmax);
    return f;
}

double mermin_threshold(int n_particles) {
    if (n_particles < 2) {
        throw ModelError("mermin_threshold needs at least 2 particles");
    }
    return std::pow(2.0, -(n_particles - 1) / 2.0);
}

ViolationResult violation_check(const VisibilityResult &v, int n_particles) {
    ViolationResult r;
    r.threshold = mermin_threshold(n_particles);
    r.margin = v.visibility - v.uncertainty - r.threshold;
    r.violated = r.margin > 0;
    return r;
}

double calibrate_source_quality(ChainSpec spec, const std::vector<Basis> &bases, double target, double tol) {
    auto vis = [&](double q) {
        spec.source_quality = q;
        return parity_visibility(histogram(chain_ensemble(spec), bases)).visibility;
    };
    if (target < 0 || target > vis(1.0)) {
        throw ModelError("target visibility " + num(target) + " is out of reach");
    }
    double lo = 0, hi = 1;
    while (hi - lo > tol) {
        const double mid = (lo + hi) / 2;
        (vis(mid) < target ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

OutcomeModel outcome_model_from_engine(ChainSpec spec, int max_pairs) {
    OutcomeModel model;
    spec.max_pairs = std::max(spec.max_pairs, max_pairs);
    for (int n = 2; n <= max_pairs; ++n) {
        spec.n_pairs = n;
        const ChainEnsemble e = chain_ensemble(spec);
        model.tables[n] = histogram(e, default_bases(e.mode_layout, Basis::HV)).values;
        if (n == 2) {
            model.fusion_success = e.success_probability;
        }
    }
    return model;
}

void write_histogram_table(std::ostream &out, const Histogram &hist) {
    out << "# photonmux fig2_histogram v1\noutcome," << (hist.counts ? "count" : "probability") << '\n';
    for (std::uint32_t k = 0; k < hist.values.size(); ++k) {
        out << hist.label(k) << ',' << num(hist.values[k]) << '\n';
    }
}

void write_parity_table(std::ostream &out, const std::vector<DelayRow> &rows) {
    out << "# photonmux fig3_parity v1\ndelay,even,odd,visibility\n";
    for (const auto &r : rows) {
        out << num(r.delay) << ',' << num(r.parity.even_sum) << ',' << num(r.parity.odd_sum) << ','
            << num(r.parity.visibility) << '\n';
    }
}

void write_amplitude_table(std::ostream &out, const std::vector<DelayRow> &rows, const std::vector<Basis> &bases) {
    out << "# photonmux fig4_amplitudes v1\ndelay";
    for (std::uint32_t k = 0; k < (std::uint32_t{1} << bases.size()); ++k) {
        out << ',' << outcome_string(k, bases);
    }
    out << '\n';
    for (const auto &r : rows) {
        out << num(r.delay);
        for (double p : r.probabilities) {
            out << ',' << num(p);
        }
        out << '\n';
    }
}

void write_analysis_summary(std::ostream &out, const VisibilityResult &v, const FidelityBounds &bounds,
                            const ViolationResult &violation, int n_particles) {
    out << "# photonmux analysis_summary v1\n";
    out << "n_particles=" << n_particles << '\n';
    out << "even_sum=" << num(v.even_sum) << '\n';
    out << "odd_sum=" << num(v.odd_sum) << '\n';
    out << "visibility=" << num(v.visibility) << '\n';
    out << "visibility_uncertainty=" << num(v.uncertainty) << '\n';
    out << "dominant_population=" << num(bounds.dominant_population) << '\n';
    out << "fidelity_lower=" << num(bounds.lower) << '\n';
    out << "fidelity_upper=" << num(bounds.upper) << '\n';
    out << "genuine_entanglement=" << (bounds.genuine_entanglement() ? "true" : "false") << '\n';
    out << "mermin_threshold=" << num(violation.threshold) << '\n';
    out << "violation=" << (violation.violated ? "true" : "false") << '\n';
    out << "violation_margin=" << num(violation.margin) << '\n';
}

}  // namespace photonmux
