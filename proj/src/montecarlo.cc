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

#include "photonmux/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "photonmux/error.h"
#include "photonmux/fusion.h"
#include "photonmux/tolerances.h"

namespace photonmux {

namespace {

constexpr std::int64_t kBlockSlots = 1 << 16;
constexpr std::int64_t kRegionBlocks = 64;

std::uint64_t splitmix64(std::uint64_t x) {
    std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class Xoshiro256 {
   public:
    explicit Xoshiro256(std::uint64_t seed) {
        for (auto &word : s_) {
            seed += 0x9e3779b97f4a7c15ULL;
            word = splitmix64(seed);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    double uniform() {
        return to_unit(next());
    }

   private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// Per-pair attribute streams.
enum Stream : std::uint64_t {
    kDetRight = 0,
    kDetLeft,
    kFusion,
    kPieceOutcome,
    kBackgroundRight,
    kBackgroundLeft,
    kCandidate,  // + n_pairs
};

class PairRandom {
   public:
    explicit PairRandom(std::uint64_t seed) : key_(splitmix64(seed ^ 0x7061697273ULL)) {
    }
    double operator()(std::int64_t slot, std::uint64_t stream) const {
        return to_unit(splitmix64(key_ + (static_cast<std::uint64_t>(slot) * 16 + stream) * 0x9e3779b97f4a7c15ULL));
    }

   private:
    std::uint64_t key_;
};

std::uint64_t block_seed(std::uint64_t seed, std::int64_t block) {
    return splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(block) * 0xd1b54a32d192ed03ULL));
}

void append_block_pairs(std::vector<std::int64_t> &out, const ExperimentConfig &config, std::int64_t block,
                        std::int64_t total_slots) {
    const double p = config.pair_prob;
    if (p <= 0) {
        return;
    }
    const std::int64_t begin = block * kBlockSlots;
    const std::int64_t end = std::min(begin + kBlockSlots, total_slots);
    if (p >= 1) {
        for (std::int64_t s = begin; s < end; ++s) {
            out.push_back(s);
        }
        return;
    }
    Xoshiro256 rng(block_seed(config.rng_seed, block));
    const double log_q = std::log1p(-p);
    std::int64_t slot = begin - 1;
    while (true) {
        const double gap = std::floor(std::log1p(-rng.uniform()) / log_q);
        if (gap >= static_cast<double>(end - slot)) {
            break;
        }
        slot += static_cast<std::int64_t>(gap) + 1;
        if (slot >= end) {
            break;
        }
        out.push_back(slot);
    }
}

std::vector<double> cumulative(const std::vector<double> &table) {
    std::vector<double> c(table.size());
    std::partial_sum(table.begin(), table.end(), c.begin());
    if (!c.empty()) {
        c.back() = 1.0;
    }
    return c;
}

std::uint32_t sample(const std::vector<double> &cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
        --it;
    }
    return static_cast<std::uint32_t>(it - cdf.begin());
}

int bit_of(std::uint32_t outcome, int photon, int n_photons) {
    return (outcome >> (n_photons - 1 - photon)) & 1;
}

struct RegionResult {
    std::uint64_t pairs = 0;
    std::array<std::uint64_t, 4> singles{};
    std::map<int, FoldCounts> folds;
    std::vector<EventRecord> events;
};

struct PhotonClick {
    double time = 0;
    int detector = 0;
    std::int64_t slot = 0;
    std::uint32_t pair = 0;
    bool left = false;
};

class RegionSimulator {
   public:
    RegionSimulator(const ExperimentConfig &config, const TimelineOptions &options, const OutcomeModel &model,
                    const std::vector<std::vector<double>> &cdfs, std::int64_t total_slots)
        : config_(config), options_(options), model_(model), cdfs_(cdfs), random_(config.rng_seed),
          total_slots_(total_slots) {
    }

    RegionResult run(std::int64_t region) const {
        const std::int64_t n_blocks = (total_slots_ + kBlockSlots - 1) / kBlockSlots;
        const std::int64_t first_block = region * kRegionBlocks;
        const std::int64_t last_block = std::min(first_block + kRegionBlocks, n_blocks);
        const std::int64_t region_begin = first_block * kBlockSlots;
        const std::int64_t region_end = std::min(last_block * kBlockSlots, total_slots_);

        std::vector<std::int64_t> slots;
        for (std::int64_t b = std::max<std::int64_t>(0, first_block - 1); b < std::min(last_block + 1, n_blocks); ++b) {
            append_block_pairs(slots, config_, b, total_slots_);
        }
        const std::size_t count = slots.size();
        const std::int64_t d = config_.delay_slots;

        // Neighbors d slots away, found with two pointers over the sorted slots.
        std::vector<std::int32_t> pred(count, -1), succ(count, -1);
        for (std::size_t j = 0, k = 0; j < count; ++j) {
            while (slots[k] < slots[j] - d) {
                ++k;
            }
            if (slots[k] == slots[j] - d) {
                pred[j] = static_cast<std::int32_t>(k);
                succ[k] = static_cast<std::int32_t>(j);
            }
        }

        std::vector<char> linked(count, 0);
        std::vector<std::int32_t> seg_start(count), seg_pos(count), seg_len(count, 0);
        for (std::size_t j = 0; j < count; ++j) {
            linked[j] = pred[j] >= 0 && random_(slots[j], kFusion) < model_.fusion_success;
            if (linked[j]) {
                seg_start[j] = seg_start[pred[j]];
                seg_pos[j] = seg_pos[pred[j]] + 1;
            } else {
                seg_start[j] = static_cast<std::int32_t>(j);
                seg_pos[j] = 0;
            }
            ++seg_len[seg_start[j]];
        }

        // Piece geometry: segments split into runs of at most max_pairs, each with one registered outcome.
        const int max_pairs = model_.max_pairs();
        std::vector<std::int32_t> piece_first(count), piece_len(count);
        std::vector<std::uint32_t> piece_outcome(count, 0);
        for (std::size_t j = 0; j < count; ++j) {
            const int len = seg_len[seg_start[j]];
            const int piece = seg_pos[j] / max_pairs;
            piece_len[j] = std::min(max_pairs, len - piece * max_pairs);
            if (seg_pos[j] % max_pairs == 0) {
                piece_first[j] = static_cast<std::int32_t>(j);
                if (piece_len[j] >= 2) {
                    piece_outcome[j] = sample(cdfs_[piece_len[j]], random_(slots[j], kPieceOutcome));
                }
            } else {
                piece_first[j] = piece_first[pred[j]];
            }
        }

        const double eta = config_.det_efficiency;
        const double eta_left = config_.det_efficiency * config_.delay_transmittance;
        std::vector<char> det_right(count), det_left(count);
        for (std::size_t j = 0; j < count; ++j) {
            det_right[j] = random_(slots[j], kDetRight) < eta;
            det_left[j] = random_(slots[j], kDetLeft) < eta_left;
        }

        const double period = config_.period();
        const double time_begin = static_cast<double>(region_begin) * period;
        const double time_end = static_cast<double>(region_end) * period;
        std::vector<char> reg_right(det_right), reg_left(det_left);
        RegionResult result;
        if (config_.dead_time <= 0 && !options_.record_events) {
            // Nothing is lost to dead time, so singles need no ordering.
            for (std::size_t j = 0; j < count; ++j) {
                if (!det_right[j] && !det_left[j]) {
                    continue;
                }
                const auto [right_det, left_det] = detectors(j, seg_pos[j] % max_pairs, slots, piece_first, piece_len, piece_outcome);
                const double t = static_cast<double>(slots[j]) * period;
                if (det_right[j] && t >= time_begin && t < time_end) {
                    ++result.singles[right_det];
                }
                const double tl = t + config_.delay_time;
                if (det_left[j] && tl >= time_begin && tl < time_end) {
                    ++result.singles[left_det];
                }
            }
        } else {
            std::vector<PhotonClick> clicks;
            clicks.reserve(2 * count);
            for (std::size_t j = 0; j < count; ++j) {
                const auto [right_det, left_det] = detectors(j, seg_pos[j] % max_pairs, slots, piece_first, piece_len, piece_outcome);
                const double t = static_cast<double>(slots[j]) * period;
                if (det_right[j]) {
                    clicks.push_back({t, right_det, slots[j], static_cast<std::uint32_t>(j), false});
                }
                if (det_left[j]) {
                    clicks.push_back({t + config_.delay_time, left_det, slots[j] + d, static_cast<std::uint32_t>(j), true});
                }
            }
            if (config_.dead_time > 0) {
                std::stable_sort(clicks.begin(), clicks.end(),
                                 [](const PhotonClick &a, const PhotonClick &b) { return a.time < b.time; });
                std::array<double, 4> last{};
                std::array<bool, 4> any{};
                for (const auto &c : clicks) {
                    const bool ok = !any[c.detector] || c.time - last[c.detector] >= dead_window();
                    if (ok) {
                        last[c.detector] = c.time;
                        any[c.detector] = true;
                    } else {
                        (c.left ? reg_left : reg_right)[c.pair] = 0;
                    }
                }
            }
            for (const auto &c : clicks) {
                const bool registered = c.left ? reg_left[c.pair] : reg_right[c.pair];
                if (!registered || c.time < time_begin || c.time >= time_end) {
                    continue;
                }
                ++result.singles[c.detector];
                if (options_.record_events) {
                    result.events.push_back({c.slot, Detector::from_index(c.detector), c.time});
                }
            }
            if (options_.record_events) {
                std::stable_sort(result.events.begin(), result.events.end(),
                                 [](const EventRecord &a, const EventRecord &b) { return a.timestamp < b.timestamp; });
            }
        }

        std::vector<std::pair<int, FoldCounts *>> folds;
        for (int n : options_.fold_pairs) {
            FoldCounts &fold = result.folds[n];
            fold.outcome_counts.assign(std::size_t{1} << (2 * n), 0);
            folds.emplace_back(n, &fold);
        }
        for (std::size_t j = 0; j < count; ++j) {
            if (slots[j] < region_begin || slots[j] >= region_end) {
                continue;
            }
            ++result.pairs;
            for (auto [n, fold] : folds) {
                count_candidate(static_cast<std::int32_t>(j), n, *fold, slots, succ, linked, det_right,
                                det_left, reg_right, reg_left, piece_first, piece_len, piece_outcome);
            }
        }
        return result;
    }

   private:
    double dead_window() const {
        return config_.dead_time * (1 - 1e-12);
    }

    /// Detector indices of the right and left photon of pair j; q is its position inside the piece.
    std::pair<int, int> detectors(std::size_t j, int q, const std::vector<std::int64_t> &slots,
                                  const std::vector<std::int32_t> &piece_first, const std::vector<std::int32_t> &piece_len,
                                  const std::vector<std::uint32_t> &piece_outcome) const {
        const int m = piece_len[j];
        if (m < 2) {
            const int r = std::min(3, static_cast<int>(random_(slots[j], kBackgroundRight) * 4));
            const int l = std::min(3, static_cast<int>(random_(slots[j], kBackgroundLeft) * 4));
            return {r, l};
        }
        const std::uint32_t o = piece_outcome[piece_first[j]];
        const int n_photons = 2 * m;
        int right, left;
        if (q == 0) {
            const int b = bit_of(o, 0, n_photons);
            right = Detector{b ? Spatial::Port2 : Spatial::Port1, b}.index();
        } else {
            right = Detector{Spatial::Port1, bit_of(o, 2 * q, n_photons)}.index();
        }
        if (q == m - 1) {
            const int b = bit_of(o, n_photons - 1, n_photons);
            left = Detector{b ? Spatial::Port1 : Spatial::Port2, b}.index();
        } else {
            left = Detector{Spatial::Port2, bit_of(o, 2 * q + 1, n_photons)}.index();
        }
        return {right, left};
    }

    void count_candidate(std::int32_t j, int n, FoldCounts &fold, const std::vector<std::int64_t> &slots,
                         const std::vector<std::int32_t> &succ, const std::vector<char> &linked,
                         const std::vector<char> &det_right, const std::vector<char> &det_left,
                         const std::vector<char> &reg_right, const std::vector<char> &reg_left,
                         const std::vector<std::int32_t> &piece_first, const std::vector<std::int32_t> &piece_len,
                         const std::vector<std::uint32_t> &piece_outcome) const {
        std::int32_t k = j;
        bool fused = true, detected = true, registered = true;
        for (int step = 0; step < n; ++step) {
            if (k < 0) {
                return;
            }
            if (step > 0) {
                fused = fused && linked[k];
            }
            detected = detected && det_right[k] && det_left[k];
            registered = registered && reg_right[k] && reg_left[k];
            if (step + 1 < n) {
                k = succ[k];
            }
        }
        ++fold.attempts;
        if (!fused) {
            return;
        }
        ++fold.postselected;
        if (!detected) {
            return;
        }
        ++fold.detected;
        if (!registered) {
            return;
        }
        ++fold.registered;
        const bool whole_piece = piece_first[j] == j && piece_len[j] == n;
        const std::uint32_t o =
            whole_piece ? piece_outcome[j] : sample(cdfs_[n], random_(slots[j], kCandidate + static_cast<std::uint64_t>(n)));
        ++fold.outcome_counts[o];
    }

    const ExperimentConfig &config_;
    const TimelineOptions &options_;
    const OutcomeModel &model_;
    const std::vector<std::vector<double>> &cdfs_;
    PairRandom random_;
    std::int64_t total_slots_;
};

}  // namespace

void ExperimentConfig::validate() const {
    auto require = [](bool ok, const std::string &what) {
        if (!ok) {
            throw ConfigError(what);
        }
    };
    auto unit = [](double x) { return x >= 0 && x <= 1; };
    require(rep_rate > 0 && std::isfinite(rep_rate), "rep_rate must be positive");
    require(unit(pair_prob), "pair_prob must lie in [0, 1]");
    require(delay_slots >= 1, "delay_slots must be at least 1");
    require(delay_time >= 0, "delay_time must be nonnegative");
    require(unit(delay_transmittance), "delay_transmittance must lie in [0, 1]");
    require(unit(det_efficiency), "det_efficiency must lie in [0, 1]");
    require(dead_time >= 0, "dead_time must be nonnegative");
    require(double_pair_factor >= 0 && 2 * double_pair_factor * pair_prob <= 1,
            "double_pair_factor must be nonnegative with 2 f p <= 1");
    require(duration > 0 && std::isfinite(duration), "duration must be positive");
    require(threads >= 0, "threads must be nonnegative");
}

int Detector::index() const {
    return 2 * (port == Spatial::Port2 ? 1 : 0) + (label ? 1 : 0);
}

Detector Detector::from_index(int index) {
    return {index >= 2 ? Spatial::Port2 : Spatial::Port1, index & 1};
}

std::string Detector::str() const {
    return std::string(port == Spatial::Port2 ? "P2" : "P1") + (label ? "V" : "H");
}

OutcomeModel OutcomeModel::uniform(int max_pairs, double fusion_success) {
    OutcomeModel m;
    m.fusion_success = fusion_success;
    for (int n = 2; n <= max_pairs; ++n) {
        const std::size_t size = std::size_t{1} << (2 * n);
        m.tables[n].assign(size, 1.0 / static_cast<double>(size));
    }
    return m;
}

int OutcomeModel::max_pairs() const {
    return tables.empty() ? 0 : tables.rbegin()->first;
}

void OutcomeModel::validate() const {
    if (tables.empty() || tables.begin()->first != 2) {
        throw ModelError("outcome model needs a table for 2 pairs");
    }
    int expect = 2;
    for (const auto &[n, table] : tables) {
        if (n != expect++) {
            throw ModelError("outcome model lengths must be contiguous from 2");
        }
        if (table.size() != (std::size_t{1} << (2 * n))) {
            throw ModelError("outcome table for " + std::to_string(n) + " pairs has wrong size");
        }
        double sum = 0;
        for (double p : table) {
            if (p < 0) {
                throw ModelError("negative outcome probability");
            }
            sum += p;
        }
        if (std::abs(sum - 1) > Tolerances::probability_sum) {
            throw ModelError("outcome table for " + std::to_string(n) + " pairs is not normalized");
        }
    }
    if (fusion_success < 0 || fusion_success > 1) {
        throw ModelError("fusion success must lie in [0, 1]");
    }
}

TimelineResult run_timeline(const ExperimentConfig &config, const OutcomeModel &model, const TimelineOptions &options) {
    config.validate();
    model.validate();
    for (int n : options.fold_pairs) {
        if (n < 2 || n > model.max_pairs()) {
            throw ModelError("fold length " + std::to_string(n) + " outside the outcome model");
        }
    }
    std::vector<std::vector<double>> cdfs(static_cast<std::size_t>(model.max_pairs() + 1));
    for (const auto &[n, table] : model.tables) {
        cdfs[n] = cumulative(contaminate(table, double_pair_weight(config, n)));
    }

    const auto total_slots = static_cast<std::int64_t>(std::floor(config.duration * config.rep_rate));
    const std::int64_t n_blocks = (total_slots + kBlockSlots - 1) / kBlockSlots;
    const std::int64_t n_regions = (n_blocks + kRegionBlocks - 1) / kRegionBlocks;

    RegionSimulator sim(config, options, model, cdfs, total_slots);
    std::vector<RegionResult> regions(static_cast<std::size_t>(n_regions));
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (std::int64_t r = next++; r < n_regions; r = next++) {
            regions[static_cast<std::size_t>(r)] = sim.run(r);
        }
    };
    int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::int64_t>(1, n_regions))));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    TimelineResult out;
    CountSummary &s = out.summary;
    s.slots = static_cast<std::uint64_t>(total_slots);
    s.duration = config.duration;
    s.rng_seed = config.rng_seed;
    for (int n : options.fold_pairs) {
        s.folds[n].outcome_counts.assign(std::size_t{1} << (2 * n), 0);
    }
    for (auto &r : regions) {
        s.pairs += r.pairs;
        for (int k = 0; k < 4; ++k) {
            s.singles[k] += r.singles[k];
        }
        for (auto &[n, f] : r.folds) {
            FoldCounts &t = s.folds[n];
            t.attempts += f.attempts;
            t.postselected += f.postselected;
            t.detected += f.detected;
            t.registered += f.registered;
            for (std::size_t o = 0; o < f.outcome_counts.size(); ++o) {
                t.outcome_counts[o] += f.outcome_counts[o];
            }
        }
        out.events.insert(out.events.end(), r.events.begin(), r.events.end());
    }
    return out;
}

double analytic_rate(const ExperimentConfig &config, int n_pairs) {
    if (n_pairs < 2) {
        throw ModelError("analytic_rate needs at least 2 pairs");
    }
    const double n = n_pairs;
    return config.rep_rate * std::pow(config.pair_prob, n) * std::pow(config.det_efficiency, 2 * n) *
           std::pow(config.delay_transmittance, n) * std::pow(2.0, -(n - 1));
}

double double_pair_weight(const ExperimentConfig &config, int n_pairs) {
    return 1 - std::pow(1 - 2 * config.double_pair_factor * config.pair_prob, n_pairs);
}

std::vector<double> contaminate(const std::vector<double> &table, double weight) {
    if (weight < 0 || weight > 1) {
        throw ModelError("contamination weight must lie in [0, 1]");
    }
    std::vector<double> out(table.size());
    const double flat = table.empty() ? 0 : weight / static_cast<double>(table.size());
    for (std::size_t k = 0; k < table.size(); ++k) {
        out[k] = (1 - weight) * table[k] + flat;
    }
    return out;
}

double total_variation(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size()) {
        throw ModelError("total_variation: size mismatch");
    }
    double sum = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        sum += std::abs(a[k] - b[k]);
    }
    return sum / 2;
}

std::array<Click, 4> fourfold_clicks(std::uint32_t outcome, double delay_time) {
    const int b0 = bit_of(outcome, 0, 4), b1 = bit_of(outcome, 1, 4), b2 = bit_of(outcome, 2, 4),
              b3 = bit_of(outcome, 3, 4);
    return {{
        {{b0 ? Spatial::Port2 : Spatial::Port1, b0}, 0.0},
        {{Spatial::Port2, b1}, delay_time},
        {{Spatial::Port1, b2}, delay_time},
        {{b3 ? Spatial::Port1 : Spatial::Port2, b3}, 2 * delay_time},
    }};
}

std::vector<bool> registered_clicks(const std::vector<Click> &clicks, double dead_time) {
    std::vector<std::size_t> order(clicks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return clicks[a].time < clicks[b].time; });
    std::vector<bool> ok(clicks.size(), true);
    std::array<double, 4> last{};
    std::array<bool, 4> any{};
    const double window = dead_time * (1 - 1e-12);
    for (std::size_t i : order) {
        const int d = clicks[i].detector.index();
        if (any[d] && clicks[i].time - last[d] < window) {
            ok[i] = false;
            continue;
        }
        last[d] = clicks[i].time;
        any[d] = true;
    }
    return ok;
}

std::vector<DeadTimeRow> dead_time_study(
    const ExperimentConfig &config, const std::vector<double> &delay_values, const std::vector<double> &fourfold_table) {
    if (fourfold_table.size() != 16) {
        throw ModelError("dead_time_study needs a 16-entry fourfold table");
    }
    const double total = std::accumulate(fourfold_table.begin(), fourfold_table.end(), 0.0);
    if (total <= 0) {
        throw ModelError("dead_time_study: empty fourfold table");
    }
    std::vector<DeadTimeRow> rows;
    for (double tau : delay_values) {
        DeadTimeRow row;
        row.delay_time = tau;
        for (std::uint32_t o = 0; o < 16; ++o) {
            const auto clicks = fourfold_clicks(o, tau);
            const auto ok = registered_clicks({clicks.begin(), clicks.end()}, config.dead_time);
            if (std::all_of(ok.begin(), ok.end(), [](bool b) { return b; })) {
                row.efficiency += fourfold_table[o] / total;
            }
        }
        row.lost_mass = 1 - row.efficiency;
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string num(double x) {
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

}  // namespace

void write_count_summary(std::ostream &out, const CountSummary &summary, const ExperimentConfig &config) {
    out << "# photonmux count_summary v1\n";
    out << "rng_algorithm=" << kRngAlgorithm << '\n';
    out << "rng_seed=" << summary.rng_seed << '\n';
    out << "duration_s=" << num(summary.duration) << '\n';
    out << "slots=" << summary.slots << '\n';
    out << "pairs=" << summary.pairs << '\n';
    for (int k = 0; k < 4; ++k) {
        out << "singles." << Detector::from_index(k).str() << '=' << summary.singles[k] << '\n';
    }
    for (const auto &[n, f] : summary.folds) {
        const std::string p = "fold." + std::to_string(2 * n) + '.';
        out << p << "attempts=" << f.attempts << '\n';
        out << p << "postselected=" << f.postselected << '\n';
        out << p << "detected=" << f.detected << '\n';
        out << p << "registered=" << f.registered << '\n';
        out << p << "rate_hz=" << num(static_cast<double>(f.registered) / summary.duration) << '\n';
        out << p << "analytic_rate_hz=" << num(analytic_rate(config, n)) << '\n';
        const std::vector<Basis> bases(static_cast<std::size_t>(2 * n), Basis::HV);
        for (std::size_t o = 0; o < f.outcome_counts.size(); ++o) {
            if (f.outcome_counts[o] > 0) {
                out << p << "outcome." << outcome_string(static_cast<std::uint32_t>(o), bases) << '='
                    << f.outcome_counts[o] << '\n';
            }
        }
    }
}

void write_events(std::ostream &out, const std::vector<EventRecord> &events) {
    out << "# photonmux events v1\nslot,detector,timestamp_s\n";
    for (const auto &e : events) {
        out << e.slot << ',' << e.detector.str() << ',' << std::setprecision(15) << e.timestamp << '\n';
    }
}

void write_dead_time_table(std::ostream &out, const std::vector<DeadTimeRow> &rows) {
    out << "# photonmux dead_time v1\ndelay_time_s,efficiency,lost_mass\n";
    for (const auto &r : rows) {
        out << num(r.delay_time) << ',' << num(r.efficiency) << ',' << num(r.lost_mass) << '\n';
    }
}

}  // namespace photonmux
