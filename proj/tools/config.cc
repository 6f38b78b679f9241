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

#include "config.h"

#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "photonmux/error.h"

namespace photonmux::cli {

namespace {

using nlohmann::json;

/// Reads keys from one JSON object and rejects leftovers.
class Section {
   public:
    Section(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError(path_ + " must be an object");
        }
    }

    template <typename T>
    void read(const std::string &key, T &out) {
        used_.insert(key);
        if (!j_.contains(key)) {
            return;
        }
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception &) {
            throw ConfigError(path_ + "." + key + " has the wrong type");
        }
    }

    template <typename T>
    void read_optional(const std::string &key, std::optional<T> &out) {
        used_.insert(key);
        if (!j_.contains(key) || j_.at(key).is_null()) {
            return;
        }
        T value{};
        read(key, value);
        out = value;
    }

    bool has(const std::string &key) const {
        return j_.contains(key);
    }

    const json &child(const std::string &key) {
        used_.insert(key);
        return j_.at(key);
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!used_.contains(it.key())) {
                throw ConfigError("unknown key " + path_ + "." + it.key());
            }
        }
    }

   private:
    const json &j_;
    std::string path_;
    std::set<std::string> used_;
};

PairKind parse_pair_kind(const std::string &name, double phase) {
    if (name == "phi_plus") {
        return PairKind::phi_plus();
    }
    if (name == "psi_plus") {
        return PairKind::psi_plus();
    }
    if (name == "phi_i") {
        return PairKind::phi_i();
    }
    if (name == "phi_with_phase") {
        return PairKind::phi_with_phase(phase);
    }
    throw ConfigError("chain.pair_kind must be phi_plus, psi_plus, phi_i or phi_with_phase");
}

Basis basis_from(const std::string &text, const std::string &key) {
    try {
        return parse_basis(text);
    } catch (const std::exception &) {
        throw ConfigError(key + " must be HV, PM or RL");
    }
}

void parse_experiment(Section s, ExperimentConfig &e) {
    s.read("rep_rate", e.rep_rate);
    s.read("pair_prob", e.pair_prob);
    s.read("delay_slots", e.delay_slots);
    s.read("delay_time", e.delay_time);
    s.read("delay_transmittance", e.delay_transmittance);
    s.read("det_efficiency", e.det_efficiency);
    s.read("dead_time", e.dead_time);
    s.read("double_pair_factor", e.double_pair_factor);
    s.read("duration", e.duration);
    s.read("rng_seed", e.rng_seed);
    s.read("threads", e.threads);
    s.finish();
}

void parse_chain(Section s, ChainSpec &c) {
    std::string kind = pair_kind_name(c.kind);
    double phase = c.kind.phase;
    std::string schedule = c.schedule == Postselection::Greedy ? "greedy" : "deferred";
    s.read("n_pairs", c.n_pairs);
    s.read("pair_kind", kind);
    s.read("phase", phase);
    s.read("overlap", c.overlap.s);
    s.read("hwp_before_pbs", c.hwp_before_pbs);
    s.read("source_quality", c.source_quality);
    s.read("schedule", schedule);
    s.finish();
    c.kind = parse_pair_kind(kind, phase);
    if (schedule == "greedy") {
        c.schedule = Postselection::Greedy;
    } else if (schedule == "deferred") {
        c.schedule = Postselection::Deferred;
    } else {
        throw ConfigError("chain.schedule must be greedy or deferred");
    }
    if (c.overlap.s < 0 || c.overlap.s > 1) {
        throw ConfigError("chain.overlap must lie in [0, 1]");
    }
    if (c.source_quality < 0 || c.source_quality > 1) {
        throw ConfigError("chain.source_quality must lie in [0, 1]");
    }
}

void parse_analysis(Section s, AnalysisSpec &a) {
    std::string inner = to_string(a.inner_basis);
    s.read("delays", a.delays);
    s.read_optional("sigma", a.sigma);
    s.read("inner_basis", inner);
    s.read_optional("noise_ratio", a.noise_ratio);
    s.read_optional("visibility", a.visibility);
    s.read("visibility_uncertainty", a.visibility_uncertainty);
    s.read_optional("target_visibility", a.target_visibility);
    s.read("dead_time_delays", a.dead_time_delays);
    s.finish();
    a.inner_basis = basis_from(inner, "analysis.inner_basis");
}

void parse_montecarlo(Section s, MonteCarloSpec &m) {
    std::string outcomes = m.engine_outcomes ? "engine" : "uniform";
    s.read("fold_pairs", m.fold_pairs);
    s.read("record_events", m.record_events);
    s.read("outcomes", outcomes);
    s.finish();
    if (outcomes != "engine" && outcomes != "uniform") {
        throw ConfigError("montecarlo.outcomes must be engine or uniform");
    }
    m.engine_outcomes = outcomes == "engine";
    for (int n : m.fold_pairs) {
        if (n < 2 || n > 5) {
            throw ConfigError("montecarlo.fold_pairs entries must lie in 2..5");
        }
    }
}

void parse_graph(Section s, GraphSpec &g) {
    s.read("kind", g.kind);
    s.read("corrections", g.corrections);
    s.read("max_search_qubits", g.max_search_qubits);
    s.finish();
    static const std::set<std::string> kinds{"auto", "star", "branched_chain", "path"};
    if (!kinds.contains(g.kind)) {
        throw ConfigError("graph.kind must be auto, star, branched_chain or path");
    }
}

}  // namespace

std::string pair_kind_name(const PairKind &kind) {
    switch (kind.kind) {
        case PairKind::Kind::PhiPlus:
            return "phi_plus";
        case PairKind::Kind::PsiPlus:
            return "psi_plus";
        case PairKind::Kind::PhiWithPhase:
            return "phi_with_phase";
    }
    return "phi_plus";
}

RunConfig parse_config(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig c;
    Section top(j, "config");
    if (top.has("experiment")) {
        parse_experiment(Section(top.child("experiment"), "experiment"), c.experiment);
    }
    if (top.has("chain")) {
        parse_chain(Section(top.child("chain"), "chain"), c.chain);
    }
    if (top.has("analysis")) {
        parse_analysis(Section(top.child("analysis"), "analysis"), c.analysis);
    }
    if (top.has("montecarlo")) {
        parse_montecarlo(Section(top.child("montecarlo"), "montecarlo"), c.montecarlo);
    }
    if (top.has("graph")) {
        parse_graph(Section(top.child("graph"), "graph"), c.graph);
    }
    top.finish();
    c.experiment.validate();
    c.chain.delay_slots = c.experiment.delay_slots;
    return c;
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string effective_config_json(const RunConfig &c) {
    json j;
    const auto &e = c.experiment;
    j["experiment"] = {{"rep_rate", e.rep_rate},
                       {"pair_prob", e.pair_prob},
                       {"delay_slots", e.delay_slots},
                       {"delay_time", e.delay_time},
                       {"delay_transmittance", e.delay_transmittance},
                       {"det_efficiency", e.det_efficiency},
                       {"dead_time", e.dead_time},
                       {"double_pair_factor", e.double_pair_factor},
                       {"duration", e.duration},
                       {"rng_seed", e.rng_seed},
                       {"threads", e.threads}};
    j["chain"] = {{"n_pairs", c.chain.n_pairs},
                  {"pair_kind", pair_kind_name(c.chain.kind)},
                  {"phase", c.chain.kind.phase},
                  {"overlap", c.chain.overlap.s},
                  {"hwp_before_pbs", c.chain.hwp_before_pbs},
                  {"source_quality", c.chain.source_quality},
                  {"schedule", c.chain.schedule == Postselection::Greedy ? "greedy" : "deferred"}};
    const auto &a = c.analysis;
    auto opt = [](const std::optional<double> &v) { return v ? json(*v) : json(nullptr); };
    j["analysis"] = {{"delays", a.delays},
                     {"sigma", opt(a.sigma)},
                     {"inner_basis", to_string(a.inner_basis)},
                     {"noise_ratio", opt(a.noise_ratio)},
                     {"visibility", opt(a.visibility)},
                     {"visibility_uncertainty", a.visibility_uncertainty},
                     {"target_visibility", opt(a.target_visibility)},
                     {"dead_time_delays", a.dead_time_delays}};
    j["montecarlo"] = {{"fold_pairs", c.montecarlo.fold_pairs},
                       {"record_events", c.montecarlo.record_events},
                       {"outcomes", c.montecarlo.engine_outcomes ? "engine" : "uniform"}};
    j["graph"] = {{"kind", c.graph.kind},
                  {"corrections", c.graph.corrections},
                  {"max_search_qubits", c.graph.max_search_qubits}};
    return j.dump(2) + "\n";
}

}  // namespace photonmux::cli
