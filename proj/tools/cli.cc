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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.h"
#include "photonmux/analysis.h"
#include "photonmux/error.h"
#include "photonmux/graph_verify.h"
#include "photonmux/tolerances.h"

namespace photonmux::cli {

namespace {

struct RunSpec {
    std::string subcommand;
    std::string config_path;
    std::string output_dir = ".";
    std::optional<std::uint64_t> seed;
    int verbosity = 1;
};

std::string num(double x) {
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

class Output {
   public:
    Output(const RunSpec &spec, std::ostream &console) : dir_(spec.output_dir), console_(console), verbose_(spec.verbosity) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec || !std::filesystem::is_directory(dir_)) {
            throw ConfigError("output directory " + dir_.string() + " is not writable");
        }
    }

    /// Writes one file; echoes it when `echo` is set and verbosity allows.
    void write(const std::string &name, const std::string &content, bool echo = false) {
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) {
            throw ConfigError("cannot write " + (dir_ / name).string());
        }
        f << content;
        if (echo && verbose_ > 0) {
            console_ << content;
        }
        if (verbose_ > 1) {
            console_ << "wrote " << (dir_ / name).string() << '\n';
        }
    }

   private:
    std::filesystem::path dir_;
    std::ostream &console_;
    int verbose_;
};

template <typename Fn>
std::string render(Fn &&fn) {
    std::ostringstream s;
    fn(s);
    return s.str();
}

void require_pairs(int n) {
    if (n < 2 || n > 5) {
        throw ConfigError("chain.n_pairs must lie in 2..5, got " + std::to_string(n));
    }
}

std::string spatial_name(Spatial s) {
    return to_string(s);
}

void build_state(const RunConfig &c, Output &out) {
    require_pairs(c.chain.n_pairs);
    if (c.chain.source_quality < 1) {
        throw ConfigError("build-state dumps a pure state; set chain.source_quality to 1");
    }
    const FusionResult r = grow_chain(c.chain);
    const auto &layout = r.mode_layout;
    out.write("state.csv", render([&](std::ostream &s) {
                  s << "# photonmux state v1\nbasis,envelopes,real,imag\n";
                  for (const auto &[basis, amp] : r.state.terms()) {
                      std::string pol(layout.size(), '?');
                      std::vector<int> env(layout.size(), 0);
                      for (const auto &occ : basis.occupations()) {
                          for (std::size_t j = 0; j < layout.size(); ++j) {
                              if (layout[j].port == occ.mode.spatial && layout[j].slot == occ.mode.time_slot) {
                                  pol[j] = to_char(occ.mode.polarization);
                                  env[j] = occ.mode.envelope;
                              }
                          }
                      }
                      std::string envs;
                      for (std::size_t j = 0; j < env.size(); ++j) {
                          envs += (j ? "." : "") + std::to_string(env[j]);
                      }
                      s << pol << ',' << envs << ',' << num(amp.real()) << ',' << num(amp.imag()) << '\n';
                  }
              }));
    out.write("layout.csv", render([&](std::ostream &s) {
                  s << "# photonmux layout v1\nposition,port,slot,fixed_basis\n";
                  for (std::size_t j = 0; j < layout.size(); ++j) {
                      s << j << ',' << spatial_name(layout[j].port) << ',' << layout[j].slot << ','
                        << (layout[j].fixed_basis ? to_string(*layout[j].fixed_basis) : "") << '\n';
                  }
              }));
    out.write("summary.txt", render([&](std::ostream &s) {
                  s << "# photonmux build_state v1\n";
                  s << "n_pairs=" << c.chain.n_pairs << '\n';
                  s << "pair_kind=" << c.chain.kind.str() << '\n';
                  s << "n_photons=" << r.n_photons << '\n';
                  s << "terms=" << r.state.size() << '\n';
                  s << "success_probability=" << num(r.success_probability) << '\n';
              }),
              true);
}

void scan_delay(const RunConfig &c, Output &out) {
    require_pairs(c.chain.n_pairs);
    if (!c.analysis.sigma) {
        throw ConfigError("analysis.sigma is required for scan-delay");
    }
    if (!(*c.analysis.sigma > 0)) {
        throw ConfigError("analysis.sigma must be positive");
    }
    if (c.analysis.delays.empty()) {
        throw ConfigError("analysis.delays must not be empty");
    }
    const auto bases = default_bases(chain_layout(c.chain.n_pairs, c.chain.delay_slots, c.chain.hwp_before_pbs),
                                     c.analysis.inner_basis);
    const auto rows = delay_scan(c.chain, c.analysis.delays, *c.analysis.sigma, bases);
    out.write("fig3_parity.csv", render([&](std::ostream &s) { write_parity_table(s, rows); }), true);
    out.write("fig4_amplitudes.csv", render([&](std::ostream &s) { write_amplitude_table(s, rows, bases); }));
}

void montecarlo(const RunConfig &c, Output &out) {
    int max_fold = 2;
    for (int n : c.montecarlo.fold_pairs) {
        max_fold = std::max(max_fold, n);
    }
    const OutcomeModel model =
        c.montecarlo.engine_outcomes ? outcome_model_from_engine(c.chain, max_fold) : OutcomeModel::uniform(max_fold);
    TimelineOptions options;
    options.fold_pairs = c.montecarlo.fold_pairs;
    options.record_events = c.montecarlo.record_events;
    const TimelineResult r = run_timeline(c.experiment, model, options);
    out.write("count_summary.txt", render([&](std::ostream &s) { write_count_summary(s, r.summary, c.experiment); }),
              true);
    if (c.montecarlo.record_events) {
        out.write("events.csv", render([&](std::ostream &s) { write_events(s, r.events); }));
    }
    if (auto it = r.summary.folds.find(2); it != r.summary.folds.end() && it->second.registered > 0) {
        const Histogram h = Histogram::from_counts(std::vector<Basis>(4, Basis::HV), it->second.outcome_counts);
        out.write("fig2_histogram.csv", render([&](std::ostream &s) { write_histogram_table(s, h); }));
    }
}

Graph target_graph(const RunConfig &c) {
    const int n = c.chain.n_pairs;
    std::string kind = c.graph.kind;
    if (kind == "auto") {
        kind = c.chain.hwp_before_pbs ? "branched_chain" : "star";
    }
    if (kind == "star") {
        return Graph::star(2 * n);
    }
    if (kind == "path") {
        return Graph::path(2 * n);
    }
    return Graph::branched_chain(n);
}

void verify_graph(const RunConfig &c, Output &out) {
    require_pairs(c.chain.n_pairs);
    const FusionResult r = grow_chain(c.chain);
    QubitState q = to_qubits(r);
    q.amplitudes.normalize();
    const Graph g = target_graph(c);

    LcCertificate cert;
    if (!c.graph.corrections.empty()) {
        if (static_cast<int>(c.graph.corrections.size()) != q.n) {
            throw ConfigError("graph.corrections needs one label per qubit");
        }
        const auto &table = single_qubit_cliffords();
        for (const auto &label : c.graph.corrections) {
            auto it = std::find_if(table.begin(), table.end(), [&](const auto &t) { return t.label == label; });
            if (it == table.end()) {
                throw ConfigError("unknown Clifford label " + label);
            }
            cert.clifford_indices.push_back(static_cast<int>(it - table.begin()));
            cert.labels.push_back(label);
        }
        bool all = true;
        for (double e : stabilizer_expectations(apply_local_cliffords(q, cert.clifford_indices), g)) {
            all = all && e > 1 - Tolerances::stabilizer;
        }
        cert.found = all;
    } else {
        cert = lc_equivalent(q, g, c.graph.max_search_qubits);
    }
    const QubitState corrected = cert.found ? apply_local_cliffords(q, cert.clifford_indices) : q;
    const auto expectations = stabilizer_expectations(corrected, g);
    out.write("certificate.txt", render([&](std::ostream &s) {
                  s << "# photonmux certificate v1\n";
                  s << "graph=" << g.str() << '\n';
                  s << "qubits=" << q.n << '\n';
                  s << "method=" << (c.graph.corrections.empty() ? "search" : "supplied") << '\n';
                  s << "found=" << (cert.found ? "true" : "false") << '\n';
                  s << "corrections=";
                  for (std::size_t k = 0; k < cert.labels.size(); ++k) {
                      s << (k ? "," : "") << cert.labels[k];
                  }
                  s << '\n';
                  s << "nodes_visited=" << cert.nodes_visited << '\n';
                  for (std::size_t k = 0; k < expectations.size(); ++k) {
                      s << "stabilizer." << k << '=' << num(std::abs(expectations[k]) < 1e-12 ? 0.0 : expectations[k])
                        << '\n';
                  }
              }),
              true);
}

void analyze(const RunConfig &c, Output &out) {
    require_pairs(c.chain.n_pairs);
    ChainSpec spec = c.chain;
    const auto layout = chain_layout(spec.n_pairs, spec.delay_slots, spec.hwp_before_pbs);
    const auto rotated = default_bases(layout, c.analysis.inner_basis);
    if (c.analysis.target_visibility) {
        spec.source_quality = calibrate_source_quality(spec, rotated, *c.analysis.target_visibility);
    }
    // The population histogram is taken without the pre-PBS wave plates.
    ChainSpec hv_spec = spec;
    hv_spec.hwp_before_pbs = false;
    const ChainEnsemble hv_ensemble = chain_ensemble(hv_spec);
    Histogram hv = histogram(hv_ensemble, default_bases(hv_ensemble.mode_layout, Basis::HV));
    if (c.analysis.noise_ratio) {
        hv = mix_white_noise(hv, white_noise_weight_for_ratio(*c.analysis.noise_ratio, 1 << hv.n_photons, 2));
    }
    VisibilityResult v;
    if (c.analysis.visibility) {
        v.visibility = *c.analysis.visibility;
    } else {
        v = parity_visibility(histogram(chain_ensemble(spec), rotated));
    }
    if (c.analysis.visibility_uncertainty > 0) {
        v.uncertainty = c.analysis.visibility_uncertainty;
    }
    const int n = 2 * spec.n_pairs;
    const FidelityBounds bounds = fidelity_bounds(hv, v.visibility);
    const ViolationResult violation = violation_check(v, n);
    out.write("fig2_histogram.csv", render([&](std::ostream &s) { write_histogram_table(s, hv); }));
    out.write("analysis_summary.txt", render([&](std::ostream &s) {
                  write_analysis_summary(s, v, bounds, violation, n);
                  s << "source_quality=" << num(spec.source_quality) << '\n';
              }),
              true);
}

void rates(const RunConfig &c, Output &out) {
    out.write("rates.txt", render([&](std::ostream &s) {
                  s << "# photonmux rates v1\n";
                  for (int n : c.montecarlo.fold_pairs) {
                      const double r = analytic_rate(c.experiment, n);
                      s << "fold." << 2 * n << ".analytic_rate_hz=" << num(r) << '\n';
                      s << "fold." << 2 * n << ".analytic_rate_per_hour=" << num(r * 3600) << '\n';
                  }
              }),
              true);
    std::vector<double> delays = c.analysis.dead_time_delays;
    if (delays.empty()) {
        delays.push_back(c.experiment.delay_time);
    }
    const auto table = outcome_model_from_engine(c.chain, 2).tables.at(2);
    const auto rows = dead_time_study(c.experiment, delays, table);
    out.write("dead_time.csv", render([&](std::ostream &s) { write_dead_time_table(s, rows); }));
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Temporally multiplexed multi-photon entanglement simulator", "photonmux"};
    app.require_subcommand(1);
    RunSpec spec;
    std::uint64_t seed = 0;
    int verbose = 0;
    bool quiet = false;
    const std::pair<const char *, const char *> commands[] = {
        {"build-state", "Grow a chain and dump its amplitudes"},
        {"scan-delay", "Parity interference versus relative delay"},
        {"montecarlo", "Simulate the detection timeline"},
        {"verify-graph", "Check a grown state against a graph state"},
        {"analyze", "Histogram, visibility, fidelity bounds, Mermin check"},
        {"rates", "Closed-form coincidence rates and dead-time losses"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("-c,--config", spec.config_path, "JSON config file");
        sub->add_option("-o,--out", spec.output_dir, "Output directory");
        sub->add_option("--seed", seed, "Override experiment.rng_seed");
        sub->add_flag("-v,--verbose", verbose, "More output");
        sub->add_flag("-q,--quiet", quiet, "No console output");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp &e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kConfigError;
    }
    spec.subcommand = app.get_subcommands().front()->get_name();
    if (app.get_subcommands().front()->count("--seed") > 0) {
        spec.seed = seed;
    }
    spec.verbosity = quiet ? 0 : 1 + verbose;

    try {
        RunConfig config = spec.config_path.empty() ? RunConfig{} : load_config(spec.config_path);
        if (spec.seed) {
            config.experiment.rng_seed = *spec.seed;
        }
        Output output(spec, out);
        output.write("effective_config.json", effective_config_json(config));
        if (spec.subcommand == "build-state") {
            build_state(config, output);
        } else if (spec.subcommand == "scan-delay") {
            scan_delay(config, output);
        } else if (spec.subcommand == "montecarlo") {
            montecarlo(config, output);
        } else if (spec.subcommand == "verify-graph") {
            verify_graph(config, output);
        } else if (spec.subcommand == "analyze") {
            analyze(config, output);
        } else {
            rates(config, output);
        }
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}

}  // namespace photonmux::cli
