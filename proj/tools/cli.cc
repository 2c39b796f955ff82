// Copyright 2026 The immrate Authors
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

#include <chrono>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "immrate/analysis.h"
#include "immrate/config.h"
#include "immrate/errors.h"
#include "immrate/matfun.h"
#include "immrate/rates.h"
#include "immrate/sampling.h"

namespace immrate {

namespace {

using nlohmann::json;

struct CommonOptions {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::string engine;
    std::string species;
    std::string out_path;
    std::optional<size_t> threads_chunk;
};

struct LandscapeOptions {
    double min = -3.0;
    double max = 3.0;
    int steps = 61;
    int dims = 0;
    double shift = 0.0;
    uint64_t max_points = 100'000;
};

struct AnalyzeOptions {
    int n = 6;
    int bins = 8;
    int max_n = 12;
};

std::string hex(uint64_t value) {
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << value;
    return s.str();
}

json partition_json(const Partition &p) {
    return p.parts();
}

class OutputTarget {
   public:
    OutputTarget(const std::string &path, std::ostream &fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw ConfigError("cannot write '" + path + "'");
            }
            stream_ = file_.get();
        }
    }
    std::ostream &stream() {
        return *stream_;
    }
    bool is_file() const {
        return file_ != nullptr;
    }

   private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream *stream_;
};

ExperimentConfig resolve_config(const CommonOptions &common) {
    if (common.config_path.empty()) {
        throw ConfigError("--config is required");
    }
    auto config = load_config(common.config_path);
    if (common.seed) {
        config.seed = *common.seed;
    }
    if (!common.engine.empty()) {
        config.engine = parse_engine(common.engine);
    }
    if (!common.species.empty()) {
        config.species = parse_species(common.species);
    }
    if (common.threads_chunk) {
        config.threads_chunk = *common.threads_chunk;
    }
    config.validate();
    return config;
}

std::vector<OutputString> selected_outputs(const ExperimentConfig &config) {
    if (!config.output.empty()) {
        return {OutputString::parse(config.output)};
    }
    return enumerate_outputs(config.m, config.n, kMaxDistributionStrings);
}

int cmd_rate(const CommonOptions &common, std::ostream &out, std::ostream &err) {
    auto start = std::chrono::steady_clock::now();
    auto config = resolve_config(common);
    auto ifm = make_interferometer(config);
    auto r = make_delay_matrix(config);
    std::optional<Partition> mu;
    if (config.binned) {
        mu = make_delay_partition(config).shape;
    }

    json report = {
        {"config_hash", hex(config.hash())},
        {"engine", std::string(to_string(config.engine))},
        {"species", std::string(to_string(config.species))},
        {"n", config.n},
        {"m", config.m},
    };
    if (mu) {
        report["delay_partition"] = partition_json(*mu);
    }
    json results = json::array();
    for (const auto &s : selected_outputs(config)) {
        ComplexMatrix a = submatrix(ifm, s, config.n);
        json entry = {{"s", s.to_string()}};
        if (config.engine == Engine::direct) {
            entry["rate"] = rate_direct_streaming(a, r, config.species);
        } else {
            auto decomp = decompose(a, r, config.species);
            json blocks = json::array();
            if (config.engine == Engine::truncated) {
                auto trunc = truncate(decomp, *mu);
                entry["rate"] = trunc.rate;
                entry["dropped_bound"] = trunc.dropped_bound;
                for (const auto &e : trunc.entries) {
                    blocks.push_back({{"vector", partition_json(e.vector_label)},
                                      {"block", partition_json(e.block_label)},
                                      {"kept", e.kept},
                                      {"magnitude", e.block_magnitude},
                                      {"contribution", e.contribution}});
                }
            } else {
                entry["rate"] = rate_blocked(decomp);
                for (const auto &t : decomp.terms) {
                    double magnitude = t.block.size() ? t.block.cwiseAbs().maxCoeff() : 0.0;
                    blocks.push_back({{"vector", partition_json(t.vector_label)},
                                      {"block", partition_json(t.block_label)},
                                      {"kept", true},
                                      {"magnitude", magnitude},
                                      {"contribution", t.contribution()}});
                }
            }
            entry["blocks"] = std::move(blocks);
        }
        results.push_back(std::move(entry));
    }
    report["results"] = std::move(results);

    OutputTarget target(common.out_path, out);
    target.stream() << report.dump(2) << "\n";
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << "wall time: " << seconds << " s\n";
    return kExitSuccess;
}

int cmd_distribution(const CommonOptions &common, const std::string &format, std::ostream &out, std::ostream &err) {
    auto config = resolve_config(common);
    auto ifm = make_interferometer(config);
    auto r = make_delay_matrix(config);
    DistributionOptions options;
    options.engine = config.engine;
    options.chunk = config.threads_chunk;
    if (config.binned) {
        options.mu = make_delay_partition(config).shape;
    }
    auto dist = build_distribution(ifm, config.n, r, config.species, options);
    dist.spec_hash = config.hash();

    std::vector<OutputString> strings;
    for (const auto &e : dist.entries) {
        strings.push_back(e.s);
    }
    auto p = probabilities(dist);
    auto indist = reference_probabilities(ifm, config.n, strings, config.species, Reference::indistinguishable);
    auto dist_ref = reference_probabilities(ifm, config.n, strings, config.species, Reference::distinguishable);
    size_t best = 0;
    for (size_t i = 1; i < p.size(); i++) {
        if (p[i] > p[best]) {
            best = i;
        }
    }
    json summary = {
        {"config_hash", hex(config.hash())},
        {"strings", dist.entries.size()},
        {"total_rate", dist.total_rate},
        {"entropy_bits", entropy(dist)},
        {"max_prob_string", dist.entries[best].s.to_string()},
        {"max_prob", p[best]},
        {"tv_indistinguishable", total_variation(p, indist)},
        {"tv_distinguishable", total_variation(p, dist_ref)},
    };

    OutputTarget target(common.out_path, out);
    if (format == "csv") {
        write_csv(dist, target.stream());
    } else {
        write_jsonl(dist, target.stream());
    }
    (target.is_file() ? out : err) << summary.dump(2) << "\n";
    return kExitSuccess;
}

int cmd_sample(const CommonOptions &common, size_t count, std::ostream &out) {
    auto config = resolve_config(common);
    auto ifm = make_interferometer(config);
    auto r = make_delay_matrix(config);
    DistributionOptions options;
    options.engine = config.engine;
    options.chunk = config.threads_chunk;
    if (config.binned) {
        options.mu = make_delay_partition(config).shape;
    }
    auto dist = build_distribution(ifm, config.n, r, config.species, options);
    OutputTarget target(common.out_path, out);
    target.stream() << "# config_hash=" << hex(config.hash()) << " seed=" << config.seed << "\n";
    for (const auto &s : sample(dist, count, config.seed)) {
        target.stream() << s.to_string() << "\n";
    }
    return kExitSuccess;
}

int cmd_landscape(const CommonOptions &common, const LandscapeOptions &grid, std::ostream &out) {
    auto config = resolve_config(common);
    if (config.engine == Engine::truncated) {
        throw ConfigError("the landscape uses continuous delays; choose the direct or blocked engine");
    }
    if (config.n < 2) {
        throw ConfigError("a landscape needs at least two particles");
    }
    int dims = grid.dims == 0 ? std::min(config.n - 1, 2) : grid.dims;
    if (dims < 1 || dims > 2 || (dims == 2 && config.n != 3)) {
        throw ConfigError("--dims must be 1, or 2 when n = 3");
    }
    if (grid.steps < 1 || !(grid.max >= grid.min)) {
        throw ConfigError("landscape grid needs steps >= 1 and max >= min");
    }
    uint64_t points = dims == 1 ? uint64_t(grid.steps) : uint64_t(grid.steps) * uint64_t(grid.steps);
    if (points > grid.max_points) {
        throw SizeLimitError("landscape grid of " + std::to_string(points) + " points exceeds --max-points");
    }
    auto ifm = make_interferometer(config);
    auto s = config.output.empty() ? enumerate_outputs(config.m, config.n).front() : OutputString::parse(config.output);
    ComplexMatrix a = submatrix(ifm, s, config.n);
    auto step_value = [&](int k) {
        return grid.steps == 1 ? grid.min : grid.min + (grid.max - grid.min) * k / (grid.steps - 1);
    };
    auto evaluate = [&](std::vector<double> taus) {
        for (double &t : taus) {
            t += grid.shift;
        }
        auto r = delay_matrix(taus, config.arrival.delta_omega);
        return compute_rate(a, r, config.species, config.engine);
    };

    OutputTarget target(common.out_path, out);
    auto &os = target.stream();
    os << "# config_hash=" << hex(config.hash()) << " s=" << s.to_string() << "\n";
    os << std::setprecision(17);
    const auto &base = config.arrival.taus;
    if (dims == 1) {
        os << "d2,rate\n";
        for (int i = 0; i < grid.steps; i++) {
            auto taus = base;
            taus[1] = base[0] + step_value(i);
            os << step_value(i) << ',' << evaluate(taus) << "\n";
        }
    } else {
        os << "d2,d3,rate\n";
        for (int i = 0; i < grid.steps; i++) {
            for (int j = 0; j < grid.steps; j++) {
                auto taus = base;
                taus[1] = base[0] + step_value(i);
                taus[2] = base[0] + step_value(j);
                os << step_value(i) << ',' << step_value(j) << ',' << evaluate(taus) << "\n";
            }
        }
    }
    return kExitSuccess;
}

int cmd_analyze(const AnalyzeOptions &opts, const std::string &out_path, std::ostream &out) {
    if (opts.n < 2 || opts.bins < 2) {
        throw ConfigError("analyze needs --n >= 2 and --bins >= 2");
    }
    if (opts.n > opts.max_n) {
        throw SizeLimitError("analyze enumerates partitions exactly for n <= " + std::to_string(opts.max_n));
    }
    auto wp = witness_probability(opts.n, opts.bins);
    auto report = witness_report(opts.n);
    json parts = json::array();
    for (const auto &mu : partitions_of(opts.n)) {
        auto p = delay_partition_probability(mu, opts.bins);
        parts.push_back({{"mu", partition_json(mu)},
                         {"probability", to_string(p)},
                         {"p_float", p.convert_to<double>()},
                         {"witness", requires_witness(mu)}});
    }
    json result = {
        {"n", opts.n},
        {"b", opts.bins},
        {"witness", partition_json(report.witness)},
        {"witness_conjugate", partition_json(report.witness_conjugate)},
        {"p_exact", to_string(wp.exact)},
        {"p_float", wp.exact.convert_to<double>()},
        {"tail_exact", to_string(wp.exact_tail)},
        {"tail_float", wp.exact_tail.convert_to<double>()},
        {"tail_asymptotic", wp.asymptotic_tail},
        {"tail_decays", wp.tail_decays},
        {"cost",
         {{"shape", partition_json(report.cost.shape)},
          {"s", report.cost.s},
          {"d", report.cost.d.str()},
          {"operations_estimate", report.cost.operations}}},
        {"partitions", std::move(parts)},
    };
    OutputTarget target(out_path, out);
    target.stream() << result.dump(2) << "\n";
    return kExitSuccess;
}

int cmd_gamas_table(int n, bool as_json, const std::string &out_path, std::ostream &out) {
    if (n < 1 || n > 12) {
        throw SizeLimitError("gamas-table supports 1 <= n <= 12");
    }
    auto shapes = partitions_of(n);
    std::reverse(shapes.begin(), shapes.end());
    OutputTarget target(out_path, out);
    auto &os = target.stream();
    auto basis_label = [](const Partition &mu) {
        std::string label;
        for (int i = 0; i < mu.num_parts(); i++) {
            for (int k = 0; k < mu[i]; k++) {
                label += (label.empty() ? "f" : " f") + std::to_string(i + 1);
            }
        }
        return label;
    };
    if (as_json) {
        json rows = json::array();
        for (const auto &mu : shapes) {
            json vanishing = json::array();
            for (const auto &lambda : shapes) {
                if (gamas_vanishes(lambda, mu)) {
                    vanishing.push_back(partition_json(lambda));
                }
            }
            rows.push_back({{"basis", basis_label(mu)}, {"mu", partition_json(mu)}, {"vanishing", vanishing}});
        }
        os << json{{"n", n}, {"rows", rows}}.dump(2) << "\n";
        return kExitSuccess;
    }
    os << "basis";
    for (const auto &lambda : shapes) {
        os << '\t' << lambda.to_string();
    }
    os << "\n";
    for (const auto &mu : shapes) {
        os << basis_label(mu);
        for (const auto &lambda : shapes) {
            os << '\t' << (gamas_vanishes(lambda, mu) ? "0" : ".");
        }
        os << "\n";
    }
    return kExitSuccess;
}

void add_common(CLI::App *cmd, CommonOptions &common) {
    cmd->add_option("--config", common.config_path, "Experiment config (JSON)")->required();
    cmd->add_option("--seed", common.seed, "Sampling seed (overrides the config)");
    cmd->add_option("--engine", common.engine, "direct | blocked | truncated");
    cmd->add_option("--species", common.species, "boson | fermion");
    cmd->add_option("--out", common.out_path, "Output file (default: stdout)");
    cmd->add_option("--threads-chunk", common.threads_chunk, "Output strings per work item; 0 is single-threaded");
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Coincidence rates of partially distinguishable particles in linear interferometers", "immrate"};
    app.require_subcommand(1);

    CommonOptions common;
    auto *rate = app.add_subcommand("rate", "Coincidence rate of one output (or all outputs)");
    add_common(rate, common);

    std::string format = "jsonl";
    auto *distribution = app.add_subcommand("distribution", "Exact output distribution over collision-free strings");
    add_common(distribution, common);
    distribution->add_option("--format", format, "jsonl | csv")->check(CLI::IsMember({"jsonl", "csv"}));

    size_t count = 1000;
    auto *sampler = app.add_subcommand("sample", "Draw output strings from the exact distribution");
    add_common(sampler, common);
    sampler->add_option("--count", count, "Number of draws");

    LandscapeOptions grid;
    auto *landscape = app.add_subcommand("landscape", "Rates over a grid of relative arrival times (CSV)");
    add_common(landscape, common);
    landscape->add_option("--min", grid.min, "Smallest relative delay (s)");
    landscape->add_option("--max", grid.max, "Largest relative delay (s)");
    landscape->add_option("--steps", grid.steps, "Grid points per axis");
    landscape->add_option("--dims", grid.dims, "1 for a slice, 2 for a surface (n = 3)");
    landscape->add_option("--shift", grid.shift, "Common offset added to every arrival time");
    landscape->add_option("--max-points", grid.max_points, "Grid size guard");

    AnalyzeOptions analyze_opts;
    std::string analyze_out;
    auto *analyze = app.add_subcommand("analyze", "Delay-partition probabilities and witness report");
    analyze->add_option("--n", analyze_opts.n, "Particle count")->required();
    analyze->add_option("--bins,-b", analyze_opts.bins, "Time bins")->required();
    analyze->add_option("--max-n", analyze_opts.max_n, "Enumeration guard");
    analyze->add_option("--out", analyze_out, "Output file (default: stdout)");

    int gamas_n = 6;
    bool gamas_json = false;
    std::string gamas_out;
    auto *gamas = app.add_subcommand("gamas-table", "Vanishing immanants by basis multiplicity");
    gamas->add_option("--n", gamas_n, "Particle count");
    gamas->add_flag("--json", gamas_json, "Emit JSON instead of a table");
    gamas->add_option("--out", gamas_out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitConfigError;
    }

    try {
        if (*rate) {
            return cmd_rate(common, out, err);
        }
        if (*distribution) {
            return cmd_distribution(common, format, out, err);
        }
        if (*sampler) {
            return cmd_sample(common, count, out);
        }
        if (*landscape) {
            return cmd_landscape(common, grid, out);
        }
        if (*analyze) {
            return cmd_analyze(analyze_opts, analyze_out, out);
        }
        if (*gamas) {
            return cmd_gamas_table(gamas_n, gamas_json, gamas_out, out);
        }
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const SizeLimitError &e) {
        err << "size guard: " << e.what() << "\n";
        return kExitSizeGuard;
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    } catch (const DomainError &e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const PreconditionError &e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace immrate
