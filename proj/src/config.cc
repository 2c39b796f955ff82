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

#include "immrate/config.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "immrate/errors.h"

namespace immrate {

namespace {

template <typename T>
T field(const nlohmann::json &j, const char *name) {
    if (!j.contains(name)) {
        throw ConfigError(std::string("missing field '") + name + "'");
    }
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw ConfigError(std::string("field '") + name + "' has the wrong type");
    }
}

template <typename T>
T field_or(const nlohmann::json &j, const char *name, T fallback) {
    return j.contains(name) ? field<T>(j, name) : fallback;
}

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (m < 1) {
        throw ConfigError("field 'm' must be positive");
    }
    if (n < 1 || n > m) {
        throw ConfigError("field 'n' must satisfy 1 <= n <= m");
    }
    if (!unitary.haar && (unitary.matrix.rows() != m || unitary.matrix.cols() != m)) {
        throw ConfigError("field 'unitary' must be " + std::to_string(m) + "x" + std::to_string(m));
    }
    if (arrival.size() != n) {
        throw ConfigError("field 'arrival.taus' must list n = " + std::to_string(n) + " times");
    }
    try {
        arrival.validate();
    } catch (const DomainError &e) {
        throw ConfigError(std::string("field 'arrival': ") + e.what());
    }
    if (!output.empty()) {
        try {
            auto s = OutputString::parse(output);
            if (s.modes() != m || s.count() != n) {
                throw ConfigError("field 'output' must have length m with exactly n ones");
            }
        } catch (const DomainError &e) {
            throw ConfigError(std::string("field 'output': ") + e.what());
        }
    }
    if (engine == Engine::truncated && !binned) {
        throw ConfigError("field 'engine': truncation is exact only for binned arrival times; set 'binned': true");
    }
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json u;
    if (unitary.haar) {
        u = {{"kind", "haar"}, {"seed", unitary.seed}};
    } else {
        u = {{"kind", "matrix"}, {"data", unitary_to_json(unitary.matrix)}};
    }
    return {
        {"m", m},
        {"n", n},
        {"unitary", u},
        {"species", std::string(to_string(species))},
        {"arrival", arrival_spec_to_json(arrival)},
        {"binned", binned},
        {"output", output},
        {"engine", std::string(to_string(engine))},
        {"threads_chunk", threads_chunk},
        {"seed", seed},
    };
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json &j, const std::string &base_dir) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    ExperimentConfig c;
    c.m = field<int>(j, "m");
    c.n = field<int>(j, "n");
    if (j.contains("unitary")) {
        const auto &u = j.at("unitary");
        auto kind = field_or<std::string>(u, "kind", "haar");
        if (kind == "haar") {
            c.unitary.haar = true;
            c.unitary.seed = field_or<uint64_t>(u, "seed", 0);
        } else if (kind == "matrix") {
            c.unitary.haar = false;
            c.unitary.matrix = unitary_from_json(u.at("data"));
        } else if (kind == "file") {
            c.unitary.haar = false;
            std::filesystem::path path = field<std::string>(u, "path");
            if (path.is_relative()) {
                path = std::filesystem::path(base_dir) / path;
            }
            c.unitary.matrix = unitary_from_json(read_json_file(path.string()));
        } else {
            throw ConfigError("field 'unitary.kind' must be haar, matrix or file");
        }
    }
    c.species = parse_species(field_or<std::string>(j, "species", "boson"));
    if (!j.contains("arrival")) {
        throw ConfigError("missing field 'arrival'");
    }
    c.arrival = arrival_spec_from_json(j.at("arrival"));
    c.binned = field_or<bool>(j, "binned", false);
    c.output = field_or<std::string>(j, "output", "");
    c.engine = parse_engine(field_or<std::string>(j, "engine", "blocked"));
    c.threads_chunk = field_or<size_t>(j, "threads_chunk", 0);
    c.seed = field_or<uint64_t>(j, "seed", 0);
    c.validate();
    return c;
}

uint64_t ExperimentConfig::hash() const {
    return fnv1a64(to_json().dump());
}

ExperimentConfig load_config(const std::string &path) {
    auto j = read_json_file(path);
    auto dir = std::filesystem::path(path).parent_path().string();
    try {
        return ExperimentConfig::from_json(j, dir.empty() ? "." : dir);
    } catch (const ConfigError &e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Interferometer make_interferometer(const ExperimentConfig &config) {
    if (config.unitary.haar) {
        return haar_unitary(config.m, config.unitary.seed);
    }
    try {
        return Interferometer(config.unitary.matrix);
    } catch (const DomainError &e) {
        throw ConfigError(std::string("field 'unitary': ") + e.what());
    }
}

DelayMatrix make_delay_matrix(const ExperimentConfig &config) {
    if (config.binned) {
        auto disc = discretize(config.arrival);
        return snapped_delay_matrix(disc.bin_of, config.arrival);
    }
    return delay_matrix(config.arrival);
}

DelayPartition make_delay_partition(const ExperimentConfig &config) {
    return discretize(config.arrival).partition;
}

}  // namespace immrate
