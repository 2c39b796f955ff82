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

#ifndef IMMRATE_CONFIG_H
#define IMMRATE_CONFIG_H

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "immrate/delays.h"
#include "immrate/interferometer.h"
#include "immrate/rates.h"

namespace immrate {

/// Where the unitary comes from: a Haar sample or an explicit matrix.
struct UnitarySource {
    bool haar = true;
    uint64_t seed = 0;
    /// Explicit matrix; loaded from a file when the config names one.
    ComplexMatrix matrix;
};

struct ExperimentConfig {
    int m = 0;
    int n = 0;
    UnitarySource unitary;
    Species species = Species::boson;
    ArrivalSpec arrival;
    /// Use bin-centre times, so same-bin particles overlap exactly.
    bool binned = false;
    /// A single output string; empty means every collision-free output.
    std::string output;
    Engine engine = Engine::blocked;
    size_t threads_chunk = 0;
    uint64_t seed = 0;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    nlohmann::json to_json() const;
    /// `base_dir` resolves a relative "unitary.file" path.
    static ExperimentConfig from_json(const nlohmann::json &j, const std::string &base_dir = ".");
    /// FNV-1a of the canonical JSON dump.
    uint64_t hash() const;
};

/// Reads and parses a config file; parse errors carry the byte offset.
ExperimentConfig load_config(const std::string &path);

Interferometer make_interferometer(const ExperimentConfig &config);
DelayMatrix make_delay_matrix(const ExperimentConfig &config);
/// Delay partition of the binned arrival times.
DelayPartition make_delay_partition(const ExperimentConfig &config);

}  // namespace immrate

#endif
