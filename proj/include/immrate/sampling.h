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

#ifndef IMMRATE_SAMPLING_H
#define IMMRATE_SAMPLING_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "immrate/delays.h"
#include "immrate/interferometer.h"
#include "immrate/rates.h"

namespace immrate {

inline constexpr uint64_t kMaxDistributionStrings = 100'000;
inline constexpr int kMaxDistributionParticles = 7;

struct OutputProbability {
    OutputString s;
    double rate = 0.0;
    double probability = 0.0;
};

/// Rates over every collision-free output, normalised over that set.
struct OutputDistribution {
    int m = 0;
    int n = 0;
    Species species = Species::boson;
    uint64_t spec_hash = 0;
    double total_rate = 0.0;
    std::vector<OutputProbability> entries;
};

struct DistributionOptions {
    Engine engine = Engine::direct;
    /// Required by the truncated engine.
    std::optional<Partition> mu;
    /// Strings per work item; 0 evaluates everything on the calling thread.
    size_t chunk = 0;
    uint64_t max_strings = kMaxDistributionStrings;
    int max_particles = kMaxDistributionParticles;
};

OutputDistribution build_distribution(const Interferometer &ifm, int n, const DelayMatrix &r, Species species,
                                      const DistributionOptions &options = {});
/// Uses the continuous-time delay matrix of `spec` and tags the result with its hash.
OutputDistribution build_distribution(const Interferometer &ifm, const ArrivalSpec &spec, Species species,
                                      const DistributionOptions &options = {});

/// Normalises precomputed rates. Throws NumericalError if they sum to zero.
OutputDistribution distribution_from_rates(int m, int n, Species species, std::vector<OutputString> strings,
                                           std::span<const double> rates);

/// Inverse-CDF draws; returns indices into dist.entries.
std::vector<size_t> sample_indices(const OutputDistribution &dist, size_t count, uint64_t seed);
std::vector<OutputString> sample(const OutputDistribution &dist, size_t count, uint64_t seed);

enum class Reference { indistinguishable, distinguishable };

/// Normalised reference probabilities over `strings`: |per A|^2 or |det A|^2 for
/// identical particles, per(|A|^2) for fully distinguishable ones.
std::vector<double> reference_probabilities(const Interferometer &ifm, int n, std::span<const OutputString> strings,
                                            Species species, Reference kind);

double total_variation(std::span<const double> p, std::span<const double> q);
std::vector<double> probabilities(const OutputDistribution &dist);
/// Shannon entropy in bits.
double entropy(const OutputDistribution &dist);

struct FermionCheck {
    double max_deviation = 0.0;
    bool matches = false;
    /// Identical fermions reduce to determinants, which are cheap to evaluate.
    bool classically_easy = true;
};

/// Compares a fermion distribution with |det A(s)|^2 normalised over the same strings.
FermionCheck indistinguishable_fermion_check(const OutputDistribution &dist, const Interferometer &ifm,
                                             double tolerance = 1e-9);

/// One JSON object per line: {"s": "01101", "rate": x, "prob": p}.
void write_jsonl(const OutputDistribution &dist, std::ostream &out);
void write_csv(const OutputDistribution &dist, std::ostream &out);

}  // namespace immrate

#endif
