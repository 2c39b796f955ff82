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

#include "immrate/sampling.h"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <iomanip>
#include <thread>

#include "json.hpp"

#include "immrate/errors.h"
#include "immrate/matfun.h"
#include "immrate/rng.h"

namespace immrate {

namespace {

void check_guards(int m, int n, const DistributionOptions &options) {
    if (n < 1 || n > m) {
        throw DomainError("distribution requires 1 <= n <= m");
    }
    if (n > options.max_particles) {
        throw SizeLimitError("distribution supports n <= " + std::to_string(options.max_particles));
    }
    if (binomial(m, n) > options.max_strings) {
        throw SizeLimitError("C(" + std::to_string(m) + "," + std::to_string(n) + ") exceeds the limit of " +
                             std::to_string(options.max_strings) + " output strings");
    }
}

}  // namespace

OutputDistribution distribution_from_rates(int m, int n, Species species, std::vector<OutputString> strings,
                                           std::span<const double> rates) {
    if (strings.size() != rates.size()) {
        throw DomainError("one rate per output string is required");
    }
    OutputDistribution dist{m, n, species, 0, 0.0, {}};
    for (double r : rates) {
        dist.total_rate += r;
    }
    if (!(dist.total_rate > 0.0)) {
        throw NumericalError("rates over the output strings sum to zero");
    }
    dist.entries.reserve(strings.size());
    for (size_t i = 0; i < strings.size(); i++) {
        dist.entries.push_back({std::move(strings[i]), rates[i], rates[i] / dist.total_rate});
    }
    return dist;
}

OutputDistribution build_distribution(const Interferometer &ifm, int n, const DelayMatrix &r, Species species,
                                      const DistributionOptions &options) {
    int m = ifm.modes();
    check_guards(m, n, options);
    if (r.size() != n) {
        throw DomainError("delay matrix size does not match particle count");
    }
    if (options.engine == Engine::truncated && !options.mu) {
        throw PreconditionError("the truncated engine needs a delay partition");
    }
    auto strings = enumerate_outputs(m, n, options.max_strings);
    std::vector<double> rates(strings.size());
    auto evaluate = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; i++) {
            rates[i] = compute_rate(submatrix(ifm, strings[i], n), r, species, options.engine, options.mu);
        }
    };

    if (options.chunk == 0 || strings.size() <= options.chunk) {
        evaluate(0, strings.size());
    } else {
        size_t chunks = (strings.size() + options.chunk - 1) / options.chunk;
        size_t workers = std::min<size_t>(chunks, std::max(1U, std::thread::hardware_concurrency()));
        std::atomic<size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; w++) {
            pool.emplace_back([&] {
                while (true) {
                    size_t c = next.fetch_add(1);
                    if (c >= chunks) {
                        return;
                    }
                    try {
                        evaluate(c * options.chunk, std::min(strings.size(), (c + 1) * options.chunk));
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    return distribution_from_rates(m, n, species, std::move(strings), rates);
}

OutputDistribution build_distribution(const Interferometer &ifm, const ArrivalSpec &spec, Species species,
                                      const DistributionOptions &options) {
    auto dist = build_distribution(ifm, spec.size(), delay_matrix(spec), species, options);
    dist.spec_hash = fnv1a64(arrival_spec_to_json(spec).dump());
    return dist;
}

std::vector<size_t> sample_indices(const OutputDistribution &dist, size_t count, uint64_t seed) {
    if (dist.entries.empty()) {
        throw DomainError("cannot sample from an empty distribution");
    }
    std::vector<double> cdf(dist.entries.size());
    double running = 0.0;
    for (size_t i = 0; i < dist.entries.size(); i++) {
        running += dist.entries[i].probability;
        cdf[i] = running;
    }
    Rng rng(seed);
    std::vector<size_t> out;
    out.reserve(count);
    for (size_t k = 0; k < count; k++) {
        double u = rng.uniform() * running;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        size_t index = std::min(static_cast<size_t>(it - cdf.begin()), cdf.size() - 1);
        // Skip zero-probability entries that share the CDF value of their predecessor.
        while (dist.entries[index].probability == 0.0 && index > 0) {
            index--;
        }
        out.push_back(index);
    }
    return out;
}

std::vector<OutputString> sample(const OutputDistribution &dist, size_t count, uint64_t seed) {
    std::vector<OutputString> out;
    for (size_t index : sample_indices(dist, count, seed)) {
        out.push_back(dist.entries[index].s);
    }
    return out;
}

std::vector<double> reference_probabilities(const Interferometer &ifm, int n, std::span<const OutputString> strings,
                                            Species species, Reference kind) {
    std::vector<double> weights;
    weights.reserve(strings.size());
    double total = 0.0;
    for (const auto &s : strings) {
        ComplexMatrix a = submatrix(ifm, s, n);
        double w = 0.0;
        if (kind == Reference::distinguishable) {
            w = rate_fully_distinguishable(a);
        } else if (species == Species::boson) {
            w = std::norm(permanent(a));
        } else {
            w = std::norm(determinant(a));
        }
        weights.push_back(w);
        total += w;
    }
    if (!(total > 0.0)) {
        throw NumericalError("reference weights sum to zero");
    }
    for (double &w : weights) {
        w /= total;
    }
    return weights;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw DomainError("total variation needs distributions over the same support");
    }
    double sum = 0.0;
    for (size_t i = 0; i < p.size(); i++) {
        sum += std::abs(p[i] - q[i]);
    }
    return 0.5 * sum;
}

std::vector<double> probabilities(const OutputDistribution &dist) {
    std::vector<double> out;
    out.reserve(dist.entries.size());
    for (const auto &e : dist.entries) {
        out.push_back(e.probability);
    }
    return out;
}

double entropy(const OutputDistribution &dist) {
    double h = 0.0;
    for (const auto &e : dist.entries) {
        if (e.probability > 0.0) {
            h -= e.probability * std::log2(e.probability);
        }
    }
    return h;
}

FermionCheck indistinguishable_fermion_check(const OutputDistribution &dist, const Interferometer &ifm,
                                             double tolerance) {
    if (dist.species != Species::fermion) {
        throw PreconditionError("the fermion check needs a fermion distribution");
    }
    std::vector<OutputString> strings;
    for (const auto &e : dist.entries) {
        strings.push_back(e.s);
    }
    auto reference = reference_probabilities(ifm, dist.n, strings, Species::fermion, Reference::indistinguishable);
    FermionCheck check;
    for (size_t i = 0; i < strings.size(); i++) {
        check.max_deviation = std::max(check.max_deviation, std::abs(dist.entries[i].probability - reference[i]));
    }
    check.matches = check.max_deviation <= tolerance;
    return check;
}

void write_jsonl(const OutputDistribution &dist, std::ostream &out) {
    for (const auto &e : dist.entries) {
        nlohmann::json line = {{"s", e.s.to_string()}, {"rate", e.rate}, {"prob", e.probability}};
        out << line.dump() << "\n";
    }
}

void write_csv(const OutputDistribution &dist, std::ostream &out) {
    out << "s,rate,prob\n";
    out << std::setprecision(17);
    for (const auto &e : dist.entries) {
        out << e.s.to_string() << ',' << e.rate << ',' << e.probability << "\n";
    }
}

}  // namespace immrate
