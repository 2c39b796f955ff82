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

#include "immrate/delays.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "immrate/errors.h"

namespace immrate {

void ArrivalSpec::validate() const {
    if (taus.empty()) {
        throw DomainError("arrival spec needs at least one time");
    }
    if (!(delta_omega > 0.0) || !std::isfinite(delta_omega)) {
        throw DomainError("delta_omega must be positive");
    }
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw DomainError("window must be positive");
    }
    if (bins < 2) {
        throw DomainError("bins must be at least 2");
    }
    for (double t : taus) {
        if (!(t >= 0.0 && t < window)) {
            throw DomainError("arrival time " + std::to_string(t) + " outside [0, window)");
        }
    }
}

double combine_widths(double source_width, double detector_width) {
    if (!(source_width > 0.0) || !(detector_width > 0.0)) {
        throw DomainError("widths must be positive");
    }
    return 1.0 / std::sqrt(1.0 / (detector_width * detector_width) + 1.0 / (source_width * source_width));
}

DelayMatrix::DelayMatrix(RealMatrix r) : r_(std::move(r)) {
    if (r_.rows() == 0 || r_.rows() != r_.cols()) {
        throw DomainError("delay matrix must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < r_.rows(); i++) {
        if (std::abs(r_(i, i) - 1.0) > 1e-12) {
            throw DomainError("delay matrix must have unit diagonal");
        }
        for (Eigen::Index j = 0; j < i; j++) {
            if (!std::isfinite(r_(i, j)) || std::abs(r_(i, j) - r_(j, i)) > 1e-12) {
                throw DomainError("delay matrix must be symmetric");
            }
        }
    }
}

DelayMatrix delay_matrix(std::span<const double> taus, double delta_omega) {
    auto n = static_cast<Eigen::Index>(taus.size());
    RealMatrix r(n, n);
    for (Eigen::Index i = 0; i < n; i++) {
        r(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; j++) {
            double x = delta_omega * (taus[static_cast<size_t>(i)] - taus[static_cast<size_t>(j)]);
            r(i, j) = r(j, i) = std::exp(-0.5 * x * x);
        }
    }
    return DelayMatrix(std::move(r));
}

DelayMatrix delay_matrix(const ArrivalSpec &spec) {
    spec.validate();
    return delay_matrix(spec.taus, spec.delta_omega);
}

DelayPartition delay_partition(std::span<const int> bin_of, int bins) {
    if (bin_of.empty()) {
        throw DomainError("delay partition needs at least one particle");
    }
    std::vector<int> tally(static_cast<size_t>(bins), 0);
    for (int c : bin_of) {
        if (c < 0 || c >= bins) {
            throw DomainError("bin label out of range");
        }
        tally[static_cast<size_t>(c)]++;
    }
    std::vector<int> parts;
    for (int t : tally) {
        if (t > 0) {
            parts.push_back(t);
        }
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    Partition shape(std::move(parts));
    return DelayPartition{shape, occupancy(shape, bins), bins};
}

Discretization discretize(const ArrivalSpec &spec) {
    spec.validate();
    Discretization out;
    for (double t : spec.taus) {
        auto c = static_cast<int>(std::floor(t * spec.bins / spec.window));
        out.bin_of.push_back(std::clamp(c, 0, spec.bins - 1));
    }
    out.partition = delay_partition(out.bin_of, spec.bins);
    return out;
}

std::vector<double> snapped_times(std::span<const int> bin_of, const ArrivalSpec &spec) {
    std::vector<double> times;
    times.reserve(bin_of.size());
    for (int c : bin_of) {
        if (c < 0 || c >= spec.bins) {
            throw DomainError("bin label out of range");
        }
        times.push_back((c + 0.5) * spec.window / spec.bins);
    }
    return times;
}

DelayMatrix snapped_delay_matrix(std::span<const int> bin_of, const ArrivalSpec &spec) {
    auto times = snapped_times(bin_of, spec);
    return delay_matrix(times, spec.delta_omega);
}

std::vector<int> occupancy(const Partition &mu, int bins) {
    if (mu.num_parts() > bins) {
        throw DomainError("partition " + mu.to_string() + " has more parts than the " + std::to_string(bins) +
                          " available bins");
    }
    std::vector<int> counts(static_cast<size_t>(mu.size()) + 1, 0);
    for (int p : mu.parts()) {
        counts[static_cast<size_t>(p)]++;
    }
    counts[0] = bins - mu.num_parts();
    return counts;
}

nlohmann::json arrival_spec_to_json(const ArrivalSpec &spec) {
    return {{"taus", spec.taus}, {"delta_omega", spec.delta_omega}, {"window", spec.window}, {"bins", spec.bins}};
}

ArrivalSpec arrival_spec_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ConfigError("arrival spec must be an object");
    }
    ArrivalSpec spec;
    try {
        spec.taus = j.at("taus").get<std::vector<double>>();
        spec.delta_omega = j.value("delta_omega", 1.0);
        spec.window = j.at("window").get<double>();
        spec.bins = j.at("bins").get<int>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("arrival spec: ") + e.what());
    }
    try {
        spec.validate();
    } catch (const DomainError &e) {
        throw ConfigError(std::string("arrival spec: ") + e.what());
    }
    return spec;
}

}  // namespace immrate
