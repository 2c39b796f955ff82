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

#ifndef IMMRATE_ANALYSIS_H
#define IMMRATE_ANALYSIS_H

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "immrate/symgroup.h"

namespace immrate {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational &q);

/// (ceil(n/2), floor(n/2)).
Partition witness_partition(int n);

/// True iff mu is dominated by the witness partition.
bool requires_witness(const Partition &mu);
/// True iff no bin holds more than ceil(n/2) particles.
bool requires_witness_by_width(const Partition &mu);
/// True iff the conjugate of mu dominates the conjugate of the witness partition.
bool requires_witness_by_conjugate(const Partition &mu);

/// C_k = binom(2k, k) / (k + 1).
BigInt catalan(int k);

/// Operation-count bound (mult + log n) n^2 s d, with mult replaced by s.
struct CostEstimate {
    Partition shape;
    uint64_t s = 0;
    BigInt d;
    double operations = 0.0;
    /// The bound divided by s: the cost of at least one diagonal group function.
    double per_function = 0.0;
};

CostEstimate burgisser_cost(const Partition &lambda);

/// 2^{2n+3} / (n^2 pi), the large-n estimate of d for (2^{n/2}).
double witness_dimension_estimate(int n);

struct WitnessReport {
    int n = 0;
    Partition witness;
    Partition witness_conjugate;
    std::optional<bool> forced;
    CostEstimate cost;
};

/// Cost is reported for the conjugate of the witness partition.
WitnessReport witness_report(int n, const std::optional<Partition> &mu = std::nullopt);

/// Probability that n uniform arrivals in b bins produce delay partition mu.
Rational delay_partition_probability(const Partition &mu, int bins);

struct WitnessProbability {
    /// Probability that no bin holds more than ceil(n/2) particles.
    Rational exact;
    Rational exact_tail;
    double asymptotic_tail = 0.0;
    /// False for b <= 4, where the asymptotic tail does not decay.
    bool tail_decays = true;
};

/// sqrt(2/(n pi)) (4/b)^{n/2}.
double asymptotic_tail(int n, int bins);

WitnessProbability witness_probability(int n, int bins);

}  // namespace immrate

#endif
