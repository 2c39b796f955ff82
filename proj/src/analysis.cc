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

#include "immrate/analysis.h"

#include <cmath>
#include <numbers>

#include "immrate/delays.h"
#include "immrate/errors.h"

namespace immrate {

namespace {

BigInt factorial(int n) {
    BigInt f = 1;
    for (int k = 2; k <= n; k++) {
        f *= k;
    }
    return f;
}

BigInt binom(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    return factorial(n) / (factorial(k) * factorial(n - k));
}

int ceil_half(int n) {
    return (n + 1) / 2;
}

}  // namespace

std::string to_string(const Rational &q) {
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

Partition witness_partition(int n) {
    if (n < 2) {
        throw DomainError("witness partition needs n >= 2");
    }
    return Partition({ceil_half(n), n / 2});
}

bool requires_witness(const Partition &mu) {
    return dominates(witness_partition(mu.size()), mu);
}

bool requires_witness_by_width(const Partition &mu) {
    if (mu.size() < 2) {
        throw DomainError("witness partition needs n >= 2");
    }
    return mu.width() <= ceil_half(mu.size());
}

bool requires_witness_by_conjugate(const Partition &mu) {
    return dominates(conjugate(mu), conjugate(witness_partition(mu.size())));
}

BigInt catalan(int k) {
    if (k < 0) {
        throw DomainError("catalan index must be non-negative");
    }
    return binom(2 * k, k) / (k + 1);
}

CostEstimate burgisser_cost(const Partition &lambda) {
    int n = lambda.size();
    CostEstimate c;
    c.shape = lambda;
    c.s = standard_tableau_count(lambda);
    c.d = gl_dimension(lambda, n);
    double log_n = std::log(static_cast<double>(n));
    double d = c.d.convert_to<double>();
    double s = static_cast<double>(c.s);
    c.per_function = (s + log_n) * n * n * d;
    c.operations = c.per_function * s;
    return c;
}

double witness_dimension_estimate(int n) {
    return std::pow(2.0, 2 * n + 3) / (static_cast<double>(n) * n * std::numbers::pi);
}

WitnessReport witness_report(int n, const std::optional<Partition> &mu) {
    WitnessReport report;
    report.n = n;
    report.witness = witness_partition(n);
    report.witness_conjugate = conjugate(report.witness);
    if (mu) {
        if (mu->size() != n) {
            throw DomainError("delay partition size does not match n");
        }
        report.forced = requires_witness(*mu);
    }
    report.cost = burgisser_cost(report.witness_conjugate);
    return report;
}

Rational delay_partition_probability(const Partition &mu, int bins) {
    if (bins < 1) {
        throw DomainError("bin count must be positive");
    }
    int n = mu.size();
    if (mu.num_parts() > bins) {
        return Rational(0);
    }
    BigInt particles = factorial(n);
    for (int p : mu.parts()) {
        particles /= factorial(p);
    }
    BigInt arrangements = factorial(bins);
    for (int count : occupancy(mu, bins)) {
        arrangements /= factorial(count);
    }
    BigInt total = boost::multiprecision::pow(BigInt(bins), static_cast<unsigned>(n));
    return Rational(particles * arrangements, total);
}

double asymptotic_tail(int n, int bins) {
    return std::sqrt(2.0 / (n * std::numbers::pi)) * std::pow(4.0 / bins, n / 2.0);
}

WitnessProbability witness_probability(int n, int bins) {
    if (n < 2 || bins < 2) {
        throw DomainError("witness probability needs n >= 2 and b >= 2");
    }
    WitnessProbability out;
    for (const auto &mu : partitions_of(n)) {
        if (requires_witness_by_width(mu)) {
            out.exact += delay_partition_probability(mu, bins);
        }
    }
    out.exact_tail = Rational(1) - out.exact;
    out.asymptotic_tail = asymptotic_tail(n, bins);
    out.tail_decays = bins > 4;
    return out;
}

}  // namespace immrate
