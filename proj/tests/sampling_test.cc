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

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gtest/gtest.h"

#include "immrate/errors.h"
#include "immrate/matfun.h"

using namespace immrate;

namespace {

ArrivalSpec spec_from(std::vector<double> taus) {
    ArrivalSpec spec;
    spec.taus = std::move(taus);
    spec.window = 10.0;
    spec.bins = 4;
    return spec;
}

double total(const OutputDistribution &d) {
    double sum = 0;
    for (const auto &e : d.entries) sum += e.probability;
    return sum;
}

}  // namespace

TEST(Distribution, NormalisedAndComplete) {
    auto ifm = haar_unitary(6, 1);
    auto spec = spec_from({0.0, 0.4, 1.1});
    for (auto species : {Species::boson, Species::fermion}) {
        for (auto engine : {Engine::direct, Engine::blocked}) {
            DistributionOptions opts;
            opts.engine = engine;
            auto d = build_distribution(ifm, spec, species, opts);
            EXPECT_EQ(d.entries.size(), 20u);
            EXPECT_NEAR(total(d), 1.0, 1e-9);
            EXPECT_NE(d.spec_hash, 0u);
            auto outputs = enumerate_outputs(6, 3);
            for (size_t k = 0; k < outputs.size(); k++) {
                EXPECT_EQ(d.entries[k].s, outputs[k]);
                EXPECT_GE(d.entries[k].probability, 0.0);
            }
        }
    }
}

TEST(Distribution, IndistinguishableLimits) {
    auto ifm = haar_unitary(5, 2);
    DelayMatrix ones(RealMatrix::Ones(3, 3));
    auto strings = enumerate_outputs(5, 3);
    for (auto species : {Species::boson, Species::fermion}) {
        auto d = build_distribution(ifm, 3, ones, species);
        double norm = 0;
        std::vector<double> raw;
        for (const auto &s : strings) {
            auto a = submatrix(ifm, s, 3);
            raw.push_back(std::norm(species == Species::boson ? permanent(a) : determinant(a)));
            norm += raw.back();
        }
        auto ref = reference_probabilities(ifm, 3, strings, species, Reference::indistinguishable);
        for (size_t k = 0; k < strings.size(); k++) {
            EXPECT_NEAR(d.entries[k].probability, raw[k] / norm, 1e-12);
            EXPECT_NEAR(ref[k], raw[k] / norm, 1e-12);
        }
    }
}

TEST(Distribution, SpeciesAgreeWhenDistinguishable) {
    auto ifm = haar_unitary(6, 3);
    DelayMatrix apart(RealMatrix::Identity(3, 3));
    auto b = build_distribution(ifm, 3, apart, Species::boson);
    auto f = build_distribution(ifm, 3, apart, Species::fermion);
    auto strings = enumerate_outputs(6, 3);
    auto ref = reference_probabilities(ifm, 3, strings, Species::boson, Reference::distinguishable);
    for (size_t k = 0; k < b.entries.size(); k++) {
        EXPECT_NEAR(b.entries[k].probability, f.entries[k].probability, 1e-9);
        EXPECT_NEAR(b.entries[k].probability, ref[k], 1e-9);
    }
    EXPECT_LT(total_variation(probabilities(b), ref), 1e-9);
}

TEST(Distribution, ChunkingIsBitReproducible) {
    auto ifm = haar_unitary(7, 4);
    auto spec = spec_from({0.1, 0.3, 0.9, 1.7});
    auto serial = build_distribution(ifm, spec, Species::boson);
    for (size_t chunk : {1u, 3u, 8u, 1000u}) {
        DistributionOptions opts;
        opts.chunk = chunk;
        auto parallel = build_distribution(ifm, spec, Species::boson, opts);
        ASSERT_EQ(parallel.entries.size(), serial.entries.size());
        for (size_t k = 0; k < serial.entries.size(); k++) {
            EXPECT_EQ(parallel.entries[k].rate, serial.entries[k].rate);
            EXPECT_EQ(parallel.entries[k].probability, serial.entries[k].probability);
        }
    }
}

TEST(Distribution, Guards) {
    auto ifm = haar_unitary(20, 5);
    DelayMatrix r(RealMatrix::Identity(10, 10));
    EXPECT_THROW(build_distribution(ifm, 10, r, Species::boson), SizeLimitError);
    DistributionOptions opts;
    opts.max_strings = 10;
    EXPECT_THROW(build_distribution(haar_unitary(6, 1), 3, DelayMatrix(RealMatrix::Identity(3, 3)), Species::boson,
                                    opts),
                 SizeLimitError);
    std::vector<double> zeros{0.0, 0.0};
    EXPECT_THROW(distribution_from_rates(2, 1, Species::boson, enumerate_outputs(2, 1), zeros), NumericalError);
}

TEST(Distribution, Continuity) {
    auto ifm = haar_unitary(5, 6);
    auto base = spec_from({0.2, 0.9, 1.6});
    auto p0 = probabilities(build_distribution(ifm, base, Species::boson));
    auto shift = [&](double eps) {
        auto moved = base;
        moved.taus[1] += eps;
        auto p = probabilities(build_distribution(ifm, moved, Species::boson));
        double worst = 0;
        for (size_t k = 0; k < p.size(); k++) worst = std::max(worst, std::abs(p[k] - p0[k]));
        return worst;
    };
    double big = shift(1e-3), small = shift(1e-4);
    ASSERT_GT(small, 0.0);
    double ratio = (big / 1e-3) / (small / 1e-4);
    EXPECT_GT(ratio, 1.0 / 3);
    EXPECT_LT(ratio, 3.0);
}

TEST(Sampling, PointMass) {
    auto ifm = haar_unitary(3, 7);
    auto d = build_distribution(ifm, 3, DelayMatrix(RealMatrix::Ones(3, 3)), Species::boson);
    ASSERT_EQ(d.entries.size(), 1u);
    EXPECT_NEAR(d.entries[0].probability, 1.0, 1e-15);
    for (const auto &s : sample(d, 100, 1)) EXPECT_EQ(s.to_string(), "111");
}

TEST(Sampling, ChiSquareGoodnessOfFit) {
    auto ifm = haar_unitary(6, 8);
    auto d = build_distribution(ifm, spec_from({0.0, 0.5, 1.0}), Species::boson);
    const size_t draws = 10000;
    auto idx = sample_indices(d, draws, 99);
    std::vector<double> counts(d.entries.size(), 0.0);
    for (size_t i : idx) counts[i] += 1;
    // Pool cells with small expectation so the asymptotic law applies.
    double stat = 0, pooled_obs = 0, pooled_exp = 0;
    int cells = 0;
    for (size_t k = 0; k < counts.size(); k++) {
        double expected = d.entries[k].probability * draws;
        if (expected < 5) {
            pooled_obs += counts[k];
            pooled_exp += expected;
            continue;
        }
        stat += (counts[k] - expected) * (counts[k] - expected) / expected;
        cells++;
    }
    if (pooled_exp > 0) {
        stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
        cells++;
    }
    boost::math::chi_squared dist(cells - 1);
    double p_value = boost::math::cdf(boost::math::complement(dist, stat));
    EXPECT_GT(p_value, 0.001);
}

TEST(Sampling, SeedsDifferButAgreeInDistribution) {
    auto ifm = haar_unitary(5, 9);
    auto d = build_distribution(ifm, spec_from({0.0, 0.3}), Species::fermion);
    auto a = sample_indices(d, 20000, 1);
    auto b = sample_indices(d, 20000, 2);
    EXPECT_NE(a, b);
    EXPECT_EQ(a, sample_indices(d, 20000, 1));
    for (size_t k = 0; k < d.entries.size(); k++) {
        double p = d.entries[k].probability;
        double sd = std::sqrt(p * (1 - p) / 20000);
        double fa = std::count(a.begin(), a.end(), k) / 20000.0;
        double fb = std::count(b.begin(), b.end(), k) / 20000.0;
        EXPECT_LT(std::abs(fa - fb), 5 * std::sqrt(2.0) * sd + 1e-12);
    }
}

TEST(FermionCheck, DeterminantDistribution) {
    auto ifm = haar_unitary(4, 10);
    auto d = build_distribution(ifm, spec_from({0.7, 0.7}), Species::fermion);
    auto check = indistinguishable_fermion_check(d, ifm);
    EXPECT_TRUE(check.matches);
    EXPECT_TRUE(check.classically_easy);
    EXPECT_LT(check.max_deviation, 1e-9);
    auto partial = build_distribution(ifm, spec_from({0.0, 1.0}), Species::fermion);
    EXPECT_FALSE(indistinguishable_fermion_check(partial, ifm).matches);
}

TEST(FermionCheck, SingleParticle) {
    auto ifm = haar_unitary(5, 11);
    auto d = build_distribution(ifm, spec_from({0.5}), Species::fermion);
    for (size_t k = 0; k < 5; k++) {
        EXPECT_NEAR(d.entries[k].probability, std::norm(ifm.unitary()(4 - static_cast<int>(k), 0)), 1e-12);
    }
}

TEST(FermionCheck, TwoPortAntibunching) {
    ComplexMatrix u(2, 2);
    u << 1, 1, 1, -1;
    Interferometer ifm(u / std::sqrt(2.0));
    auto d = build_distribution(ifm, spec_from({0.0, 0.0}), Species::fermion);
    ASSERT_EQ(d.entries.size(), 1u);
    EXPECT_NEAR(d.entries[0].probability, 1.0, 1e-15);
    EXPECT_NEAR(d.entries[0].rate, 1.0, 1e-15);
    // Identical bosons always bunch here, leaving no collision-free outcome.
    EXPECT_THROW(build_distribution(ifm, 2, DelayMatrix(RealMatrix::Ones(2, 2)), Species::boson), NumericalError);
}

TEST(Summary, EntropyAndVariation) {
    std::vector<double> rates{1.0, 1.0, 1.0, 1.0};
    auto d = distribution_from_rates(4, 1, Species::boson, enumerate_outputs(4, 1), rates);
    EXPECT_NEAR(entropy(d), 2.0, 1e-15);
    std::vector<double> p{0.5, 0.5, 0.0}, q{0.0, 0.5, 0.5};
    EXPECT_NEAR(total_variation(p, q), 0.5, 1e-15);
    EXPECT_NEAR(total_variation(p, p), 0.0, 1e-15);
}

TEST(Export, JsonlAndCsv) {
    std::vector<double> rates{1.0, 3.0};
    auto d = distribution_from_rates(2, 1, Species::boson, enumerate_outputs(2, 1), rates);
    std::ostringstream jl;
    write_jsonl(d, jl);
    std::istringstream lines(jl.str());
    std::string line;
    std::vector<nlohmann::json> rows;
    while (std::getline(lines, line)) rows.push_back(nlohmann::json::parse(line));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0]["s"], "01");
    EXPECT_EQ(rows[1]["s"], "10");
    EXPECT_DOUBLE_EQ(rows[0]["rate"].get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(rows[1]["prob"].get<double>(), 0.75);
    std::ostringstream csv;
    write_csv(d, csv);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "s,rate,prob");
}
