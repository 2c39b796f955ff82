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

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

#include "immrate/interferometer.h"
#include "immrate/matfun.h"

using namespace immrate;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "immrate");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_config(const std::string &name, const json &j) {
    std::ofstream(name) << j.dump(2);
    return name;
}

json three_particle(const std::vector<double> &taus, const std::string &species = "boson") {
    return {{"m", 5},
            {"n", 3},
            {"unitary", {{"kind", "haar"}, {"seed", 11}}},
            {"species", species},
            {"arrival", {{"taus", taus}, {"delta_omega", 1.0}, {"window", 4.0}, {"bins", 4}}},
            {"output", "01101"},
            {"engine", "blocked"}};
}

json two_port(const std::vector<double> &taus, const std::string &species) {
    json u = json::array({json::array({json::array({M_SQRT1_2, 0.0}), json::array({M_SQRT1_2, 0.0})}),
                          json::array({json::array({M_SQRT1_2, 0.0}), json::array({-M_SQRT1_2, 0.0})})});
    return {{"m", 2},
            {"n", 2},
            {"unitary", {{"kind", "matrix"}, {"data", u}}},
            {"species", species},
            {"arrival", {{"taus", taus}, {"delta_omega", 1.0}, {"window", 10.0}, {"bins", 2}}},
            {"engine", "direct"}};
}

std::vector<std::pair<double, double>> parse_slice(const std::string &csv) {
    std::istringstream in(csv);
    std::string line;
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'd') continue;
        auto comma = line.find(',');
        rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return rows;
}

}  // namespace

TEST(Cli, RateEnginesAgreeAndMatchPermanent) {
    auto path = write_config("equal.json", three_particle({1.0, 1.0, 1.0}));
    auto blocked = run({"rate", "--config", path});
    ASSERT_EQ(blocked.code, 0) << blocked.err;
    auto direct = run({"rate", "--config", path, "--engine", "direct"});
    ASSERT_EQ(direct.code, 0) << direct.err;
    double rb = json::parse(blocked.out)["results"][0]["rate"];
    double rd = json::parse(direct.out)["results"][0]["rate"];
    EXPECT_LT(std::abs(rb - rd), 1e-9 * rd);
    auto a = submatrix(haar_unitary(5, 11), OutputString::parse("01101"), 3);
    EXPECT_LT(std::abs(rd - std::norm(permanent(a))), 1e-9 * rd);
    auto report = json::parse(blocked.out);
    EXPECT_EQ(report["engine"], "blocked");
    EXPECT_EQ(report["results"][0]["blocks"].size(), 3u);
    EXPECT_EQ(report["config_hash"].get<std::string>().size(), 16u);
    EXPECT_NE(blocked.err.find("wall time"), std::string::npos);
}

TEST(Cli, TruncatedListsDroppedBlocks) {
    auto j = three_particle({0.2, 0.4, 3.1});
    j["binned"] = true;
    j["engine"] = "truncated";
    auto res = run({"rate", "--config", write_config("trunc.json", j)});
    ASSERT_EQ(res.code, 0) << res.err;
    auto report = json::parse(res.out);
    EXPECT_EQ(report["delay_partition"], json::array({2, 1}));
    int dropped = 0;
    for (const auto &b : report["results"][0]["blocks"]) {
        if (!b["kept"].get<bool>()) {
            dropped++;
            EXPECT_EQ(b["block"], json::array({1, 1, 1}));
            EXPECT_LT(b["magnitude"].get<double>(), 1e-12);
        }
    }
    EXPECT_EQ(dropped, 1);
    j["engine"] = "blocked";
    auto full = run({"rate", "--config", write_config("trunc_full.json", j)});
    double rt = report["results"][0]["rate"], rf = json::parse(full.out)["results"][0]["rate"];
    EXPECT_LT(std::abs(rt - rf), 1e-9 * rf);
}

TEST(Cli, OutputIsDeterministic) {
    auto path = write_config("det.json", three_particle({0.1, 0.7, 1.3}));
    EXPECT_EQ(run({"rate", "--config", path}).out, run({"rate", "--config", path}).out);
    auto d1 = run({"distribution", "--config", path, "--threads-chunk", "3"});
    auto d2 = run({"distribution", "--config", path, "--threads-chunk", "3"});
    EXPECT_EQ(d1.out, d2.out);
    auto s1 = run({"sample", "--config", path, "--count", "50", "--seed", "5"});
    EXPECT_EQ(s1.out, run({"sample", "--config", path, "--count", "50", "--seed", "5"}).out);
    EXPECT_NE(s1.out, run({"sample", "--config", path, "--count", "50", "--seed", "6"}).out);
    EXPECT_EQ(s1.out.rfind("# config_hash=", 0), 0u);
}

TEST(Cli, DistributionSummaries) {
    auto j = three_particle({1.0, 1.0, 1.0}, "fermion");
    j.erase("output");
    auto res = run({"distribution", "--config", write_config("fermion.json", j), "--out", "fermion.jsonl"});
    ASSERT_EQ(res.code, 0) << res.err;
    auto summary = json::parse(res.out);
    EXPECT_LT(summary["tv_indistinguishable"].get<double>(), 1e-9);
    EXPECT_EQ(summary["strings"], 10);
    std::ifstream lines("fermion.jsonl");
    int count = 0;
    for (std::string line; std::getline(lines, line);) count++;
    EXPECT_EQ(count, 10);

    j["arrival"]["taus"] = {0.0, 1.9, 3.9};
    j["arrival"]["delta_omega"] = 40.0;
    auto apart = run({"distribution", "--config", write_config("apart.json", j), "--out", "apart.jsonl"});
    ASSERT_EQ(apart.code, 0) << apart.err;
    EXPECT_LT(json::parse(apart.out)["tv_distinguishable"].get<double>(), 1e-9);

    auto full = three_particle({1.0, 1.0, 1.0});
    full["m"] = 3;
    full.erase("output");
    auto single = run({"distribution", "--config", write_config("single.json", full)});
    ASSERT_EQ(single.code, 0) << single.err;
    auto row = json::parse(single.out.substr(0, single.out.find('\n')));
    EXPECT_EQ(row["s"], "111");
    EXPECT_NEAR(row["prob"].get<double>(), 1.0, 1e-15);
}

TEST(Cli, Analyze) {
    auto res = run({"analyze", "--n", "5", "-b", "8"});
    ASSERT_EQ(res.code, 0) << res.err;
    auto report = json::parse(res.out);
    bool found = false;
    for (const auto &p : report["partitions"]) {
        if (p["mu"] == json::array({2, 2, 1})) {
            EXPECT_EQ(p["probability"], "315/2048");
            found = true;
        }
    }
    EXPECT_TRUE(found);

    auto six = json::parse(run({"analyze", "--n", "6", "--bins", "8"}).out);
    std::set<std::vector<int>> flagged;
    for (const auto &p : six["partitions"])
        if (p["witness"].get<bool>()) flagged.insert(p["mu"].get<std::vector<int>>());
    std::set<std::vector<int>> expected{{3, 3}, {2, 2, 2}, {2, 2, 1, 1}, {2, 1, 1, 1, 1},
                                        {1, 1, 1, 1, 1, 1}, {3, 2, 1}, {3, 1, 1, 1}};
    EXPECT_EQ(flagged, expected);

    auto small = json::parse(run({"analyze", "--n", "4", "--bins", "3"}).out);
    for (const auto &p : small["partitions"])
        if (p["mu"] == json::array({1, 1, 1, 1})) EXPECT_EQ(p["probability"], "0");
    EXPECT_EQ(run({"analyze", "--n", "13", "--bins", "8"}).code, kExitSizeGuard);
}

TEST(Cli, GamasTable) {
    auto res = run({"gamas-table", "--n", "6", "--json"});
    ASSERT_EQ(res.code, 0) << res.err;
    auto rows = json::parse(res.out)["rows"];
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_TRUE(rows[0]["vanishing"].empty());
    EXPECT_EQ(rows[3]["basis"], "f1 f1 f2 f2 f3 f3");
    EXPECT_EQ(rows[3]["vanishing"].size(), 4u);
    EXPECT_EQ(rows[10]["vanishing"].size(), 10u);
    auto text = run({"gamas-table", "--n", "3"});
    EXPECT_EQ(text.out, "basis\t(1,1,1)\t(2,1)\t(3)\nf1 f2 f3\t.\t.\t.\nf1 f1 f2\t0\t.\t.\nf1 f1 f1\t0\t0\t.\n");
}

TEST(Cli, LandscapeDipAndShiftInvariance) {
    auto path = write_config("hom.json", two_port({5.0, 5.0}, "boson"));
    std::vector<std::string> args{"landscape", "--config", path, "--min", "-3", "--max", "3", "--steps", "61"};
    auto res = run(args);
    ASSERT_EQ(res.code, 0) << res.err;
    auto rows = parse_slice(res.out);
    ASSERT_EQ(rows.size(), 61u);
    EXPECT_NEAR(rows[30].first, 0.0, 1e-15);
    EXPECT_NEAR(rows[30].second, 0.0, 1e-15);
    for (size_t k = 31; k < rows.size(); k++) {
        EXPECT_GT(rows[k].second, rows[k - 1].second);
        EXPECT_NEAR(rows[k].second, rows[60 - k].second, 1e-15);
    }
    args.insert(args.end(), {"--shift", "2.5"});
    auto shifted = parse_slice(run(args).out);
    for (size_t k = 0; k < rows.size(); k++) EXPECT_NEAR(shifted[k].second, rows[k].second, 1e-12);

    auto fermion = parse_slice(
        run({"landscape", "--config", write_config("homf.json", two_port({5.0, 5.0}, "fermion")), "--min", "-3",
             "--max", "3", "--steps", "61"})
            .out);
    for (const auto &row : fermion) EXPECT_LE(row.second, fermion[30].second + 1e-15);
    EXPECT_NEAR(fermion[30].second, 1.0, 1e-15);
}

TEST(Cli, LandscapeExtremumAtSimultaneity) {
    auto path = write_config("flat.json", three_particle({1.0, 1.0, 1.0}));
    auto rows = parse_slice(run({"landscape", "--config", path, "--dims", "1", "--min", "-1e-4", "--max", "1e-4",
                                 "--steps", "3"})
                                .out);
    ASSERT_EQ(rows.size(), 3u);
    double derivative = (rows[2].second - rows[0].second) / 2e-4;
    EXPECT_LT(std::abs(derivative), 1e-6);
    auto surface = run({"landscape", "--config", path, "--steps", "5"});
    ASSERT_EQ(surface.code, 0);
    EXPECT_NE(surface.out.find("d2,d3,rate"), std::string::npos);
    EXPECT_EQ(run({"landscape", "--config", path, "--steps", "2000"}).code, kExitSizeGuard);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"rate", "--config", "does-not-exist.json"}).code, kExitConfigError);
    std::ofstream("garbage.json") << "{ not json";
    EXPECT_EQ(run({"rate", "--config", "garbage.json"}).code, kExitConfigError);
    EXPECT_EQ(run({"rate"}).code, kExitConfigError);
    EXPECT_EQ(run({"bogus"}).code, kExitConfigError);
    EXPECT_EQ(run({"--help"}).code, kExitSuccess);
    auto j = three_particle({1.0, 1.0, 1.0});
    j["engine"] = "truncated";
    EXPECT_EQ(run({"rate", "--config", write_config("needs_bins.json", j)}).code, kExitConfigError);
    auto big = three_particle({0.1, 0.2, 0.3});
    big["m"] = 40;
    big["n"] = 3;
    big.erase("output");
    big["arrival"]["taus"] = std::vector<double>(9, 0.5);
    big["n"] = 9;
    EXPECT_EQ(run({"rate", "--config", write_config("big.json", big)}).code, kExitSizeGuard);
    EXPECT_EQ(run({"rate", "--config", write_config("hom_dip.json", two_port({5.0, 5.0}, "boson")), "--engine",
                   "direct"})
                  .code,
              kExitSuccess);
    EXPECT_EQ(run({"distribution", "--config", "hom_dip.json"}).code, kExitNumericalFailure);
}
