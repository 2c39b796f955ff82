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

#include "gtest/gtest.h"

#include "immrate/errors.h"

using namespace immrate;

namespace {

nlohmann::json base_json() {
    return nlohmann::json::parse(R"({
        "m": 5, "n": 3,
        "unitary": {"kind": "haar", "seed": 17},
        "species": "fermion",
        "arrival": {"taus": [0.1, 0.5, 2.2], "delta_omega": 1.5, "window": 4.0, "bins": 4},
        "output": "01101",
        "engine": "direct",
        "seed": 3
    })");
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "immrate_config_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Config, Parse) {
    auto c = ExperimentConfig::from_json(base_json());
    EXPECT_EQ(c.m, 5);
    EXPECT_EQ(c.n, 3);
    EXPECT_TRUE(c.unitary.haar);
    EXPECT_EQ(c.unitary.seed, 17u);
    EXPECT_EQ(c.species, Species::fermion);
    EXPECT_EQ(c.engine, Engine::direct);
    EXPECT_EQ(c.output, "01101");
    EXPECT_EQ(c.arrival.bins, 4);
    EXPECT_FALSE(c.binned);
}

TEST(Config, RoundTripAndHash) {
    auto c = ExperimentConfig::from_json(base_json());
    auto again = ExperimentConfig::from_json(c.to_json());
    EXPECT_EQ(again.to_json(), c.to_json());
    EXPECT_EQ(again.hash(), c.hash());
    auto j = base_json();
    j["arrival"]["taus"][0] = 0.2;
    EXPECT_NE(ExperimentConfig::from_json(j).hash(), c.hash());

    auto explicit_u = c;
    explicit_u.unitary.haar = false;
    explicit_u.unitary.matrix = haar_unitary(5, 4).unitary();
    auto back = ExperimentConfig::from_json(explicit_u.to_json());
    EXPECT_EQ(back.unitary.matrix, explicit_u.unitary.matrix);
    EXPECT_EQ(back.hash(), explicit_u.hash());
}

TEST(Config, Errors) {
    auto bad = [](auto edit) {
        auto j = base_json();
        edit(j);
        return j;
    };
    EXPECT_THROW(ExperimentConfig::from_json(bad([](auto &j) { j["n"] = 6; })), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(bad([](auto &j) { j.erase("m"); })), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(bad([](auto &j) { j["m"] = "five"; })), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(bad([](auto &j) { j["species"] = "anyon"; })), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(bad([](auto &j) { j["engine"] = "magic"; })), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(bad([](auto &j) { j["output"] = "11100"; j["n"] = 2; })), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(bad([](auto &j) { j["arrival"]["taus"] = {0.1, 0.2}; })), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(bad([](auto &j) { j["arrival"]["taus"][2] = 9.0; })), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(bad([](auto &j) { j["engine"] = "truncated"; })), ConfigError);
    EXPECT_NO_THROW(
        ExperimentConfig::from_json(bad([](auto &j) { j["engine"] = "truncated"; j["binned"] = true; })));
    EXPECT_THROW(ExperimentConfig::from_json(bad([](auto &j) { j["unitary"] = {{"kind", "matrix"}, {"data", {{1, 0}, {0, 1}}}}; })),
                 ConfigError);
}

TEST(Config, FilesAndRelativeUnitary) {
    auto dir = scratch_dir();
    auto u = haar_unitary(5, 8).unitary();
    std::ofstream(dir / "u.json") << unitary_to_json(u).dump();
    auto j = base_json();
    j["unitary"] = {{"kind", "file"}, {"path", "u.json"}};
    std::ofstream(dir / "cfg.json") << j.dump(2);
    auto c = load_config((dir / "cfg.json").string());
    EXPECT_FALSE(c.unitary.haar);
    EXPECT_EQ(c.unitary.matrix, u);
    EXPECT_EQ(make_interferometer(c).unitary(), u);

    std::ofstream(dir / "broken.json") << "{\"m\": 3,";
    try {
        load_config((dir / "broken.json").string());
        FAIL() << "expected a parse error";
    } catch (const ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find("broken.json"), std::string::npos);
    }
    EXPECT_THROW(load_config((dir / "missing.json").string()), ConfigError);
}

TEST(Config, DerivedObjects) {
    auto j = base_json();
    j["arrival"]["taus"] = {0.1, 0.2, 2.2};
    auto c = ExperimentConfig::from_json(j);
    auto ifm = make_interferometer(c);
    EXPECT_EQ(ifm.unitary(), haar_unitary(5, 17).unitary());
    auto continuous = make_delay_matrix(c);
    EXPECT_LT(continuous(0, 1), 1.0);
    c.binned = true;
    auto snapped = make_delay_matrix(c);
    EXPECT_EQ(snapped(0, 1), 1.0);
    EXPECT_NEAR(snapped(0, 2), std::exp(-0.5 * 1.5 * 1.5 * 4.0), 1e-15);
    EXPECT_EQ(make_delay_partition(c).shape, Partition({2, 1}));
}
