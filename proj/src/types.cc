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

#include <iostream>
#include <mutex>
#include <string>

#include "immrate/errors.h"
#include "immrate/types.h"

namespace immrate {

std::string_view to_string(Species species) {
    return species == Species::boson ? "boson" : "fermion";
}

Species parse_species(std::string_view text) {
    if (text == "boson") {
        return Species::boson;
    }
    if (text == "fermion") {
        return Species::fermion;
    }
    throw ConfigError("unknown species '" + std::string(text) + "' (expected boson or fermion)");
}

namespace {

std::mutex sink_mutex;
WarningSink &sink() {
    static WarningSink s = [](std::string_view message) {
        std::cerr << "warning: " << message << "\n";
    };
    return s;
}

}  // namespace

void set_warning_sink(WarningSink new_sink) {
    std::lock_guard<std::mutex> lock(sink_mutex);
    sink() = std::move(new_sink);
}

void warn(std::string_view message) {
    std::lock_guard<std::mutex> lock(sink_mutex);
    if (sink()) {
        sink()(message);
    }
}

uint64_t fnv1a64(std::string_view data) {
    uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace immrate
