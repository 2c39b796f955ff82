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

#ifndef IMMRATE_TYPES_H
#define IMMRATE_TYPES_H

#include <complex>
#include <cstdint>
#include <functional>
#include <string_view>

#include <Eigen/Dense>

namespace immrate {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class Species { boson, fermion };

std::string_view to_string(Species species);
Species parse_species(std::string_view text);

/// Receives non-fatal diagnostics (e.g. a rate clamped from a tiny negative value).
/// The default sink writes to stderr.
using WarningSink = std::function<void(std::string_view)>;
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

/// 64-bit FNV-1a hash, used to tag output artifacts with their configuration.
uint64_t fnv1a64(std::string_view data);

}  // namespace immrate

#endif
