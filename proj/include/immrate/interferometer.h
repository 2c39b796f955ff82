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

#ifndef IMMRATE_INTERFEROMETER_H
#define IMMRATE_INTERFEROMETER_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "immrate/symgroup.h"
#include "immrate/types.h"

namespace immrate {

inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr uint64_t kMaxOutputStrings = 1'000'000;

/// An m-mode lossless linear network.
class Interferometer {
   public:
    /// Throws DomainError unless u is square and unitary to kUnitarityTolerance.
    explicit Interferometer(ComplexMatrix u, std::optional<uint64_t> seed = std::nullopt);

    int modes() const {
        return static_cast<int>(u_.rows());
    }
    const ComplexMatrix &unitary() const {
        return u_;
    }
    std::optional<uint64_t> seed() const {
        return seed_;
    }

   private:
    ComplexMatrix u_;
    std::optional<uint64_t> seed_;
};

/// Haar-random unitary from the QR decomposition of a complex Ginibre matrix.
Interferometer haar_unitary(int m, uint64_t seed);

/// Largest entry of |U^dagger U - I|.
double unitarity_error(const ComplexMatrix &u);

/// Collision-free detector pattern: one bit per output mode.
class OutputString {
   public:
    OutputString() = default;
    explicit OutputString(std::vector<uint8_t> bits);

    /// Parses a string such as "01101".
    static OutputString parse(std::string_view text);
    /// Builds the pattern from 0-based detector positions.
    static OutputString from_positions(int m, std::span<const int> positions);

    int modes() const {
        return static_cast<int>(bits_.size());
    }
    int count() const {
        return static_cast<int>(positions_.size());
    }
    const std::vector<uint8_t> &bits() const {
        return bits_;
    }
    /// 0-based detector positions, ascending.
    const std::vector<int> &positions() const {
        return positions_;
    }
    std::string to_string() const;

    bool operator==(const OutputString &other) const {
        return bits_ == other.bits_;
    }
    auto operator<=>(const OutputString &other) const {
        return bits_ <=> other.bits_;
    }

   private:
    std::vector<uint8_t> bits_;
    std::vector<int> positions_;
};

/// n x n matrix A with A(beta, alpha) = U(S_beta, input_alpha); inputs default to ports 0..n-1.
ComplexMatrix submatrix(const Interferometer &ifm, const OutputString &s, int n);
ComplexMatrix submatrix(const Interferometer &ifm, const OutputString &s, std::span<const int> input_ports);

struct MonomialVector {
    int degree = 0;
    ComplexVector values;
};

/// Entry g is A(g(1),1) ... A(g(n),n) for the g-th element of the ordering.
MonomialVector monomial_vector(const ComplexMatrix &a, const GroupOrdering &ordering);

uint64_t binomial(int m, int n);

/// All collision-free strings of m modes with n ones, in lexicographic order.
std::vector<OutputString> enumerate_outputs(int m, int n, uint64_t limit = kMaxOutputStrings);

/// Array of rows, each a list of [re, im] pairs.
nlohmann::json unitary_to_json(const ComplexMatrix &u);
ComplexMatrix unitary_from_json(const nlohmann::json &j);

}  // namespace immrate

#endif
