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

#include "immrate/interferometer.h"

#include <algorithm>

#include "immrate/errors.h"
#include "immrate/matfun.h"
#include "immrate/rng.h"

namespace immrate {

double unitarity_error(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    ComplexMatrix g = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
    return g.cwiseAbs().maxCoeff();
}

Interferometer::Interferometer(ComplexMatrix u, std::optional<uint64_t> seed) : u_(std::move(u)), seed_(seed) {
    if (u_.rows() == 0 || u_.rows() != u_.cols()) {
        throw DomainError("interferometer matrix must be square and non-empty");
    }
    double err = unitarity_error(u_);
    if (!(err <= kUnitarityTolerance)) {
        throw DomainError("interferometer matrix is not unitary (max |U^dag U - I| = " + std::to_string(err) + ")");
    }
}

Interferometer haar_unitary(int m, uint64_t seed) {
    if (m < 1) {
        throw DomainError("haar_unitary requires m >= 1");
    }
    Rng rng(seed);
    ComplexMatrix z(m, m);
    const double scale = std::sqrt(0.5);
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            double re = rng.normal();
            double im = rng.normal();
            z(i, j) = Complex(re * scale, im * scale);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (int j = 0; j < m; j++) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0);
    }
    return Interferometer(std::move(q), seed);
}

OutputString::OutputString(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
    for (size_t i = 0; i < bits_.size(); i++) {
        if (bits_[i] > 1) {
            throw DomainError("output strings allow at most one particle per detector");
        }
        if (bits_[i] == 1) {
            positions_.push_back(static_cast<int>(i));
        }
    }
}

OutputString OutputString::parse(std::string_view text) {
    std::vector<uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw DomainError("output string must contain only 0 and 1: '" + std::string(text) + "'");
        }
        bits.push_back(static_cast<uint8_t>(c - '0'));
    }
    return OutputString(std::move(bits));
}

OutputString OutputString::from_positions(int m, std::span<const int> positions) {
    std::vector<uint8_t> bits(static_cast<size_t>(m), 0);
    for (int p : positions) {
        if (p < 0 || p >= m) {
            throw DomainError("detector position out of range");
        }
        if (bits[static_cast<size_t>(p)] != 0) {
            throw DomainError("detector position repeated");
        }
        bits[static_cast<size_t>(p)] = 1;
    }
    return OutputString(std::move(bits));
}

std::string OutputString::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) {
        out += static_cast<char>('0' + b);
    }
    return out;
}

ComplexMatrix submatrix(const Interferometer &ifm, const OutputString &s, std::span<const int> input_ports) {
    auto n = static_cast<int>(input_ports.size());
    if (s.modes() != ifm.modes()) {
        throw DomainError("output string length does not match interferometer modes");
    }
    if (s.count() != n) {
        throw DomainError("output string has " + std::to_string(s.count()) + " ones, expected " + std::to_string(n));
    }
    ComplexMatrix a(n, n);
    for (int beta = 0; beta < n; beta++) {
        for (int alpha = 0; alpha < n; alpha++) {
            int port = input_ports[static_cast<size_t>(alpha)];
            if (port < 0 || port >= ifm.modes()) {
                throw DomainError("input port out of range");
            }
            a(beta, alpha) = ifm.unitary()(s.positions()[static_cast<size_t>(beta)], port);
        }
    }
    return a;
}

ComplexMatrix submatrix(const Interferometer &ifm, const OutputString &s, int n) {
    if (n < 1 || n > ifm.modes()) {
        throw DomainError("particle count must lie in 1..m");
    }
    std::vector<int> ports(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) {
        ports[static_cast<size_t>(i)] = i;
    }
    return submatrix(ifm, s, std::span<const int>(ports));
}

MonomialVector monomial_vector(const ComplexMatrix &a, const GroupOrdering &ordering) {
    if (a.rows() != a.cols() || a.rows() != ordering.degree()) {
        throw DomainError("monomial_vector: matrix size does not match ordering");
    }
    MonomialVector v{ordering.degree(), ComplexVector(static_cast<Eigen::Index>(ordering.size()))};
    for (size_t g = 0; g < ordering.size(); g++) {
        v.values(static_cast<Eigen::Index>(g)) = monomial(a, ordering[g]);
    }
    return v;
}

uint64_t binomial(int m, int n) {
    if (n < 0 || n > m) {
        return 0;
    }
    n = std::min(n, m - n);
    unsigned __int128 result = 1;
    for (int k = 1; k <= n; k++) {
        result = result * static_cast<unsigned>(m - n + k) / static_cast<unsigned>(k);
        if (result > std::numeric_limits<uint64_t>::max()) {
            return std::numeric_limits<uint64_t>::max();
        }
    }
    return static_cast<uint64_t>(result);
}

std::vector<OutputString> enumerate_outputs(int m, int n, uint64_t limit) {
    if (n < 0 || m < 1 || n > m) {
        throw DomainError("enumerate_outputs requires 0 <= n <= m");
    }
    uint64_t count = binomial(m, n);
    if (count > limit) {
        throw SizeLimitError("C(" + std::to_string(m) + "," + std::to_string(n) + ") = " + std::to_string(count) +
                             " output strings exceeds the limit " + std::to_string(limit));
    }
    std::vector<OutputString> out;
    out.reserve(count);
    std::vector<uint8_t> bits(static_cast<size_t>(m), 0);
    std::fill(bits.end() - n, bits.end(), uint8_t{1});
    do {
        out.emplace_back(bits);
    } while (std::next_permutation(bits.begin(), bits.end()));
    return out;
}

nlohmann::json unitary_to_json(const ComplexMatrix &u) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < u.rows(); i++) {
        auto row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < u.cols(); j++) {
            row.push_back({u(i, j).real(), u(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix unitary_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty()) {
        throw ConfigError("unitary must be a non-empty array of rows");
    }
    auto m = static_cast<Eigen::Index>(j.size());
    ComplexMatrix u(m, m);
    for (Eigen::Index i = 0; i < m; i++) {
        const auto &row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m) {
            throw ConfigError("unitary row " + std::to_string(i) + " must have " + std::to_string(m) + " entries");
        }
        for (Eigen::Index k = 0; k < m; k++) {
            const auto &cell = row[static_cast<size_t>(k)];
            if (cell.is_number()) {
                u(i, k) = Complex(cell.get<double>(), 0.0);
            } else if (cell.is_array() && cell.size() == 2 && cell[0].is_number() && cell[1].is_number()) {
                u(i, k) = Complex(cell[0].get<double>(), cell[1].get<double>());
            } else {
                throw ConfigError("unitary entry (" + std::to_string(i) + "," + std::to_string(k) +
                                  ") must be [re, im]");
            }
        }
    }
    return u;
}

}  // namespace immrate
