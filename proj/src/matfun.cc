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

#include "immrate/matfun.h"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "immrate/errors.h"

namespace immrate {

namespace {

void require_square(const auto &m, const char *what) {
    if (m.rows() != m.cols()) {
        throw DomainError(std::string(what) + " requires a square matrix");
    }
}

template <typename Scalar, typename Matrix>
Scalar ryser(const Matrix &m) {
    require_square(m, "permanent");
    auto n = static_cast<int>(m.rows());
    if (n > kMaxPermanentSize) {
        throw SizeLimitError("permanent supports n <= " + std::to_string(kMaxPermanentSize));
    }
    if (n == 0) {
        return Scalar(1);
    }
    std::vector<Scalar> row_sums(static_cast<size_t>(n), Scalar(0));
    Scalar total(0);
    uint64_t gray = 0;
    uint64_t limit = uint64_t{1} << n;
    for (uint64_t k = 1; k < limit; k++) {
        int j = std::countr_zero(k);
        gray ^= uint64_t{1} << j;
        bool added = (gray >> j) & 1U;
        for (int i = 0; i < n; i++) {
            if (added) {
                row_sums[static_cast<size_t>(i)] += m(i, j);
            } else {
                row_sums[static_cast<size_t>(i)] -= m(i, j);
            }
        }
        Scalar product(1);
        for (const auto &s : row_sums) {
            product *= s;
        }
        if (std::popcount(gray) % 2 == 0) {
            total += product;
        } else {
            total -= product;
        }
    }
    return n % 2 == 0 ? total : -total;
}

}  // namespace

Complex determinant(const ComplexMatrix &m) {
    require_square(m, "determinant");
    if (m.rows() == 0) {
        return 1.0;
    }
    return m.partialPivLu().determinant();
}

Complex permanent(const ComplexMatrix &m) {
    return ryser<Complex>(m);
}

double permanent(const RealMatrix &m) {
    return ryser<double>(m);
}

Complex monomial(const ComplexMatrix &m, const Permutation &rho) {
    Complex product = 1.0;
    for (int k = 0; k < rho.degree(); k++) {
        product *= m(rho(k), k);
    }
    return product;
}

Complex immanant(const Partition &lambda, const ComplexMatrix &m) {
    require_square(m, "immanant");
    auto n = static_cast<int>(m.rows());
    if (lambda.size() != n) {
        throw DomainError("immanant: partition size does not match matrix");
    }
    if (n > kMaxGroupDegree) {
        throw SizeLimitError("immanant supports n <= " + std::to_string(kMaxGroupDegree));
    }
    std::map<std::vector<int>, long long> chars;
    std::vector<int> images(static_cast<size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    Complex total = 0.0;
    do {
        Complex product = 1.0;
        for (int k = 0; k < n; k++) {
            product *= m(images[static_cast<size_t>(k)], k);
        }
        if (product == 0.0) {
            continue;
        }
        Permutation rho(images);
        auto type = rho.cycle_type();
        auto it = chars.find(type);
        if (it == chars.end()) {
            it = chars.emplace(type, character(lambda, std::span<const int>(type))).first;
        }
        total += static_cast<double>(it->second) * product;
    } while (std::next_permutation(images.begin(), images.end()));
    return total;
}

ComplexMatrix permute_rows(const Permutation &sigma, const ComplexMatrix &m) {
    if (sigma.degree() != m.rows()) {
        throw DomainError("permute_rows: permutation degree does not match matrix");
    }
    ComplexMatrix out(m.rows(), m.cols());
    for (int i = 0; i < sigma.degree(); i++) {
        out.row(i) = m.row(sigma(i));
    }
    return out;
}

Complex permuted_immanant(const Partition &lambda, const Permutation &sigma, const ComplexMatrix &m) {
    return immanant(lambda, permute_rows(sigma, m));
}

DFunctionBlock dfunction_block(const Partition &lambda, const ComplexMatrix &m, const IrrepMatrixSet &irreps) {
    require_square(m, "dfunction_block");
    if (lambda != irreps.shape() || lambda.size() != m.rows()) {
        throw DomainError("dfunction_block: partition, irreps and matrix disagree");
    }
    int s = irreps.dimension();
    auto rows = static_cast<Eigen::Index>(irreps.size());
    auto unknowns = static_cast<Eigen::Index>(s) * s;

    // imm(P_sigma M) = sum_ab D_ab(sigma) X_ab, one equation per sigma.
    RealMatrix design(rows, unknowns);
    RealVector rhs_re(rows);
    RealVector rhs_im(rows);
    for (Eigen::Index r = 0; r < rows; r++) {
        const RealMatrix &d = irreps[static_cast<size_t>(r)];
        for (int a = 0; a < s; a++) {
            for (int b = 0; b < s; b++) {
                design(r, a * s + b) = d(a, b);
            }
        }
        Complex value = permuted_immanant(lambda, irreps.element(static_cast<size_t>(r)), m);
        rhs_re(r) = value.real();
        rhs_im(r) = value.imag();
    }
    Eigen::ColPivHouseholderQR<RealMatrix> qr(design);
    if (qr.rank() < unknowns) {
        throw InternalError("dfunction_block: design matrix is rank deficient");
    }
    RealVector x_re = qr.solve(rhs_re);
    RealVector x_im = qr.solve(rhs_im);
    double scale = 1.0 + std::max(rhs_re.norm(), rhs_im.norm());
    double residual = std::max((design * x_re - rhs_re).norm(), (design * x_im - rhs_im).norm());
    if (residual > 1e-8 * scale) {
        throw NumericalError("dfunction_block: least-squares residual " + std::to_string(residual));
    }
    DFunctionBlock block{lambda, ComplexMatrix(s, s)};
    for (int a = 0; a < s; a++) {
        for (int b = 0; b < s; b++) {
            block.values(a, b) = Complex(x_re(a * s + b), x_im(a * s + b));
        }
    }
    return block;
}

DFunctionBlock dfunction_direct(const ComplexMatrix &m, const IrrepMatrixSet &irreps) {
    require_square(m, "dfunction_direct");
    if (irreps.shape().size() != m.rows()) {
        throw DomainError("dfunction_direct: irreps and matrix disagree");
    }
    int s = irreps.dimension();
    DFunctionBlock block{irreps.shape(), ComplexMatrix::Zero(s, s)};
    for (size_t i = 0; i < irreps.size(); i++) {
        Complex f = monomial(m, irreps.element(i));
        if (f != 0.0) {
            block.values += f * irreps[i].cast<Complex>();
        }
    }
    return block;
}

}  // namespace immrate
