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

#include "immrate/rates.h"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "immrate/errors.h"
#include "immrate/matfun.h"

namespace immrate {

std::string_view to_string(Engine engine) {
    switch (engine) {
        case Engine::direct:
            return "direct";
        case Engine::blocked:
            return "blocked";
        case Engine::truncated:
            return "truncated";
    }
    return "unknown";
}

Engine parse_engine(std::string_view text) {
    if (text == "direct") {
        return Engine::direct;
    }
    if (text == "blocked") {
        return Engine::blocked;
    }
    if (text == "truncated") {
        return Engine::truncated;
    }
    throw ConfigError("unknown engine '" + std::string(text) + "' (expected direct, blocked or truncated)");
}

namespace {

double finalize_rate(double value, double scale, std::string_view what) {
    double tolerance = kNegativeRateTolerance * std::max(1.0, scale);
    if (value >= 0.0) {
        return value;
    }
    if (value >= -tolerance) {
        warn(std::string(what) + ": clamped rate " + std::to_string(value) + " to zero");
        return 0.0;
    }
    throw NumericalError(std::string(what) + ": rate " + std::to_string(value) + " is negative beyond tolerance");
}

void require_degree(int n, int limit, std::string_view what) {
    if (n < 1 || n > limit) {
        throw SizeLimitError(std::string(what) + " supports 1 <= n <= " + std::to_string(limit) + ", got " +
                             std::to_string(n));
    }
}

void require_matching(const ComplexMatrix &a, const DelayMatrix &r) {
    if (a.rows() != a.cols() || a.rows() != r.size()) {
        throw DomainError("scattering matrix and delay matrix sizes differ");
    }
}

double max_abs(const RealMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

double overlap_monomial(const RealMatrix &r, const Permutation &rho) {
    double product = 1.0;
    for (int k = 0; k < rho.degree(); k++) {
        product *= r(rho(k), k);
    }
    return product;
}

RateMatrix rate_matrix(const DelayMatrix &r, Species species, const GroupOrdering &ordering) {
    int n = ordering.degree();
    require_degree(n, kMaxDenseDegree, "rate_matrix");
    if (r.size() != n) {
        throw DomainError("rate_matrix: delay matrix size does not match ordering");
    }
    auto count = static_cast<Eigen::Index>(ordering.size());
    std::vector<double> weight(ordering.size());
    std::vector<Permutation> inverses;
    inverses.reserve(ordering.size());
    for (size_t g = 0; g < ordering.size(); g++) {
        const auto &p = ordering[g];
        double w = overlap_monomial(r.matrix(), p);
        weight[g] = (species == Species::fermion) ? w * p.sign() : w;
        inverses.push_back(p.inverse());
    }
    RateMatrix rm{species, RealMatrix(count, count)};
    for (Eigen::Index i = 0; i < count; i++) {
        for (Eigen::Index j = 0; j < count; j++) {
            size_t rho = ordering.index_of(inverses[static_cast<size_t>(j)] * ordering[static_cast<size_t>(i)]);
            rm.values(i, j) = weight[rho];
        }
    }
    return rm;
}

double rate_direct(const MonomialVector &v, const RateMatrix &rm) {
    if (v.values.size() != rm.values.rows() || rm.values.rows() != rm.values.cols()) {
        throw DomainError("rate_direct: vector and rate matrix sizes differ");
    }
    RealVector re = v.values.real();
    RealVector im = v.values.imag();
    double value = re.dot(rm.values * re) + im.dot(rm.values * im);
    return finalize_rate(value, v.values.squaredNorm(), "rate_direct");
}

double rate_direct_streaming(const ComplexMatrix &a, const DelayMatrix &r, Species species) {
    require_matching(a, r);
    auto n = static_cast<int>(a.rows());
    require_degree(n, kMaxStreamingDegree, "rate_direct_streaming");
    // Sum over rho of w(rho) * sum_g conj(v[g rho]) v[g]; the inner sum is the
    // permanent of B(a, k) = A(a, k) conj(A(a, rho^{-1}(k))).
    std::vector<int> images(static_cast<size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    ComplexMatrix b(n, n);
    double total = 0.0;
    double scale = 0.0;
    do {
        Permutation rho(images);
        double w = overlap_monomial(r.matrix(), rho);
        if (w == 0.0) {
            continue;
        }
        if (species == Species::fermion) {
            w *= rho.sign();
        }
        Permutation inv = rho.inverse();
        for (int row = 0; row < n; row++) {
            for (int k = 0; k < n; k++) {
                b(row, k) = a(row, k) * std::conj(a(row, inv(k)));
            }
        }
        Complex p = permanent(b);
        total += w * p.real();
        if (rho.is_identity()) {
            scale = p.real();
        }
    } while (std::next_permutation(images.begin(), images.end()));
    return finalize_rate(total, scale, "rate_direct_streaming");
}

// ---------------------------------------------------------------------------
// Group tables

namespace {

RealMatrix conjugate_intertwiner(const IrrepMatrixSet &lambda, const IrrepMatrixSet &conj) {
    int s = lambda.dimension();
    for (int a = 0; a < s; a++) {
        for (int b = 0; b < s; b++) {
            RealMatrix m = RealMatrix::Zero(s, s);
            for (size_t h = 0; h < lambda.size(); h++) {
                double sign = lambda.element(h).sign();
                m.noalias() += sign * conj[h].col(a) * lambda[h].col(b).transpose();
            }
            double norm2 = m.squaredNorm();
            if (norm2 > 1e-6) {
                return m / std::sqrt(norm2 / s);
            }
        }
    }
    throw InternalError("no intertwiner between an irrep and its conjugate");
}

}  // namespace

SymmetricGroupTables::SymmetricGroupTables(int n) : ordering_(GroupOrdering::canonical(n)) {
    auto shapes = partitions_of(n);
    for (const auto &shape : shapes) {
        auto set = irrep_matrices(shape, ordering_);
        int dim = set.dimension();
        irreps_.push_back(IrrepData{shape, dim, 0, std::move(set), RealMatrix()});
    }
    for (auto &data : irreps_) {
        data.conjugate_index = index_of(conjugate(data.shape));
    }
    for (auto &data : irreps_) {
        data.to_conjugate = conjugate_intertwiner(data.matrices, irreps_[data.conjugate_index].matrices);
    }
}

const SymmetricGroupTables &SymmetricGroupTables::get(int n) {
    require_degree(n, kMaxDenseDegree, "symmetric group tables");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<SymmetricGroupTables>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto &slot = cache[n];
    if (!slot) {
        slot.reset(new SymmetricGroupTables(n));
    }
    return *slot;
}

size_t SymmetricGroupTables::index_of(const Partition &lambda) const {
    for (size_t i = 0; i < irreps_.size(); i++) {
        if (irreps_[i].shape == lambda) {
            return i;
        }
    }
    throw DomainError("partition " + lambda.to_string() + " is not a partition of " + std::to_string(degree()));
}

GroupTransform build_transform(const SymmetricGroupTables &tables) {
    auto count = static_cast<Eigen::Index>(tables.ordering().size());
    GroupTransform out{tables.degree(), RealMatrix(count, count), {}};
    Eigen::Index row = 0;
    for (const auto &data : tables.irreps()) {
        out.offsets.push_back(row);
        int s = data.dimension;
        double scale = std::sqrt(static_cast<double>(s) / static_cast<double>(count));
        for (int i = 0; i < s; i++) {
            for (int j = 0; j < s; j++) {
                for (Eigen::Index g = 0; g < count; g++) {
                    out.t(row, g) = scale * data.matrices[static_cast<size_t>(g)](i, j);
                }
                row++;
            }
        }
    }
    return out;
}

double BlockTerm::contribution() const {
    double total = 0.0;
    RealMatrix re = vectors.real();
    RealMatrix im = vectors.imag();
    for (Eigen::Index i = 0; i < vectors.rows(); i++) {
        total += re.row(i).dot(block * re.row(i).transpose());
        total += im.row(i).dot(block * im.row(i).transpose());
    }
    return total;
}

namespace {

BlockTerm make_term(const SymmetricGroupTables &tables, size_t index, Species species, const RealMatrix &boson_block,
                    const std::vector<RealMatrix> &all_blocks, ComplexMatrix vectors) {
    const auto &data = tables.irreps()[index];
    if (species == Species::boson) {
        return BlockTerm{data.shape, data.shape, boson_block, std::move(vectors)};
    }
    const auto &q = data.to_conjugate;
    const auto &conj = tables.irreps()[data.conjugate_index];
    ComplexMatrix rotated = vectors * q.transpose().cast<Complex>();
    return BlockTerm{data.shape, conj.shape, all_blocks[data.conjugate_index], std::move(rotated)};
}

}  // namespace

BlockDecomposition block_decompose(const MonomialVector &v, const RateMatrix &rm, const GroupTransform &t,
                                   const SymmetricGroupTables &tables) {
    auto count = t.t.rows();
    if (v.values.size() != count || rm.values.rows() != count || tables.ordering().size() != size_t(count)) {
        throw DomainError("block_decompose: inconsistent sizes");
    }
    ComplexVector tv = t.t.cast<Complex>() * v.values;
    RealMatrix b = t.t * rm.values * t.t.transpose();

    RealMatrix mask = RealMatrix::Ones(count, count);
    std::vector<RealMatrix> raw_blocks;
    std::vector<ComplexMatrix> raw_vectors;
    for (size_t k = 0; k < tables.irreps().size(); k++) {
        int s = tables.irreps()[k].dimension;
        Eigen::Index off = t.offsets[k];
        raw_blocks.push_back(b.block(off, off, s, s));
        ComplexMatrix vecs(s, s);
        for (int i = 0; i < s; i++) {
            vecs.row(i) = tv.segment(off + i * s, s).transpose();
            mask.block(off + i * s, off + i * s, s, s).setZero();
        }
        raw_vectors.push_back(std::move(vecs));
    }

    BlockDecomposition out{rm.species, t.degree, {}, b.cwiseProduct(mask).cwiseAbs().maxCoeff()};
    if (rm.species == Species::boson) {
        for (size_t k = 0; k < raw_blocks.size(); k++) {
            out.terms.push_back(make_term(tables, k, rm.species, raw_blocks[k], raw_blocks, raw_vectors[k]));
        }
        return out;
    }
    // Fermion blocks come out as Q^T K^{lambda*} Q; rotate back to the conjugate block.
    std::vector<RealMatrix> conj_blocks(raw_blocks.size());
    for (size_t k = 0; k < raw_blocks.size(); k++) {
        const auto &data = tables.irreps()[k];
        conj_blocks[data.conjugate_index] = data.to_conjugate * raw_blocks[k] * data.to_conjugate.transpose();
    }
    for (size_t k = 0; k < raw_blocks.size(); k++) {
        out.terms.push_back(make_term(tables, k, rm.species, raw_blocks[k], conj_blocks, raw_vectors[k]));
    }
    return out;
}

BlockDecomposition decompose(const ComplexMatrix &a, const DelayMatrix &r, Species species) {
    require_matching(a, r);
    auto n = static_cast<int>(a.rows());
    const auto &tables = SymmetricGroupTables::get(n);
    const auto &ordering = tables.ordering();
    std::vector<Complex> fa(ordering.size());
    std::vector<double> fr(ordering.size());
    for (size_t g = 0; g < ordering.size(); g++) {
        fa[g] = monomial(a, ordering[g]);
        fr[g] = overlap_monomial(r.matrix(), ordering[g]);
    }
    double group_order = static_cast<double>(ordering.size());

    std::vector<RealMatrix> blocks;
    std::vector<ComplexMatrix> vectors;
    for (const auto &data : tables.irreps()) {
        int s = data.dimension;
        RealMatrix k = RealMatrix::Zero(s, s);
        RealMatrix v_re = RealMatrix::Zero(s, s);
        RealMatrix v_im = RealMatrix::Zero(s, s);
        for (size_t g = 0; g < ordering.size(); g++) {
            const RealMatrix &d = data.matrices[g];
            if (fr[g] != 0.0) {
                k.noalias() += fr[g] * d;
            }
            if (fa[g] != 0.0) {
                v_re.noalias() += fa[g].real() * d;
                v_im.noalias() += fa[g].imag() * d;
            }
        }
        double scale = std::sqrt(s / group_order);
        ComplexMatrix vecs(s, s);
        vecs.real() = scale * v_re;
        vecs.imag() = scale * v_im;
        blocks.push_back(std::move(k));
        vectors.push_back(std::move(vecs));
    }

    BlockDecomposition out{species, n, {}, std::nullopt};
    for (size_t k = 0; k < blocks.size(); k++) {
        out.terms.push_back(make_term(tables, k, species, blocks[k], blocks, std::move(vectors[k])));
    }
    return out;
}

double rate_blocked(const BlockDecomposition &decomp) {
    double total = 0.0;
    double scale = 0.0;
    for (const auto &term : decomp.terms) {
        total += term.contribution();
        scale += term.vectors.squaredNorm();
    }
    return finalize_rate(total, scale, "rate_blocked");
}

bool gamas_vanishes(const Partition &lambda, const Partition &mu) {
    return !dominates(lambda, mu);
}

TruncationReport truncate(const BlockDecomposition &decomp, const Partition &mu) {
    if (mu.size() != decomp.degree) {
        throw DomainError("delay partition size does not match particle count");
    }
    TruncationReport report;
    double scale = 0.0;
    for (const auto &term : decomp.terms) {
        TruncationEntry entry{term.vector_label, term.block_label, dominates(term.block_label, mu),
                              max_abs(term.block), term.contribution()};
        if (entry.kept) {
            report.rate += entry.contribution;
            scale += term.vectors.squaredNorm();
        } else {
            report.dropped_bound += std::abs(entry.contribution);
        }
        report.entries.push_back(std::move(entry));
    }
    report.rate = finalize_rate(report.rate, scale, "rate_truncated");
    return report;
}

double rate_truncated(const BlockDecomposition &decomp, const Partition &mu) {
    return truncate(decomp, mu).rate;
}

uint64_t distinct_block_function_count(int n) {
    uint64_t total = 0;
    for (const auto &lambda : partitions_of(n)) {
        uint64_t s = standard_tableau_count(lambda);
        total += s * (s + 1) / 2;
    }
    return total;
}

double rate_fully_distinguishable(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw DomainError("rate_fully_distinguishable requires a square matrix");
    }
    RealMatrix weights = a.cwiseAbs2();
    return permanent(weights);
}

namespace {

template <typename Matrix>
Matrix drop_row_col(const Matrix &m, int row, int col) {
    auto n = m.rows();
    Matrix out(n - 1, m.cols() - 1);
    for (Eigen::Index i = 0, oi = 0; i < n; i++) {
        if (i == row) {
            continue;
        }
        for (Eigen::Index j = 0, oj = 0; j < m.cols(); j++) {
            if (j == col) {
                continue;
            }
            out(oi, oj++) = m(i, j);
        }
        oi++;
    }
    return out;
}

bool is_isolated(const DelayMatrix &r, int k, double threshold) {
    for (int j = 0; j < r.size(); j++) {
        if (j != k && std::abs(r(k, j)) >= threshold) {
            return false;
        }
    }
    return true;
}

}  // namespace

FactoredProblem reduce_distinguishable_particle(const DelayMatrix &r, int k, double threshold) {
    int n = r.size();
    if (k < 0 || k >= n) {
        throw DomainError("particle index out of range");
    }
    if (n < 2) {
        throw PreconditionError("cannot remove the only particle");
    }
    if (!is_isolated(r, k, threshold)) {
        throw PreconditionError("particle " + std::to_string(k + 1) + " overlaps another particle");
    }
    return FactoredProblem{DelayMatrix(drop_row_col(r.matrix(), k, k)), k, n};
}

double rate_factored(const ComplexMatrix &a, const DelayMatrix &r, Species species, double threshold) {
    require_matching(a, r);
    auto n = static_cast<int>(a.rows());
    if (n == 1) {
        return std::norm(a(0, 0));
    }
    for (int k = 0; k < n; k++) {
        if (!is_isolated(r, k, threshold)) {
            continue;
        }
        auto reduced = reduce_distinguishable_particle(r, k, threshold);
        double total = 0.0;
        for (int j = 0; j < reduced.copies; j++) {
            double weight = std::norm(a(j, k));
            if (weight != 0.0) {
                total += weight * rate_factored(drop_row_col(a, j, k), reduced.reduced, species, threshold);
            }
        }
        return total;
    }
    return rate_direct_streaming(a, r, species);
}

double compute_rate(const ComplexMatrix &a, const DelayMatrix &r, Species species, Engine engine,
                    const std::optional<Partition> &mu) {
    switch (engine) {
        case Engine::direct:
            return rate_direct_streaming(a, r, species);
        case Engine::blocked:
            return rate_blocked(decompose(a, r, species));
        case Engine::truncated:
            if (!mu) {
                throw PreconditionError("the truncated engine needs a delay partition");
            }
            return rate_truncated(decompose(a, r, species), *mu);
    }
    throw InternalError("unknown engine");
}

}  // namespace immrate
