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

#ifndef IMMRATE_RATES_H
#define IMMRATE_RATES_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "immrate/delays.h"
#include "immrate/interferometer.h"
#include "immrate/symgroup.h"
#include "immrate/types.h"

namespace immrate {

/// Dense n! x n! matrices and irrep tables are built up to this degree.
inline constexpr int kMaxDenseDegree = 7;
/// The streaming direct sum runs up to this degree.
inline constexpr int kMaxStreamingDegree = 8;
/// Rates below zero by less than this (times the scale of v) are clamped.
inline constexpr double kNegativeRateTolerance = 1e-10;
/// Overlaps below this are treated as exactly zero when factoring out particles.
inline constexpr double kDistinguishableThreshold = 1e-12;

enum class Engine { direct, blocked, truncated };
std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view text);

/// Product r(rho(1),1) ... r(rho(n),n).
double overlap_monomial(const RealMatrix &r, const Permutation &rho);

struct RateMatrix {
    Species species = Species::boson;
    RealMatrix values;
};

/// Entry (i, j) is the overlap monomial of g_j^{-1} g_i, times sgn(g_i g_j) for fermions.
RateMatrix rate_matrix(const DelayMatrix &r, Species species, const GroupOrdering &ordering);

/// v^dagger R v.
double rate_direct(const MonomialVector &v, const RateMatrix &rm);

/// The same quadratic form evaluated without materialising R (n <= 8).
double rate_direct_streaming(const ComplexMatrix &a, const DelayMatrix &r, Species species);

/// One irrep of the group together with the data needed to pair it with its conjugate.
struct IrrepData {
    Partition shape;
    int dimension = 0;
    size_t conjugate_index = 0;
    IrrepMatrixSet matrices;
    /// Orthogonal Q with D^{lambda*}(h) = sgn(h) Q D^{lambda}(h) Q^T.
    RealMatrix to_conjugate;
};

/// Canonical ordering and the orthogonal irreps of S_n, built once per n and shared.
class SymmetricGroupTables {
   public:
    static const SymmetricGroupTables &get(int n);

    int degree() const {
        return ordering_.degree();
    }
    const GroupOrdering &ordering() const {
        return ordering_;
    }
    const std::vector<IrrepData> &irreps() const {
        return irreps_;
    }
    size_t index_of(const Partition &lambda) const;

   private:
    explicit SymmetricGroupTables(int n);

    GroupOrdering ordering_;
    std::vector<IrrepData> irreps_;
};

/// Orthogonal transform whose rows are sqrt(s/n!) D^lambda_ij(g); partitions in
/// reverse-lexicographic order, (i, j) row-major within each.
struct GroupTransform {
    int degree = 0;
    RealMatrix t;
    /// First row of each partition's band, in the same order as partitions_of(n).
    std::vector<Eigen::Index> offsets;
};

GroupTransform build_transform(const SymmetricGroupTables &tables);

/// One summand of the blocked rate: sum_i vectors.row(i)^* block vectors.row(i)^T.
struct BlockTerm {
    Partition vector_label;
    Partition block_label;
    RealMatrix block;
    /// Row i is the projected vector of copy i.
    ComplexMatrix vectors;

    double contribution() const;
};

struct BlockDecomposition {
    Species species = Species::boson;
    int degree = 0;
    std::vector<BlockTerm> terms;
    /// Largest entry of T R T^T outside the diagonal blocks (dense route only).
    std::optional<double> off_block_residual;
};

/// Dense route: transforms v and R with T and reads the blocks off T R T^T.
BlockDecomposition block_decompose(const MonomialVector &v, const RateMatrix &rm, const GroupTransform &t,
                                   const SymmetricGroupTables &tables);

/// Direct route: blocks are D-functions of r, vectors are scaled D-functions of A.
BlockDecomposition decompose(const ComplexMatrix &a, const DelayMatrix &r, Species species);

double rate_blocked(const BlockDecomposition &decomp);

struct TruncationEntry {
    Partition vector_label;
    Partition block_label;
    bool kept = false;
    double block_magnitude = 0.0;
    double contribution = 0.0;
};

struct TruncationReport {
    double rate = 0.0;
    /// Sum of |contribution| over dropped terms.
    double dropped_bound = 0.0;
    std::vector<TruncationEntry> entries;
};

/// Keeps only terms whose block label dominates mu.
TruncationReport truncate(const BlockDecomposition &decomp, const Partition &mu);
double rate_truncated(const BlockDecomposition &decomp, const Partition &mu);

/// True iff imm^lambda of a Gram matrix with basis multiplicities mu vanishes.
bool gamas_vanishes(const Partition &lambda, const Partition &mu);

/// Number of distinct block entries up to symmetry: sum over lambda of s(s+1)/2.
uint64_t distinct_block_function_count(int n);

/// per(|A_ij|^2).
double rate_fully_distinguishable(const ComplexMatrix &a);

struct FactoredProblem {
    DelayMatrix reduced;
    int removed = 0;
    /// Number of (n-1)-particle copies, one per detector the removed particle can reach.
    int copies = 0;
};

/// Drops particle k, whose overlaps with all others are below the threshold.
FactoredProblem reduce_distinguishable_particle(const DelayMatrix &r, int k,
                                                double threshold = kDistinguishableThreshold);

/// Peels off fully distinguishable particles one at a time and evaluates the
/// remaining problem directly.
double rate_factored(const ComplexMatrix &a, const DelayMatrix &r, Species species,
                     double threshold = kDistinguishableThreshold);

/// Convenience entry point. `mu` is required for the truncated engine.
double compute_rate(const ComplexMatrix &a, const DelayMatrix &r, Species species, Engine engine,
                    const std::optional<Partition> &mu = std::nullopt);

}  // namespace immrate

#endif
