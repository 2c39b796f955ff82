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

#ifndef IMMRATE_SYMGROUP_H
#define IMMRATE_SYMGROUP_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "immrate/types.h"

namespace immrate {

/// Largest n for which the full group is enumerated.
inline constexpr int kMaxGroupDegree = 10;

/// Element of the symmetric group in one-line notation.
///
/// Images are stored 0-based; `from_one_line` and `from_cycles` accept the
/// conventional 1-based notation. Composition is right-to-left:
/// (p * q)(i) = p(q(i)).
class Permutation {
   public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int n);
    static Permutation from_one_line(std::span<const int> one_based);
    /// Builds a permutation from disjoint cycles, e.g. {{1, 2, 3}} for (123): 1 -> 2 -> 3 -> 1.
    static Permutation from_cycles(int n, const std::vector<std::vector<int>> &cycles);
    /// The adjacent transposition swapping k and k + 1 (0-based).
    static Permutation adjacent_transposition(int n, int k);

    int degree() const {
        return static_cast<int>(images_.size());
    }
    int operator()(int i) const {
        return images_[static_cast<size_t>(i)];
    }
    const std::vector<int> &images() const {
        return images_;
    }

    Permutation inverse() const;
    int sign() const;
    bool is_identity() const;
    /// Cycle lengths sorted in decreasing order (fixed points included).
    std::vector<int> cycle_type() const;
    /// Cycle notation with 1-based labels, "e" for the identity.
    std::string to_string() const;

    bool operator==(const Permutation &) const = default;

   private:
    std::vector<int> images_;
};

Permutation operator*(const Permutation &p, const Permutation &q);

/// Rank of a permutation among all permutations of its degree in lexicographic
/// one-line order.
uint64_t lex_rank(const Permutation &p);
Permutation lex_unrank(int n, uint64_t rank);

/// Integer partition, parts weakly decreasing and positive.
class Partition {
   public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    int size() const {
        return size_;
    }
    int width() const {
        return parts_.empty() ? 0 : parts_.front();
    }
    int num_parts() const {
        return static_cast<int>(parts_.size());
    }
    /// Part i (0-based), zero beyond the last part.
    int operator[](int i) const {
        return i < num_parts() ? parts_[static_cast<size_t>(i)] : 0;
    }
    const std::vector<int> &parts() const {
        return parts_;
    }
    std::string to_string() const;

    bool operator==(const Partition &) const = default;
    auto operator<=>(const Partition &) const = default;

   private:
    std::vector<int> parts_;
    int size_ = 0;
};

Partition conjugate(const Partition &lambda);

/// All partitions of n in reverse-lexicographic order: (n), (n-1,1), ..., (1^n).
std::vector<Partition> partitions_of(int n);

/// True iff every prefix sum of lambda is at least the matching prefix sum of mu,
/// i.e. mu is dominated by lambda. Throws DomainError if the sizes differ.
bool dominates(const Partition &lambda, const Partition &mu);

/// Irreducible character chi_lambda(sigma) by the Murnaghan-Nakayama rule.
long long character(const Partition &lambda, const Permutation &sigma);
long long character(const Partition &lambda, std::span<const int> cycle_type);

/// s_lambda, the number of standard Young tableaux (hook-length formula).
uint64_t standard_tableau_count(const Partition &lambda);

/// d_lambda, the dimension of the GL_n irrep lambda (hook-content formula).
/// Zero when lambda has more than n parts.
uint64_t gl_dimension(const Partition &lambda, int n);

/// Standard tableaux of shape lambda. Each tableau is encoded by the row of each
/// letter 1..n; tableaux are listed in lexicographic order of that encoding.
std::vector<std::vector<int>> standard_tableaux(const Partition &lambda);

/// A fixed enumeration of the symmetric group with constant-time lookup.
class GroupOrdering {
   public:
    /// Identity first, then lexicographic one-line order.
    static GroupOrdering canonical(int n);
    /// {e, (12), (13), (23), (123), (132)}.
    static GroupOrdering reference_s3();
    /// Any enumeration of all n! permutations.
    static GroupOrdering from_elements(std::vector<Permutation> elements);

    int degree() const {
        return degree_;
    }
    size_t size() const {
        return elements_.size();
    }
    const Permutation &operator[](size_t index) const {
        return elements_[index];
    }
    std::span<const Permutation> elements() const {
        return elements_;
    }
    size_t index_of(const Permutation &p) const;

   private:
    int degree_ = 0;
    std::vector<Permutation> elements_;
    std::vector<size_t> index_by_rank_;
};

/// all_permutations(n): the canonical ordering, guarded to 1 <= n <= kMaxGroupDegree.
GroupOrdering all_permutations(int n);

/// Young's orthogonal form of an irrep, one s_lambda x s_lambda matrix per group
/// element in the order of the ordering it was built from.
class IrrepMatrixSet {
   public:
    IrrepMatrixSet(Partition shape, const GroupOrdering &ordering, std::vector<RealMatrix> matrices);

    const Partition &shape() const {
        return shape_;
    }
    int dimension() const {
        return dimension_;
    }
    const RealMatrix &operator[](size_t ordering_index) const {
        return matrices_[ordering_index];
    }
    const RealMatrix &at(const Permutation &sigma) const;
    size_t size() const {
        return matrices_.size();
    }
    /// Permutation whose matrix is at `ordering_index`.
    const Permutation &element(size_t ordering_index) const {
        return elements_[ordering_index];
    }

   private:
    Partition shape_;
    int dimension_;
    std::vector<RealMatrix> matrices_;
    std::vector<Permutation> elements_;
    std::vector<size_t> index_by_rank_;
};

/// The orthogonal matrix of an adjacent transposition s_k in Young's orthogonal form.
RealMatrix young_orthogonal_generator(const Partition &lambda, int k);

IrrepMatrixSet irrep_matrices(const Partition &lambda, const GroupOrdering &ordering);

}  // namespace immrate

#endif
