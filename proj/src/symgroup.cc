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

#include "immrate/symgroup.h"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "immrate/errors.h"

namespace immrate {

namespace {

uint64_t factorial_u64(int n) {
    uint64_t result = 1;
    for (int k = 2; k <= n; k++) {
        result *= static_cast<uint64_t>(k);
    }
    return result;
}

void check_degree(int n) {
    if (n < 1 || n > kMaxGroupDegree) {
        throw SizeLimitError(
            "symmetric group degree " + std::to_string(n) + " outside [1, " + std::to_string(kMaxGroupDegree) + "]");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 0 || static_cast<size_t>(v) >= images_.size() || seen[static_cast<size_t>(v)]) {
            throw DomainError("images do not form a permutation");
        }
        seen[static_cast<size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> images(static_cast<size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images));
}

Permutation Permutation::from_one_line(std::span<const int> one_based) {
    std::vector<int> images;
    images.reserve(one_based.size());
    for (int v : one_based) {
        images.push_back(v - 1);
    }
    return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>> &cycles) {
    std::vector<int> images(static_cast<size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (const auto &cycle : cycles) {
        for (size_t k = 0; k < cycle.size(); k++) {
            int from = cycle[k] - 1;
            int to = cycle[(k + 1) % cycle.size()] - 1;
            if (from < 0 || from >= n || to < 0 || to >= n || used[static_cast<size_t>(from)]) {
                throw DomainError("cycles are not disjoint labels in 1..n");
            }
            used[static_cast<size_t>(from)] = true;
            images[static_cast<size_t>(from)] = to;
        }
    }
    return Permutation(std::move(images));
}

Permutation Permutation::adjacent_transposition(int n, int k) {
    if (k < 0 || k + 1 >= n) {
        throw DomainError("adjacent transposition index out of range");
    }
    auto p = identity(n);
    std::swap(p.images_[static_cast<size_t>(k)], p.images_[static_cast<size_t>(k + 1)]);
    return p;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (size_t i = 0; i < images_.size(); i++) {
        inv[static_cast<size_t>(images_[i])] = static_cast<int>(i);
    }
    return Permutation(std::move(inv));
}

int Permutation::sign() const {
    int sign = 1;
    for (int len : cycle_type()) {
        if (len % 2 == 0) {
            sign = -sign;
        }
    }
    return sign;
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < images_.size(); i++) {
        if (images_[i] != static_cast<int>(i)) {
            return false;
        }
    }
    return true;
}

std::vector<int> Permutation::cycle_type() const {
    std::vector<int> lengths;
    std::vector<bool> seen(images_.size(), false);
    for (size_t start = 0; start < images_.size(); start++) {
        if (seen[start]) {
            continue;
        }
        int len = 0;
        size_t k = start;
        while (!seen[k]) {
            seen[k] = true;
            k = static_cast<size_t>(images_[k]);
            len++;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    return lengths;
}

std::string Permutation::to_string() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (size_t start = 0; start < images_.size(); start++) {
        if (seen[start] || images_[start] == static_cast<int>(start)) {
            continue;
        }
        out += '(';
        size_t k = start;
        bool first = true;
        while (!seen[k]) {
            seen[k] = true;
            if (!first && images_.size() > 9) {
                out += ' ';
            }
            out += std::to_string(k + 1);
            first = false;
            k = static_cast<size_t>(images_[k]);
        }
        out += ')';
    }
    return out.empty() ? "e" : out;
}

Permutation operator*(const Permutation &p, const Permutation &q) {
    if (p.degree() != q.degree()) {
        throw DomainError("composing permutations of different degree");
    }
    std::vector<int> images(static_cast<size_t>(p.degree()));
    for (int i = 0; i < p.degree(); i++) {
        images[static_cast<size_t>(i)] = p(q(i));
    }
    return Permutation(std::move(images));
}

uint64_t lex_rank(const Permutation &p) {
    int n = p.degree();
    uint64_t rank = 0;
    for (int i = 0; i < n; i++) {
        int smaller_later = 0;
        for (int j = i + 1; j < n; j++) {
            if (p(j) < p(i)) {
                smaller_later++;
            }
        }
        rank = rank * static_cast<uint64_t>(n - i) + static_cast<uint64_t>(smaller_later);
    }
    return rank;
}

Permutation lex_unrank(int n, uint64_t rank) {
    std::vector<int> digits(static_cast<size_t>(n));
    for (int i = n - 1; i >= 0; i--) {
        uint64_t base = static_cast<uint64_t>(n - i);
        digits[static_cast<size_t>(i)] = static_cast<int>(rank % base);
        rank /= base;
    }
    std::vector<int> pool(static_cast<size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> images;
    images.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) {
        auto it = pool.begin() + digits[static_cast<size_t>(i)];
        images.push_back(*it);
        pool.erase(it);
    }
    return Permutation(std::move(images));
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (size_t i = 0; i < parts_.size(); i++) {
        if (parts_[i] < 1 || (i > 0 && parts_[i] > parts_[i - 1])) {
            throw DomainError("partition parts must be positive and weakly decreasing");
        }
        size_ += parts_[i];
    }
}

std::string Partition::to_string() const {
    std::ostringstream out;
    out << '(';
    for (size_t i = 0; i < parts_.size(); i++) {
        if (i > 0) {
            out << ',';
        }
        out << parts_[i];
    }
    out << ')';
    return out.str();
}

Partition conjugate(const Partition &lambda) {
    std::vector<int> parts;
    for (int col = 0; col < lambda.width(); col++) {
        int height = 0;
        while (lambda[height] > col) {
            height++;
        }
        parts.push_back(height);
    }
    return Partition(std::move(parts));
}

std::vector<Partition> partitions_of(int n) {
    if (n < 1) {
        throw DomainError("partitions_of requires n >= 1");
    }
    std::vector<Partition> out;
    // Standard successor rule for reverse-lexicographic enumeration.
    std::vector<int> a{n};
    while (true) {
        out.emplace_back(a);
        int remainder = 0;
        while (!a.empty() && a.back() == 1) {
            remainder++;
            a.pop_back();
        }
        if (a.empty()) {
            break;
        }
        int part = --a.back();
        remainder++;
        while (remainder > part) {
            a.push_back(part);
            remainder -= part;
        }
        a.push_back(remainder);
    }
    return out;
}

bool dominates(const Partition &lambda, const Partition &mu) {
    if (lambda.size() != mu.size()) {
        throw DomainError("dominance compares partitions of the same integer");
    }
    int len = std::max(lambda.num_parts(), mu.num_parts());
    int lambda_sum = 0;
    int mu_sum = 0;
    for (int i = 0; i < len; i++) {
        lambda_sum += lambda[i];
        mu_sum += mu[i];
        if (lambda_sum < mu_sum) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Characters (Murnaghan-Nakayama on beta-sets)

namespace {

long long mn_recurse(std::vector<int> beta, std::span<const int> rho,
                     std::map<std::pair<std::vector<int>, std::vector<int>>, long long> &memo) {
    if (rho.empty()) {
        return 1;
    }
    auto key = std::make_pair(beta, std::vector<int>(rho.begin(), rho.end()));
    if (auto it = memo.find(key); it != memo.end()) {
        return it->second;
    }
    int r = rho.front();
    auto rest = rho.subspan(1);
    long long total = 0;
    for (size_t i = 0; i < beta.size(); i++) {
        int target = beta[i] - r;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) {
            continue;
        }
        int between = 0;
        for (int b : beta) {
            if (b > target && b < beta[i]) {
                between++;
            }
        }
        std::vector<int> next = beta;
        next[i] = target;
        std::sort(next.begin(), next.end(), std::greater<>());
        long long term = mn_recurse(std::move(next), rest, memo);
        total += (between % 2 == 0) ? term : -term;
    }
    memo.emplace(std::move(key), total);
    return total;
}

std::mutex character_mutex;
std::map<std::pair<std::vector<int>, std::vector<int>>, long long> character_memo;

}  // namespace

long long character(const Partition &lambda, std::span<const int> cycle_type) {
    int total = std::accumulate(cycle_type.begin(), cycle_type.end(), 0);
    if (total != lambda.size()) {
        throw DomainError("cycle type and partition sizes differ");
    }
    std::vector<int> rho(cycle_type.begin(), cycle_type.end());
    std::sort(rho.begin(), rho.end(), std::greater<>());
    int k = lambda.num_parts();
    std::vector<int> beta(static_cast<size_t>(k));
    for (int i = 0; i < k; i++) {
        beta[static_cast<size_t>(i)] = lambda[i] + (k - 1 - i);
    }
    std::lock_guard<std::mutex> lock(character_mutex);
    return mn_recurse(std::move(beta), rho, character_memo);
}

long long character(const Partition &lambda, const Permutation &sigma) {
    if (lambda.size() != sigma.degree()) {
        throw DomainError("character: partition and permutation sizes differ");
    }
    auto type = sigma.cycle_type();
    return character(lambda, std::span<const int>(type));
}

// ---------------------------------------------------------------------------
// Tableaux counts

uint64_t standard_tableau_count(const Partition &lambda) {
    if (lambda.size() > 20) {
        throw SizeLimitError("standard_tableau_count supports n <= 20");
    }
    auto conj = conjugate(lambda);
    uint64_t hooks = 1;
    for (int i = 0; i < lambda.num_parts(); i++) {
        for (int j = 0; j < lambda[i]; j++) {
            hooks *= static_cast<uint64_t>((lambda[i] - j - 1) + (conj[j] - i - 1) + 1);
        }
    }
    return factorial_u64(lambda.size()) / hooks;
}

uint64_t gl_dimension(const Partition &lambda, int n) {
    if (lambda.num_parts() > n) {
        return 0;
    }
    using boost::multiprecision::cpp_int;
    auto conj = conjugate(lambda);
    cpp_int numerator = 1;
    cpp_int denominator = 1;
    for (int i = 0; i < lambda.num_parts(); i++) {
        for (int j = 0; j < lambda[i]; j++) {
            numerator *= (n + j - i);
            denominator *= (lambda[i] - j - 1) + (conj[j] - i - 1) + 1;
        }
    }
    cpp_int d = numerator / denominator;
    if (d > std::numeric_limits<uint64_t>::max()) {
        throw SizeLimitError("gl_dimension overflows 64 bits");
    }
    return static_cast<uint64_t>(d);
}

std::vector<std::vector<int>> standard_tableaux(const Partition &lambda) {
    std::vector<std::vector<int>> out;
    std::vector<int> row_len(static_cast<size_t>(lambda.num_parts()), 0);
    std::vector<int> rows;
    auto place = [&](auto &&self) -> void {
        if (static_cast<int>(rows.size()) == lambda.size()) {
            out.push_back(rows);
            return;
        }
        for (int r = 0; r < lambda.num_parts(); r++) {
            auto ur = static_cast<size_t>(r);
            if (row_len[ur] < lambda[r] && (r == 0 || row_len[ur - 1] > row_len[ur])) {
                row_len[ur]++;
                rows.push_back(r);
                self(self);
                rows.pop_back();
                row_len[ur]--;
            }
        }
    };
    place(place);
    return out;
}

// ---------------------------------------------------------------------------
// Orderings

GroupOrdering GroupOrdering::canonical(int n) {
    check_degree(n);
    std::vector<Permutation> elements;
    uint64_t count = factorial_u64(n);
    elements.reserve(count);
    std::vector<int> images(static_cast<size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    do {
        elements.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return from_elements(std::move(elements));
}

GroupOrdering GroupOrdering::reference_s3() {
    return from_elements({
        Permutation::identity(3),
        Permutation::from_cycles(3, {{1, 2}}),
        Permutation::from_cycles(3, {{1, 3}}),
        Permutation::from_cycles(3, {{2, 3}}),
        Permutation::from_cycles(3, {{1, 2, 3}}),
        Permutation::from_cycles(3, {{1, 3, 2}}),
    });
}

GroupOrdering GroupOrdering::from_elements(std::vector<Permutation> elements) {
    if (elements.empty()) {
        throw DomainError("empty group ordering");
    }
    int n = elements.front().degree();
    check_degree(n);
    uint64_t count = factorial_u64(n);
    if (elements.size() != count) {
        throw DomainError("ordering must list all n! permutations");
    }
    GroupOrdering ordering;
    ordering.degree_ = n;
    ordering.index_by_rank_.assign(count, count);
    for (size_t i = 0; i < elements.size(); i++) {
        if (elements[i].degree() != n) {
            throw DomainError("ordering mixes permutation degrees");
        }
        uint64_t rank = lex_rank(elements[i]);
        if (ordering.index_by_rank_[rank] != count) {
            throw DomainError("ordering lists a permutation twice");
        }
        ordering.index_by_rank_[rank] = i;
    }
    if (!elements.front().is_identity()) {
        throw DomainError("ordering must start with the identity");
    }
    ordering.elements_ = std::move(elements);
    return ordering;
}

size_t GroupOrdering::index_of(const Permutation &p) const {
    if (p.degree() != degree_) {
        throw DomainError("permutation degree does not match ordering");
    }
    return index_by_rank_[lex_rank(p)];
}

GroupOrdering all_permutations(int n) {
    return GroupOrdering::canonical(n);
}

// ---------------------------------------------------------------------------
// Young's orthogonal form

namespace {

struct TableauCells {
    std::vector<std::vector<int>> row_of;  // per tableau, row of each letter
    std::vector<std::vector<int>> col_of;
    std::map<std::vector<int>, size_t> index;
};

TableauCells tableau_cells(const Partition &lambda) {
    TableauCells cells;
    cells.row_of = standard_tableaux(lambda);
    for (size_t t = 0; t < cells.row_of.size(); t++) {
        std::vector<int> row_len(static_cast<size_t>(lambda.num_parts()), 0);
        std::vector<int> cols;
        for (int r : cells.row_of[t]) {
            cols.push_back(row_len[static_cast<size_t>(r)]++);
        }
        cells.col_of.push_back(std::move(cols));
        cells.index.emplace(cells.row_of[t], t);
    }
    return cells;
}

RealMatrix generator_from_cells(const TableauCells &cells, int k) {
    auto dim = static_cast<Eigen::Index>(cells.row_of.size());
    RealMatrix g = RealMatrix::Zero(dim, dim);
    auto a = static_cast<size_t>(k);
    auto b = static_cast<size_t>(k + 1);
    for (Eigen::Index t = 0; t < dim; t++) {
        const auto &rows = cells.row_of[static_cast<size_t>(t)];
        const auto &cols = cells.col_of[static_cast<size_t>(t)];
        // Axial distance from letter k+1 to letter k+2 (1-based letters).
        int axial = (cols[b] - rows[b]) - (cols[a] - rows[a]);
        g(t, t) = 1.0 / axial;
        if (axial != 1 && axial != -1) {
            auto swapped = rows;
            std::swap(swapped[a], swapped[b]);
            auto partner = static_cast<Eigen::Index>(cells.index.at(swapped));
            g(partner, t) = std::sqrt(1.0 - 1.0 / (static_cast<double>(axial) * axial));
        }
    }
    return g;
}

}  // namespace

RealMatrix young_orthogonal_generator(const Partition &lambda, int k) {
    if (k < 0 || k + 1 >= lambda.size()) {
        throw DomainError("generator index out of range");
    }
    return generator_from_cells(tableau_cells(lambda), k);
}

IrrepMatrixSet::IrrepMatrixSet(Partition shape, const GroupOrdering &ordering, std::vector<RealMatrix> matrices)
    : shape_(std::move(shape)), dimension_(0), matrices_(std::move(matrices)), elements_(ordering.elements().begin(), ordering.elements().end()) {
    if (matrices_.size() != ordering.size()) {
        throw DomainError("one irrep matrix per group element is required");
    }
    dimension_ = static_cast<int>(matrices_.front().rows());
    index_by_rank_.resize(ordering.size());
    for (size_t i = 0; i < ordering.size(); i++) {
        index_by_rank_[lex_rank(ordering[i])] = i;
    }
}

const RealMatrix &IrrepMatrixSet::at(const Permutation &sigma) const {
    return matrices_[index_by_rank_[lex_rank(sigma)]];
}

IrrepMatrixSet irrep_matrices(const Partition &lambda, const GroupOrdering &ordering) {
    int n = ordering.degree();
    if (lambda.size() != n) {
        throw DomainError("irrep shape does not match ordering degree");
    }
    auto cells = tableau_cells(lambda);
    auto dim = static_cast<Eigen::Index>(cells.row_of.size());
    std::vector<RealMatrix> generators;
    for (int k = 0; k + 1 < n; k++) {
        generators.push_back(generator_from_cells(cells, k));
    }

    // Breadth-first walk of the Cayley graph: D(s_k * g) = D(s_k) D(g).
    std::vector<RealMatrix> by_rank(ordering.size());
    std::vector<bool> done(ordering.size(), false);
    std::deque<Permutation> queue;
    auto e = Permutation::identity(n);
    by_rank[0] = RealMatrix::Identity(dim, dim);
    done[0] = true;
    queue.push_back(e);
    while (!queue.empty()) {
        Permutation g = std::move(queue.front());
        queue.pop_front();
        uint64_t g_rank = lex_rank(g);
        for (int k = 0; k + 1 < n; k++) {
            Permutation next = Permutation::adjacent_transposition(n, k) * g;
            uint64_t rank = lex_rank(next);
            if (done[rank]) {
                continue;
            }
            by_rank[rank] = generators[static_cast<size_t>(k)] * by_rank[g_rank];
            done[rank] = true;
            queue.push_back(std::move(next));
        }
    }

    std::vector<RealMatrix> matrices;
    matrices.reserve(ordering.size());
    for (const auto &p : ordering.elements()) {
        matrices.push_back(std::move(by_rank[lex_rank(p)]));
    }
    return IrrepMatrixSet(lambda, ordering, std::move(matrices));
}

}  // namespace immrate
