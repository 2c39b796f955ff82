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

#ifndef IMMRATE_DELAYS_H
#define IMMRATE_DELAYS_H

#include <span>
#include <vector>

#include "json.hpp"

#include "immrate/symgroup.h"
#include "immrate/types.h"

namespace immrate {

/// Continuous arrival times plus the effective spectral width and the bin grid.
struct ArrivalSpec {
    std::vector<double> taus;
    double delta_omega = 1.0;
    double window = 1.0;
    int bins = 2;

    int size() const {
        return static_cast<int>(taus.size());
    }
    /// Throws DomainError on a non-positive width or window, b < 2, or a time outside [0, window).
    void validate() const;
};

/// Effective width from the source and detector widths: 1/dw^2 = 1/dW^2 + 1/dw_src^2.
double combine_widths(double source_width, double detector_width);

/// Symmetric matrix of pairwise overlaps with unit diagonal.
class DelayMatrix {
   public:
    DelayMatrix() = default;
    /// Throws DomainError unless r is square, symmetric and has unit diagonal.
    explicit DelayMatrix(RealMatrix r);

    int size() const {
        return static_cast<int>(r_.rows());
    }
    const RealMatrix &matrix() const {
        return r_;
    }
    double operator()(int i, int j) const {
        return r_(i, j);
    }

   private:
    RealMatrix r_;
};

/// r_ij = exp(-dw^2 (tau_i - tau_j)^2 / 2).
DelayMatrix delay_matrix(std::span<const double> taus, double delta_omega);
DelayMatrix delay_matrix(const ArrivalSpec &spec);

struct DelayPartition {
    Partition shape;
    /// occupancy[i] is the number of bins holding exactly i particles, i = 0..n.
    std::vector<int> occupancy;
    int bins = 0;
};

/// Bin tallies sorted into a partition, from 0-based bin labels.
DelayPartition delay_partition(std::span<const int> bin_of, int bins);

struct Discretization {
    std::vector<int> bin_of;
    DelayPartition partition;
};

/// Particle at time t goes to bin floor(t b / window).
Discretization discretize(const ArrivalSpec &spec);

/// Bin centres (c + 1/2) window / b.
std::vector<double> snapped_times(std::span<const int> bin_of, const ArrivalSpec &spec);
DelayMatrix snapped_delay_matrix(std::span<const int> bin_of, const ArrivalSpec &spec);

/// Counts b_0..b_n of bins holding i particles. Throws DomainError if mu has more parts than bins.
std::vector<int> occupancy(const Partition &mu, int bins);

nlohmann::json arrival_spec_to_json(const ArrivalSpec &spec);
ArrivalSpec arrival_spec_from_json(const nlohmann::json &j);

}  // namespace immrate

#endif
