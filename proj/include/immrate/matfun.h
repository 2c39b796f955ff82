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

#ifndef IMMRATE_MATFUN_H
#define IMMRATE_MATFUN_H

#include "immrate/symgroup.h"
#include "immrate/types.h"

namespace immrate {

inline constexpr int kMaxPermanentSize = 20;

Complex determinant(const ComplexMatrix &m);

/// Ryser's formula with Gray-code ordering of the column subsets.
Complex permanent(const ComplexMatrix &m);
double permanent(const RealMatrix &m);

/// Character-weighted sum over all n! permutations. Reference evaluator.
Complex immanant(const Partition &lambda, const ComplexMatrix &m);

/// Row i of the result is row sigma(i) of m.
ComplexMatrix permute_rows(const Permutation &sigma, const ComplexMatrix &m);

Complex permuted_immanant(const Partition &lambda, const Permutation &sigma, const ComplexMatrix &m);

/// Product M_{rho(1),1} ... M_{rho(n),n}.
Complex monomial(const ComplexMatrix &m, const Permutation &rho);

struct DFunctionBlock {
    Partition shape;
    ComplexMatrix values;
};

/// Recovers the block from permuted immanants by least squares over all n!
/// row permutations.
DFunctionBlock dfunction_block(const Partition &lambda, const ComplexMatrix &m, const IrrepMatrixSet &irreps);

/// The same block as a direct group sum: sum over rho of monomial(m, rho) D(rho).
DFunctionBlock dfunction_direct(const ComplexMatrix &m, const IrrepMatrixSet &irreps);

}  // namespace immrate

#endif
