// Copyright 2026 The entgain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// \file entanglement.hpp
/// Negativity-based entanglement quantifiers and the separability classifiers
/// used by the rest of the library.

#include "entgain/qstate.hpp"

#include <cmath>
#include <stdexcept>

namespace entgain {

/// Sum of moduli of the negative eigenvalues of a partial transpose.
/// Eigenvalues within 1e-12 of zero are clamped before classification.
inline double negative_part(const RealVector& spectrum) {
  double sum = 0.0;
  for (double lambda : spectrum) {
    if (lambda < -tol::kZero) sum -= lambda;
  }
  return sum;
}

inline double negativity(const Matrix& rho, BipartiteDims dims) {
  return negative_part(hermitian_eigenvalues(partial_transpose(rho, dims)));
}

/// N(rho) = sum |negative eigenvalues of rho^Gamma| = (||rho^Gamma||_1 - 1) / 2.
inline double negativity(const DensityMatrix& rho) { return negativity(rho.matrix(), rho.dims()); }

/// Negativity of |phi><phi| from its Schmidt coefficients:
/// ((sum_i c_i)^2 - 1) / 2.
inline double pure_negativity(const Ket& phi) {
  const double s = schmidt(phi).coefficients.sum();
  return std::max(0.0, 0.5 * (s * s - 1.0));
}

/// ln(2 N + 1) = ln ||rho^Gamma||_1.
inline double log_negativity(const DensityMatrix& rho) {
  return std::log(2.0 * negativity(rho) + 1.0);
}

/// True iff the smallest eigenvalue of rho^Gamma is at least -tol.
inline bool is_ppt(const DensityMatrix& rho, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("is_ppt: tolerance must be nonnegative");
  return hermitian_eigenvalues(partial_transpose(rho))[0] >= -tol;
}

/// Two-qubit absolute separability: with eigenvalues l1 >= l2 >= l3 >= l4,
/// the state stays separable under every global unitary iff
/// l3 + 2 sqrt(l2 l4) - l1 >= 0.
inline bool absolutely_separable_2q(const DensityMatrix& rho) {
  if (rho.dims() != BipartiteDims{2, 2}) {
    throw std::invalid_argument("absolute separability criterion needs two qubits, got " +
                                to_string(rho.dims()));
  }
  const RealVector ascending = rho.eigenvalues();
  const double l1 = ascending[3];
  const double l2 = std::max(ascending[2], 0.0);
  const double l3 = ascending[1];
  const double l4 = std::max(ascending[0], 0.0);
  return l3 + 2.0 * std::sqrt(l2 * l4) - l1 >= -tol::kZero;
}

}  // namespace entgain
