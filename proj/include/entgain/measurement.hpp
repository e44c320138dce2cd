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

/// \file measurement.hpp
/// Non-selective von Neumann measurements. A ProjectiveBasis holds D = d1*d2
/// orthonormal kets |psi_j>; measuring without reading the outcome maps
///
///     rho -> sum_j <psi_j|rho|psi_j> |psi_j><psi_j|.

#include "entgain/entanglement.hpp"
#include "entgain/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entgain {

class ProjectiveBasis {
 public:
  /// Columns of \p states are the basis kets. Rejects a Gram matrix further
  /// than 1e-10 from the identity.
  ProjectiveBasis(BipartiteDims dims, Matrix states) : dims_(dims), states_(std::move(states)) {
    dims_.validate();
    const int n = dims_.total();
    if (states_.rows() != n || states_.cols() != n) {
      throw std::invalid_argument("projective basis needs " + std::to_string(n) + " kets of size " +
                                  std::to_string(n) + " for dims " + to_string(dims_));
    }
    const double defect = (states_.adjoint() * states_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!(defect <= tol::kState)) {
      throw std::invalid_argument("basis is not orthonormal (Gram defect " +
                                  std::to_string(defect) + ")");
    }
  }

  explicit ProjectiveBasis(const std::vector<Ket>& kets)
      : ProjectiveBasis(kets.empty() ? BipartiteDims{} : kets.front().dims(), stack(kets)) {}

  /// Skips the orthonormality check.
  static ProjectiveBasis unchecked(BipartiteDims dims, Matrix states) {
    ProjectiveBasis basis;
    basis.dims_ = dims;
    basis.states_ = std::move(states);
    return basis;
  }

  BipartiteDims dims() const { return dims_; }
  int size() const { return dims_.total(); }
  const Matrix& states() const { return states_; }
  Ket state(int j) const { return Ket(dims_, states_.col(j)); }
  Matrix projector(int j) const { return states_.col(j) * states_.col(j).adjoint(); }

  std::vector<Ket> kets() const {
    std::vector<Ket> out;
    out.reserve(size());
    for (int j = 0; j < size(); ++j) out.push_back(state(j));
    return out;
  }

 private:
  ProjectiveBasis() = default;

  static Matrix stack(const std::vector<Ket>& kets) {
    if (kets.empty()) throw std::invalid_argument("projective basis needs at least one ket");
    const BipartiteDims dims = kets.front().dims();
    Matrix m(dims.total(), static_cast<Eigen::Index>(kets.size()));
    for (std::size_t j = 0; j < kets.size(); ++j) {
      require_same_dims(dims, kets[j].dims(), "projective basis");
      m.col(static_cast<Eigen::Index>(j)) = kets[j].amplitudes();
    }
    return m;
  }

  BipartiteDims dims_;
  Matrix states_;
};

/// Outcome probabilities <psi_j|rho|psi_j>.
inline RealVector outcome_probabilities(const ProjectiveBasis& basis, const Matrix& rho) {
  return (basis.states().adjoint() * rho * basis.states()).diagonal().real();
}

inline RealVector outcome_probabilities(const ProjectiveBasis& basis, const Vector& phi) {
  return (basis.states().adjoint() * phi).cwiseAbs2();
}

/// sum_j p_j |psi_j><psi_j|.
inline Matrix mix_projectors(const ProjectiveBasis& basis, const RealVector& weights) {
  return basis.states() * weights.cast<cplx>().asDiagonal() * basis.states().adjoint();
}

inline DensityMatrix apply_nonselective(const ProjectiveBasis& basis, const DensityMatrix& rho) {
  require_same_dims(basis.dims(), rho.dims(), "apply_nonselective");
  return DensityMatrix::unchecked(rho.dims(),
                                  mix_projectors(basis, outcome_probabilities(basis, rho.matrix())));
}

inline DensityMatrix apply_nonselective(const ProjectiveBasis& basis, const Ket& phi) {
  require_same_dims(basis.dims(), phi.dims(), "apply_nonselective");
  return DensityMatrix::unchecked(phi.dims(),
                                  mix_projectors(basis, outcome_probabilities(basis, phi.amplitudes())));
}

/// N(rho') - N(rho).
inline double gain(const ProjectiveBasis& basis, const DensityMatrix& rho) {
  return negativity(apply_nonselective(basis, rho)) - negativity(rho);
}

inline double gain(const ProjectiveBasis& basis, const Ket& phi) {
  return negativity(apply_nonselective(basis, phi)) - pure_negativity(phi);
}

/// max_j N(|psi_j><psi_j|); no input can end up more entangled than this.
inline double convexity_bound(const ProjectiveBasis& basis) {
  double best = 0.0;
  for (int j = 0; j < basis.size(); ++j) best = std::max(best, pure_negativity(basis.state(j)));
  return best;
}

/// U = sum_j w^j |psi_j><psi_j| with w = exp(2 pi i / D).
inline Matrix clock_unitary(const ProjectiveBasis& basis) {
  const int n = basis.size();
  Vector phases(n);
  for (int j = 0; j < n; ++j) phases[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
  return basis.states() * phases.asDiagonal() * basis.states().adjoint();
}

/// The measurement realised as the uniform mixture (1/D) sum_i U^i rho U^-i.
inline DensityMatrix mixed_unitary_channel(const ProjectiveBasis& basis, const DensityMatrix& rho) {
  require_same_dims(basis.dims(), rho.dims(), "mixed_unitary_channel");
  const int n = basis.size();
  const Matrix u = clock_unitary(basis);
  Matrix power = Matrix::Identity(n, n);
  Matrix acc = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    acc += power * rho.matrix() * power.adjoint();
    power = u * power;
  }
  return DensityMatrix::unchecked(rho.dims(), acc / double(n));
}

/// True iff every member has all Schmidt coefficients equal to 1/sqrt(d1)
/// within \p tolerance.
inline bool is_max_entangled_basis(const ProjectiveBasis& basis, double tolerance) {
  if (!basis.dims().square()) {
    throw std::invalid_argument("maximal entanglement test needs equal factor dimensions, got " +
                                to_string(basis.dims()));
  }
  const double target = 1.0 / std::sqrt(double(basis.dims().d1));
  for (int j = 0; j < basis.size(); ++j) {
    const RealVector c = schmidt(basis.state(j)).coefficients;
    if ((c.array() - target).abs().maxCoeff() > tolerance) return false;
  }
  return true;
}

/// |00>+|11>, |01>+|10>, |01>-|10>, |00>-|11>, each over sqrt(2).
inline ProjectiveBasis bell_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = h;  m(3, 0) = h;
  m(1, 1) = h;  m(2, 1) = h;
  m(1, 2) = h;  m(2, 2) = -h;
  m(0, 3) = h;  m(3, 3) = -h;
  return ProjectiveBasis({2, 2}, std::move(m));
}

/// Two-qutrit basis: the four Bell states on span{|0>,|1>}^2 followed by
/// |02>, |12>, |20>, |21>, |22>. Its channel has an LOCC realisation.
inline ProjectiveBasis qutrit_locc_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  auto idx = [](int a, int b) { return a * 3 + b; };
  Matrix m = Matrix::Zero(9, 9);
  m(idx(0, 0), 0) = h;  m(idx(1, 1), 0) = h;
  m(idx(0, 0), 1) = h;  m(idx(1, 1), 1) = -h;
  m(idx(0, 1), 2) = h;  m(idx(1, 0), 2) = h;
  m(idx(0, 1), 3) = h;  m(idx(1, 0), 3) = -h;
  m(idx(0, 2), 4) = 1.0;
  m(idx(1, 2), 5) = 1.0;
  m(idx(2, 0), 6) = 1.0;
  m(idx(2, 1), 7) = 1.0;
  m(idx(2, 2), 8) = 1.0;
  return ProjectiveBasis({3, 3}, std::move(m));
}

/// All d^2 generalized Bell states, ordered j-major.
inline ProjectiveBasis generalized_bell_basis(int d) {
  Matrix m(d * d, d * d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) m.col(j * d + k) = generalized_bell(d, j, k).amplitudes();
  }
  return ProjectiveBasis({d, d}, std::move(m));
}

inline ProjectiveBasis computational_basis(BipartiteDims dims) {
  dims.validate();
  return ProjectiveBasis(dims, Matrix::Identity(dims.total(), dims.total()));
}

}  // namespace entgain
