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

/// \file bell_reduction.hpp
/// Constructive reduction of a two-qubit basis of maximally entangled states
/// to the Bell basis by local unitaries.
///
/// Outline:
///   1. Choose local bases {a_k}, {b_l} in which psi_0 = (|00> + |11>)/sqrt(2).
///   2. Write every psi_j in that product basis; its 2x2 coefficient matrix
///      alpha_j is sqrt(1/2) times a unitary, and the alpha_j are orthonormal
///      under the Hilbert-Schmidt product, so alpha_j (j >= 1) is traceless.
///   3. A traceless 2x2 matrix proportional to a unitary is a phase times a
///      Hermitian matrix; dropping the phase leaves the channel unchanged.
///   4. The Pauli coordinates of the Hermitian alpha_j form the columns of an
///      orthogonal 3x3 matrix R0. Negating psi_1 forces det R0 = +1.
///   5. The SU(2) preimage U of R0 satisfies alpha_j = U sigma_j U^dagger / sqrt(2),
///      and the local bases A U, B conj(U) carry psi_j to sigma_j-form.

#include "entgain/measurement.hpp"
#include "entgain/qstate.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace entgain {

namespace pauli {
inline Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }
inline Eigen::Matrix2cd x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
inline Eigen::Matrix2cd y() {
  Eigen::Matrix2cd m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
inline Eigen::Matrix2cd z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}
/// sigma_0 .. sigma_3.
inline std::array<Eigen::Matrix2cd, 4> all() { return {identity(), x(), y(), z()}; }
}  // namespace pauli

/// Coefficient matrices of a maximally entangled two-qubit basis in the
/// product basis adapted to psi_0, with the phases removed from j >= 1.
struct AlphaMatrices {
  std::array<Eigen::Matrix2cd, 4> alpha;
  /// alpha_j before phase fixing equals exp(i eta_j) times alpha[j].
  std::array<double, 4> phases{};
  /// Local bases {a_k} (columns of left) and {b_l} (columns of right).
  Eigen::Matrix2cd left;
  Eigen::Matrix2cd right;
};

class LocalUnitaryPair {
 public:
  LocalUnitaryPair(Matrix u1, Matrix u2) : u1_(std::move(u1)), u2_(std::move(u2)) {
    check(u1_, "u1");
    check(u2_, "u2");
  }

  static LocalUnitaryPair identity(BipartiteDims dims) {
    return LocalUnitaryPair(Matrix::Identity(dims.d1, dims.d1), Matrix::Identity(dims.d2, dims.d2));
  }

  const Matrix& u1() const { return u1_; }
  const Matrix& u2() const { return u2_; }
  Matrix global() const { return kron(u1_, u2_); }

  Ket apply(const Ket& phi) const {
    require_same_dims(phi.dims(), {int(u1_.rows()), int(u2_.rows())}, "local unitary");
    return Ket(phi.dims(), global() * phi.amplitudes());
  }

  ProjectiveBasis apply(const ProjectiveBasis& basis) const {
    require_same_dims(basis.dims(), {int(u1_.rows()), int(u2_.rows())}, "local unitary");
    return ProjectiveBasis::unchecked(basis.dims(), global() * basis.states());
  }

 private:
  static void check(const Matrix& u, const char* name) {
    if (u.rows() != u.cols() || u.rows() == 0) {
      throw std::invalid_argument(std::string(name) + " must be a non-empty square matrix");
    }
    const double defect =
        (u * u.adjoint() - Matrix::Identity(u.rows(), u.rows())).cwiseAbs().maxCoeff();
    if (!(defect <= tol::kState)) {
      throw std::invalid_argument(std::string(name) + " is not unitary (defect " +
                                  std::to_string(defect) + ")");
    }
  }

  Matrix u1_;
  Matrix u2_;
};

namespace detail {

inline constexpr double kReductionTol = 1e-8;

inline Eigen::Matrix2cd to2(const Matrix& m) { return m; }

/// Real 3-vector n with alpha = exp(i eta) n.sigma / sqrt(2). The phase is
/// fixed so that the largest-magnitude Pauli coordinate is positive.
inline Eigen::Vector3d hermitian_coordinates(const Eigen::Matrix2cd& alpha, double& eta) {
  const auto sigma = pauli::all();
  Eigen::Vector3cd c;
  for (int k = 0; k < 3; ++k) c[k] = (alpha * sigma[k + 1]).trace() / std::sqrt(2.0);
  Eigen::Index lead = 0;
  c.cwiseAbs().maxCoeff(&lead);
  eta = std::arg(c[lead]);
  const Eigen::Vector3cd rotated = c * std::polar(1.0, -eta);
  if (rotated.imag().cwiseAbs().maxCoeff() > kReductionTol) {
    throw std::runtime_error("coefficient matrix is not a phase times a Hermitian matrix");
  }
  return rotated.real();
}

/// Unit quaternion (w, x, y, z) of a proper rotation, sign fixed so that
/// the first nonzero component is positive.
inline Eigen::Vector4d rotation_quaternion(const Eigen::Matrix3d& r) {
  Eigen::Vector4d q;
  const double trace = r.trace();
  if (trace > 0.0) {
    const double s = 2.0 * std::sqrt(trace + 1.0);
    q << 0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s, (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
    q << (r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s, (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
    q << (r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s, (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
    q << (r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s, (r(1, 2) + r(2, 1)) / s, 0.25 * s;
  }
  q.normalize();
  for (int i = 0; i < 4; ++i) {
    if (std::abs(q[i]) > tol::kZero) {
      if (q[i] < 0.0) q = -q;
      break;
    }
  }
  return q;
}

}  // namespace detail

/// SU(2) element U with U sigma_j U^dagger = sum_k R(k, j) sigma_k.
inline Eigen::Matrix2cd su2_from_rotation(const Eigen::Matrix3d& rotation) {
  const Eigen::Vector4d q = detail::rotation_quaternion(rotation);
  const cplx minus_i(0.0, -1.0);
  return q[0] * pauli::identity() +
         minus_i * (q[1] * pauli::x() + q[2] * pauli::y() + q[3] * pauli::z());
}

/// Bell basis projectors matched one-to-one against a transformed basis.
struct BellMatch {
  /// permutation[j] is the Bell index that state j maps to, or -1.
  std::vector<int> permutation;
  /// Largest elementwise projector difference over matched pairs.
  double residual = 1.0;
};

/// Compares the projectors of (u1 (x) u2)|psi_j> with the Bell projectors as
/// an unordered set.
inline BellMatch match_bell_form(const ProjectiveBasis& basis, const LocalUnitaryPair& pair) {
  const ProjectiveBasis moved = pair.apply(basis);
  const ProjectiveBasis bell = bell_basis();
  BellMatch match;
  match.permutation.assign(4, -1);
  match.residual = 0.0;
  std::array<bool, 4> used{};
  for (int j = 0; j < 4; ++j) {
    const Matrix pj = moved.projector(j);
    int best = -1;
    double best_overlap = -1.0;
    for (int k = 0; k < 4; ++k) {
      const double overlap = std::abs(bell.states().col(k).dot(moved.states().col(j)));
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best = k;
      }
    }
    if (used[best]) {
      match.residual = 1.0;
      return match;
    }
    used[best] = true;
    match.permutation[j] = best;
    match.residual = std::max(match.residual, (pj - bell.projector(best)).cwiseAbs().maxCoeff());
  }
  return match;
}

/// Coefficient matrices of every basis member in the product basis that puts
/// psi_0 into (|00> + |11>)/sqrt(2), phase-fixed to be Hermitian for j >= 1.
inline AlphaMatrices extract_alpha_matrices(const ProjectiveBasis& basis) {
  if (basis.dims() != BipartiteDims{2, 2}) {
    throw std::invalid_argument("Bell reduction needs a two-qubit basis, got " +
                                to_string(basis.dims()));
  }
  if (!is_max_entangled_basis(basis, detail::kReductionTol)) {
    throw std::invalid_argument("Bell reduction needs every basis state maximally entangled");
  }
  const SchmidtForm form = schmidt(basis.state(0));
  AlphaMatrices out;
  out.left = detail::to2(form.left_basis);
  out.right = detail::to2(form.right_basis);
  const Eigen::Matrix2cd right_conj = out.right.conjugate();
  for (int j = 0; j < 4; ++j) {
    const Eigen::Matrix2cd raw = out.left.adjoint() * detail::to2(basis.state(j).coefficient_matrix()) * right_conj;
    if (j == 0) {
      out.alpha[0] = raw;
      out.phases[0] = 0.0;
      continue;
    }
    double eta = 0.0;
    detail::hermitian_coordinates(raw, eta);
    out.alpha[j] = raw * std::polar(1.0, -eta);
    // Drop the residual anti-Hermitian part left by round-off.
    out.alpha[j] = 0.5 * (out.alpha[j] + out.alpha[j].adjoint()).eval();
    out.phases[j] = eta;
  }
  return out;
}

/// Local unitaries (u1, u2) that carry a two-qubit basis of maximally
/// entangled states onto the Bell basis, up to per-state phases. The image
/// of psi_0 is (|00> + |11>)/sqrt(2); other members may land on Bell states
/// in a different order.
///
/// Throws std::invalid_argument when the basis is not maximally entangled
/// within 1e-8 and std::runtime_error when the recovered rotation is not
/// orthogonal within 1e-8.
inline LocalUnitaryPair bell_reduction(const ProjectiveBasis& basis) {
  if (basis.dims() != BipartiteDims{2, 2}) {
    throw std::invalid_argument("Bell reduction needs a two-qubit basis, got " +
                                to_string(basis.dims()));
  }
  {
    const LocalUnitaryPair identity = LocalUnitaryPair::identity(basis.dims());
    const BellMatch already = match_bell_form(basis, identity);
    if (already.residual < tol::kZero) return identity;
  }

  const AlphaMatrices alphas = extract_alpha_matrices(basis);
  Eigen::Matrix3d rotation;
  for (int j = 1; j < 4; ++j) {
    double eta = 0.0;
    rotation.col(j - 1) = detail::hermitian_coordinates(alphas.alpha[j], eta);
  }
  const double orthogonality =
      (rotation.transpose() * rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (!(orthogonality <= detail::kReductionTol)) {
    throw std::runtime_error("recovered Pauli rotation is not orthogonal (defect " +
                             std::to_string(orthogonality) + ")");
  }
  // Negating psi_1 is a global phase on one outcome and flips det R0.
  if (rotation.determinant() < 0.0) rotation.col(0) = -rotation.col(0);

  const Eigen::Matrix2cd u = su2_from_rotation(rotation);
  const Eigen::Matrix2cd w1 = alphas.left * u;
  const Eigen::Matrix2cd w2 = alphas.right * u.conjugate();
  return LocalUnitaryPair(Matrix(w1.adjoint()), Matrix(w2.adjoint()));
}

}  // namespace entgain
