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

/// \file constructions.hpp
/// Explicit witnesses of negativity gain:
///  - an input state that gains in a given measurement,
///  - a measurement under which a given pure state gains,
///  - the closed-form two-qubit theory for the parametric basis
///      |psi_0> = b|00> + sqrt(1-b^2)|11>,  |psi_1> = sqrt(1-b^2)|00> - b|11>,
///      |psi_2> = c|01> + sqrt(1-c^2)|10>,  |psi_3> = sqrt(1-c^2)|01> - c|10>.

#include "entgain/entanglement.hpp"
#include "entgain/measurement.hpp"
#include "entgain/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace entgain {

namespace detail {

/// (1/sqrt(d)) sum_{k<d} |left_k>|right_k>, phase tied to the Schmidt form.
inline Vector schmidt_max_entangled(const SchmidtForm& form, int d) {
  const BipartiteDims dims = form.dims;
  Vector out = Vector::Zero(dims.total());
  for (int k = 0; k < d; ++k) {
    for (int i1 = 0; i1 < dims.d1; ++i1) {
      out.segment(i1 * dims.d2, dims.d2) += form.left_basis(i1, k) * form.right_basis.col(k);
    }
  }
  return out / std::sqrt(double(d));
}

/// |left_k>|right_k> for one Schmidt index.
inline Vector schmidt_product(const SchmidtForm& form, int k) {
  Vector out(form.dims.total());
  for (int i1 = 0; i1 < form.dims.d1; ++i1) {
    out.segment(i1 * form.dims.d2, form.dims.d2) = form.left_basis(i1, k) * form.right_basis.col(k);
  }
  return out;
}

/// Extends orthonormal columns to a full orthonormal basis with
/// Gram-Schmidt over the computational vectors.
inline Matrix complete_basis(const std::vector<Vector>& seed, int n) {
  Matrix out(n, n);
  int filled = 0;
  for (const Vector& v : seed) out.col(filled++) = v;
  for (int i = 0; i < n && filled < n; ++i) {
    Vector v = unit_vector(n, i);
    for (int pass = 0; pass < 2; ++pass) {
      for (int c = 0; c < filled; ++c) v -= out.col(c).dot(v) * out.col(c);
    }
    const double norm = v.norm();
    if (norm > 1e-6) out.col(filled++) = v / norm;
  }
  if (filled != n) throw std::runtime_error("basis completion failed");
  return out;
}

inline bool all_equal(const RealVector& v, double tolerance) {
  return v.size() == 0 || v.maxCoeff() - v.minCoeff() <= tolerance;
}

}  // namespace detail

/// Admissible range (lower, upper) of the mixing weight epsilon, both ends
/// excluded.
struct EpsilonWindow {
  double lower = 0.0;
  double upper = 0.0;

  bool empty() const { return !(upper > lower); }
  bool contains(double eps) const { return eps > lower && eps < upper; }
  double midpoint() const { return 0.5 * (lower + upper); }
};

struct StateConstruction {
  Ket state;
  EpsilonWindow window;
  double epsilon = 0.0;
};

/// Window for |phi> ~ |psi_0> - eps |Phi>, where Phi is maximally entangled
/// over the Schmidt support (rank d) of psi_0:
///
///     upper = min( sqrt(d) min_i p_i,
///                  2 beta dN / (d (1 - beta^2) + dN) ),
///
/// with beta = <psi_0|Phi> and dN = N(Phi) - N(psi_0).
inline EpsilonWindow epsilon_window(const SchmidtForm& form) {
  const int d = form.rank();
  const RealVector c = form.coefficients.head(d);
  const double beta = c.sum() / std::sqrt(double(d));
  const double n0 = 0.5 * (c.sum() * c.sum() - 1.0);
  const double n_phi = 0.5 * (d - 1);
  const double dn = n_phi - n0;
  const double positivity = std::sqrt(double(d)) * c.cwiseAbs2().minCoeff();
  const double gain = 2.0 * beta * dn / (d * (1.0 - beta * beta) + dn);
  return {0.0, std::min(positivity, gain)};
}

/// An input state whose negativity grows in \p basis. Requires psi_0 to have
/// at least two nonzero Schmidt coefficients that are not all equal; throws
/// std::domain_error otherwise. Epsilon defaults to the window midpoint.
inline StateConstruction state_for_measurement(const ProjectiveBasis& basis,
                                               std::optional<double> epsilon = std::nullopt) {
  const Ket psi0 = basis.state(0);
  const SchmidtForm form = schmidt(psi0);
  const int d = form.rank();
  if (d < 2) throw std::domain_error("psi_0 is a product state; no gain construction exists");
  if (detail::all_equal(form.coefficients.head(d), tol::kState)) {
    throw std::domain_error("psi_0 is maximally entangled on its support; no gain construction exists");
  }
  const EpsilonWindow window = epsilon_window(form);
  if (window.empty()) throw std::domain_error("epsilon window is empty");
  const double eps = epsilon.value_or(window.midpoint());
  if (!window.contains(eps)) {
    throw std::invalid_argument("epsilon " + std::to_string(eps) + " outside (0, " +
                                std::to_string(window.upper) + ")");
  }
  const Vector phi = psi0.amplitudes() - eps * detail::schmidt_max_entangled(form, d);
  const Ket state = Ket::normalized(basis.dims(), phi).with_canonical_phase();
  return {state, window, eps};
}

/// A basis whose first two members are (phi + Phi)/|.| and (phi - Phi)/|.|,
/// Phi maximally entangled in the Schmidt basis of phi over min(d1, d2)
/// levels. The measured state becomes (|phi><phi| + |Phi><Phi|)/2.
/// Throws std::domain_error for maximally entangled input.
inline ProjectiveBasis measurement_for_state(const Ket& phi) {
  const SchmidtForm form = schmidt(phi);
  const int r = phi.dims().min_dim();
  if (r < 2 || detail::all_equal(form.coefficients, tol::kState)) {
    throw std::domain_error("input is maximally entangled; no measurement increases its negativity");
  }
  const Vector big_phi = detail::schmidt_max_entangled(form, r);
  const double overlap = phi.amplitudes().dot(big_phi).real();
  const Vector plus = (phi.amplitudes() + big_phi) / std::sqrt(2.0 + 2.0 * overlap);
  const Vector minus = (phi.amplitudes() - big_phi) / std::sqrt(2.0 - 2.0 * overlap);
  return ProjectiveBasis(phi.dims(), detail::complete_basis({plus, minus}, phi.dims().total()));
}

/// N_f = (N(phi) + (r - 1)/2) / 2 for the measurement above.
inline double measurement_for_state_final_negativity(const Ket& phi) {
  return 0.5 * (pure_negativity(phi) + 0.5 * (phi.dims().min_dim() - 1));
}

// ---------------------------------------------------------------------------
// Two qubits

/// a|00> + sqrt(1 - a^2)|11>.
inline Ket ket_in_2q(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("parameter a must lie in [0, 1]");
  Vector v = Vector::Zero(4);
  v[0] = a;
  v[3] = std::sqrt(1.0 - a * a);
  return Ket({2, 2}, v);
}

/// The parametric basis in the file comment.
inline ProjectiveBasis opt_basis_2q(double b, double c = 0.0) {
  if (!(b >= 0.0 && b <= 1.0) || !(c >= 0.0 && c <= 1.0)) {
    throw std::invalid_argument("basis parameters b, c must lie in [0, 1]");
  }
  const double sb = std::sqrt(1.0 - b * b);
  const double sc = std::sqrt(1.0 - c * c);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = b;   m(3, 0) = sb;
  m(0, 1) = sb;  m(3, 1) = -b;
  m(1, 2) = c;   m(2, 2) = sc;
  m(1, 3) = sc;  m(2, 3) = -c;
  return ProjectiveBasis({2, 2}, std::move(m));
}

/// x sqrt(1 - x^2): negativity of x|00> + sqrt(1 - x^2)|11>.
inline double negativity_from_parameter(double x) { return x * std::sqrt(1.0 - x * x); }

/// Inverse of negativity_from_parameter on [0, 1/sqrt(2)].
inline double parameter_from_negativity(double n) {
  if (!(n >= 0.0 && n <= 0.5)) throw std::invalid_argument("negativity must lie in [0, 1/2]");
  return std::sqrt(0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * n * n))));
}

struct TwoQubitGainModel {
  double n_i = 0.0;  ///< negativity of the input state
  double n_b = 0.0;  ///< negativity of the entangled basis members

  void validate() const {
    if (!(n_i >= 0.0 && n_i <= 0.5) || !(n_b >= 0.0 && n_b <= 0.5)) {
      throw std::invalid_argument("two-qubit negativities must lie in [0, 1/2]");
    }
  }
};

/// N_f = N_b sqrt(1 - 4 N_i^2) sqrt(1 - 4 N_b^2) + 4 N_i N_b^2.
inline double predict_final_negativity_2q(const TwoQubitGainModel& model) {
  model.validate();
  const double ni = model.n_i;
  const double nb = model.n_b;
  return nb * std::sqrt(1.0 - 4.0 * ni * ni) * std::sqrt(1.0 - 4.0 * nb * nb) + 4.0 * ni * nb * nb;
}

/// N_i < N_b < 1/2.
inline bool gain_condition_2q(const TwoQubitGainModel& model) {
  model.validate();
  return model.n_i < model.n_b && model.n_b < 0.5;
}

struct OptimalMeasurement {
  double n_b_max = 0.0;
  double gain_max = 0.0;
};

/// N_b^max = sqrt(2 N_i + 1) / (2 sqrt 2), gain 1/4 - N_i/2.
inline OptimalMeasurement optimal_measurement_2q(double n_i) {
  if (!(n_i >= 0.0 && n_i <= 0.5)) throw std::invalid_argument("N_i must lie in [0, 1/2]");
  return {std::sqrt(2.0 * n_i + 1.0) / (2.0 * std::sqrt(2.0)), 0.25 - 0.5 * n_i};
}

// ---------------------------------------------------------------------------
// Qudit lower bound

/// m(i, i') = sum_{k<k'} sum_j alpha(j,i) conj(alpha(j,i')) alpha(j,k) conj(alpha(j,k')).
inline Matrix gain_m_matrix(const Matrix& alpha) {
  const Eigen::Index d = alpha.cols();
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < alpha.rows(); ++j) {
    cplx pair_sum = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      for (Eigen::Index kp = k + 1; kp < d; ++kp) pair_sum += alpha(j, k) * std::conj(alpha(j, kp));
    }
    m += pair_sum * (alpha.row(j).transpose() * alpha.row(j).conjugate());
  }
  return m;
}

/// |<q, m q>| for block coefficients alpha (row j = basis state, column i =
/// Schmidt index) and Schmidt vector q.
inline double neg_lower_bound(const Matrix& alpha, const RealVector& q) {
  if (alpha.rows() != alpha.cols() || alpha.cols() != q.size()) {
    throw std::invalid_argument("lower bound needs a d x d coefficient block and a length-d q");
  }
  const Vector qc = q.cast<cplx>();
  return std::abs(qc.dot(gain_m_matrix(alpha) * qc));
}

/// Lower bound on N(rho') for a basis whose first d members lie in
/// span{|ii>} of the Schmidt basis of phi and whose other members are
/// orthogonal to phi. Throws std::invalid_argument when that structure is
/// violated.
inline double neg_lower_bound_qudit(const ProjectiveBasis& basis, const Ket& phi) {
  require_same_dims(basis.dims(), phi.dims(), "neg_lower_bound_qudit");
  if (!basis.dims().square()) throw std::invalid_argument("lower bound needs d1 = d2");
  const int d = basis.dims().d1;
  const SchmidtForm form = schmidt(phi);
  constexpr double kStructureTol = 1e-8;

  Matrix products(basis.size(), d);
  for (int i = 0; i < d; ++i) products.col(i) = detail::schmidt_product(form, i);

  Matrix alpha(d, d);
  for (int j = 0; j < d; ++j) {
    const Vector psi = basis.states().col(j);
    const Vector coeffs = products.adjoint() * psi;
    if ((psi - products * coeffs).norm() > kStructureTol) {
      throw std::invalid_argument("basis state " + std::to_string(j) +
                                  " leaves the Schmidt diagonal span of the input");
    }
    alpha.row(j) = coeffs.transpose();
  }
  for (int j = d; j < basis.size(); ++j) {
    if (std::abs(basis.states().col(j).dot(phi.amplitudes())) > kStructureTol) {
      throw std::invalid_argument("basis state " + std::to_string(j) + " overlaps the input");
    }
  }
  return neg_lower_bound(alpha, form.coefficients);
}

}  // namespace entgain
