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

/// \file qstate.hpp
/// Bipartite pure and mixed states together with the dense linear-algebra
/// primitives the rest of the library is built on: tensor products, the
/// partial transpose, Hermitian spectra, the trace norm and the Schmidt
/// decomposition.
///
/// Amplitudes of a state on H1 (x) H2 are stored row-major: the basis ket
/// |i1 i2> lives at index i1 * d2 + i2.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace entgain {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
/// Normalisation, Hermiticity, trace and positivity checks on states.
inline constexpr double kState = 1e-10;
/// Spectral and singular values below this magnitude count as zero.
inline constexpr double kZero = 1e-12;
/// Hermiticity required before a trace norm is taken.
inline constexpr double kHermitianInput = 1e-8;
}  // namespace tol

struct BipartiteDims {
  int d1 = 1;
  int d2 = 1;

  constexpr int total() const { return d1 * d2; }
  constexpr int min_dim() const { return std::min(d1, d2); }
  constexpr bool valid() const { return d1 >= 1 && d2 >= 1; }
  constexpr bool square() const { return d1 == d2; }

  void validate() const {
    if (!valid()) {
      throw std::invalid_argument("bipartite dimensions must be positive, got (" +
                                  std::to_string(d1) + ", " + std::to_string(d2) + ")");
    }
  }

  friend constexpr bool operator==(BipartiteDims, BipartiteDims) = default;
};

inline std::string to_string(BipartiteDims dims) {
  return "(" + std::to_string(dims.d1) + ", " + std::to_string(dims.d2) + ")";
}

inline void require_same_dims(BipartiteDims a, BipartiteDims b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch " + to_string(a) +
                                " vs " + to_string(b));
  }
}

/// Row-major view of a length d1*d2 vector as a d1 x d2 matrix.
inline Matrix reshape_rows(const Vector& v, BipartiteDims dims) {
  using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(v.data(), dims.d1, dims.d2);
}

/// Multiplies \p v by the phase that makes its first non-negligible entry
/// real and nonnegative.
inline Vector canonical_phase(Vector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > tol::kZero) {
      v *= std::conj(v[i]) / mag;
      v[i] = cplx(std::abs(v[i]), 0.0);
      break;
    }
  }
  return v;
}

inline Vector unit_vector(int n, int i) {
  if (i < 0 || i >= n) {
    throw std::out_of_range("basis index " + std::to_string(i) + " out of range for dimension " +
                            std::to_string(n));
  }
  Vector e = Vector::Zero(n);
  e[i] = 1.0;
  return e;
}

/// Normalised pure state on a bipartite space.
class Ket {
 public:
  Ket(BipartiteDims dims, Vector amplitudes) : dims_(dims), amplitudes_(std::move(amplitudes)) {
    dims_.validate();
    if (amplitudes_.size() != dims_.total()) {
      throw std::invalid_argument("ket has " + std::to_string(amplitudes_.size()) +
                                  " amplitudes, dims " + to_string(dims_) + " need " +
                                  std::to_string(dims_.total()));
    }
    const double norm = amplitudes_.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol::kState) {
      throw std::invalid_argument("ket is not normalised (norm " + std::to_string(norm) + ")");
    }
  }

  /// Rescales \p amplitudes to unit norm before construction.
  static Ket normalized(BipartiteDims dims, Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > tol::kZero)) throw std::invalid_argument("cannot normalise a zero vector");
    amplitudes /= norm;
    return Ket(dims, std::move(amplitudes));
  }

  static Ket computational(BipartiteDims dims, int i1, int i2) {
    dims.validate();
    if (i1 < 0 || i1 >= dims.d1 || i2 < 0 || i2 >= dims.d2) {
      throw std::out_of_range("computational index out of range for dims " + to_string(dims));
    }
    return Ket(dims, unit_vector(dims.total(), i1 * dims.d2 + i2));
  }

  BipartiteDims dims() const { return dims_; }
  const Vector& amplitudes() const { return amplitudes_; }
  cplx operator[](Eigen::Index i) const { return amplitudes_[i]; }

  /// Amplitudes arranged as the d1 x d2 coefficient matrix.
  Matrix coefficient_matrix() const { return reshape_rows(amplitudes_, dims_); }

  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

  Ket with_canonical_phase() const { return Ket(dims_, canonical_phase(amplitudes_)); }

  cplx inner(const Ket& other) const {
    require_same_dims(dims_, other.dims_, "inner product");
    return amplitudes_.dot(other.amplitudes_);
  }

 private:
  BipartiteDims dims_;
  Vector amplitudes_;
};

/// Eigenvalues of a Hermitian matrix in ascending order. Only the lower
/// triangle is read.
inline RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

inline double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Hermitian, unit-trace, positive semidefinite operator on a bipartite space.
class DensityMatrix {
 public:
  DensityMatrix(BipartiteDims dims, Matrix matrix) : dims_(dims), matrix_(std::move(matrix)) {
    dims_.validate();
    if (matrix_.rows() != dims_.total() || matrix_.cols() != dims_.total()) {
      throw std::invalid_argument("density matrix is " + std::to_string(matrix_.rows()) + "x" +
                                  std::to_string(matrix_.cols()) + ", dims " + to_string(dims_) +
                                  " need " + std::to_string(dims_.total()));
    }
    if (hermiticity_defect(matrix_) > tol::kState) {
      throw std::invalid_argument("density matrix is not Hermitian");
    }
    const cplx tr = matrix_.trace();
    if (std::abs(tr - 1.0) > tol::kState) {
      throw std::invalid_argument("density matrix trace is " + std::to_string(tr.real()));
    }
    if (hermitian_eigenvalues(matrix_)[0] < -tol::kState) {
      throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
  }

  static DensityMatrix pure(const Ket& ket) { return unchecked(ket.dims(), ket.projector()); }

  static DensityMatrix maximally_mixed(BipartiteDims dims) {
    dims.validate();
    return unchecked(dims, Matrix::Identity(dims.total(), dims.total()) / double(dims.total()));
  }

  /// Skips validation. For outputs of channels that are valid by construction.
  static DensityMatrix unchecked(BipartiteDims dims, Matrix matrix) {
    DensityMatrix rho;
    rho.dims_ = dims;
    rho.matrix_ = std::move(matrix);
    return rho;
  }

  BipartiteDims dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }
  cplx operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }

  RealVector eigenvalues() const { return hermitian_eigenvalues(matrix_); }

 private:
  DensityMatrix() = default;

  BipartiteDims dims_;
  Matrix matrix_;
};

/// Schmidt decomposition sum_i c_i |left_i>|right_i> of a bipartite ket.
///
/// Columns of left_basis (d1 x r) and right_basis (d2 x r) are orthonormal,
/// r = min(d1, d2). Columns paired with a zero coefficient complete the
/// family but carry no weight.
struct SchmidtForm {
  BipartiteDims dims;
  RealVector coefficients;
  Matrix left_basis;
  Matrix right_basis;

  int rank() const {
    return static_cast<int>((coefficients.array() > 0.0).count());
  }

  Vector reconstruct() const {
    Vector out = Vector::Zero(dims.total());
    for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
      if (coefficients[k] == 0.0) continue;
      Vector prod(dims.total());
      for (int i1 = 0; i1 < dims.d1; ++i1) {
        prod.segment(i1 * dims.d2, dims.d2) = left_basis(i1, k) * right_basis.col(k);
      }
      out += coefficients[k] * prod;
    }
    return out;
  }
};

/// Product |a> (x) |b> of two single-system vectors.
inline Ket tensor(const Vector& a, const Vector& b) {
  const BipartiteDims dims{static_cast<int>(a.size()), static_cast<int>(b.size())};
  Vector out(dims.total());
  for (int i1 = 0; i1 < dims.d1; ++i1) out.segment(i1 * dims.d2, dims.d2) = a[i1] * b;
  return Ket(dims, canonical_phase(std::move(out)));
}

/// As tensor(a, b), rejecting factors that disagree with \p dims.
inline Ket tensor(BipartiteDims dims, const Vector& a, const Vector& b) {
  dims.validate();
  if (a.size() != dims.d1 || b.size() != dims.d2) {
    throw std::invalid_argument("tensor factors of sizes (" + std::to_string(a.size()) + ", " +
                                std::to_string(b.size()) + ") do not match dims " +
                                to_string(dims));
  }
  return tensor(a, b);
}

/// Transpose on the second factor: ((i1,i2),(j1,j2)) -> ((i1,j2),(j1,i2)).
inline Matrix partial_transpose(const Matrix& m, BipartiteDims dims) {
  const int d1 = dims.d1;
  const int d2 = dims.d2;
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw std::invalid_argument("partial transpose: matrix does not match dims " +
                                to_string(dims));
  }
  Matrix out(m.rows(), m.cols());
  for (int i1 = 0; i1 < d1; ++i1) {
    for (int j1 = 0; j1 < d1; ++j1) {
      out.block(i1 * d2, j1 * d2, d2, d2) = m.block(i1 * d2, j1 * d2, d2, d2).transpose();
    }
  }
  return out;
}

inline Matrix partial_transpose(const DensityMatrix& rho) {
  return partial_transpose(rho.matrix(), rho.dims());
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
inline double trace_norm(const Matrix& m) {
  if (hermiticity_defect(m) > tol::kHermitianInput) {
    throw std::invalid_argument("trace_norm expects a Hermitian matrix");
  }
  return hermitian_eigenvalues(m).cwiseAbs().sum();
}

/// Schmidt decomposition through the SVD of the d1 x d2 coefficient matrix.
/// Coefficients below 1e-12 are set to exactly zero.
inline SchmidtForm schmidt(const Ket& phi) {
  const BipartiteDims dims = phi.dims();
  Eigen::JacobiSVD<Matrix> svd(phi.coefficient_matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int r = dims.min_dim();
  SchmidtForm form;
  form.dims = dims;
  form.coefficients = svd.singularValues().head(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    if (form.coefficients[k] < tol::kZero) form.coefficients[k] = 0.0;
  }
  // M = U S V^dagger, so the right Schmidt vectors are the conjugated columns of V.
  form.left_basis = svd.matrixU().leftCols(r);
  form.right_basis = svd.matrixV().leftCols(r).conjugate();
  return form;
}

/// (1/sqrt(d)) sum_{i<d} |i>|i> in the computational basis, or in the
/// Schmidt basis of \p basis_source when given.
inline Ket max_entangled(BipartiteDims dims, int d, const SchmidtForm* basis_source = nullptr) {
  dims.validate();
  if (d < 1 || d > dims.min_dim()) {
    throw std::invalid_argument("maximally entangled rank " + std::to_string(d) +
                                " exceeds a factor dimension of " + to_string(dims));
  }
  Vector out = Vector::Zero(dims.total());
  if (basis_source == nullptr) {
    for (int i = 0; i < d; ++i) out[i * dims.d2 + i] = 1.0;
  } else {
    require_same_dims(dims, basis_source->dims, "max_entangled");
    for (int k = 0; k < d; ++k) {
      for (int i1 = 0; i1 < dims.d1; ++i1) {
        out.segment(i1 * dims.d2, dims.d2) +=
            basis_source->left_basis(i1, k) * basis_source->right_basis.col(k);
      }
    }
  }
  out /= std::sqrt(double(d));
  return Ket(dims, canonical_phase(std::move(out)));
}

inline Ket max_entangled(int d) { return max_entangled({d, d}, d); }

/// Weyl-Heisenberg Bell state (1/sqrt(d)) sum_m w^{mk} |m>|m+j mod d>,
/// w = exp(2 pi i / d).
inline Ket generalized_bell(int d, int j, int k) {
  if (d < 1) throw std::invalid_argument("generalized_bell: dimension must be positive");
  if (j < 0 || j >= d || k < 0 || k >= d) {
    throw std::out_of_range("generalized_bell: indices (" + std::to_string(j) + ", " +
                            std::to_string(k) + ") out of range for d = " + std::to_string(d));
  }
  const BipartiteDims dims{d, d};
  Vector out = Vector::Zero(dims.total());
  for (int m = 0; m < d; ++m) {
    const double angle = 2.0 * std::numbers::pi * double((m * k) % d) / double(d);
    out[m * d + (m + j) % d] = std::polar(1.0 / std::sqrt(double(d)), angle);
  }
  return Ket(dims, canonical_phase(std::move(out)));
}

/// Local operator u1 (x) u2.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace entgain
