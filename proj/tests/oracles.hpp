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

// Reference computations for the test suites. Each routine is written
// directly from its definition (explicit index loops, general eigensolvers)
// and shares no code with the library beyond the Eigen matrix types.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// ((i1,i2),(j1,j2)) -> ((i1,j2),(j1,i2)), row-major i1*d2 + i2.
inline Mat partial_transpose(const Mat& rho, int d1, int d2) {
  Mat out(rho.rows(), rho.cols());
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2)
      for (int j1 = 0; j1 < d1; ++j1)
        for (int j2 = 0; j2 < d2; ++j2) out(i1 * d2 + j2, j1 * d2 + i2) = rho(i1 * d2 + i2, j1 * d2 + j2);
  return out;
}

/// Real parts of the eigenvalues from the general (non-Hermitian) solver, ascending.
inline std::vector<double> eigenvalues(const Mat& m) {
  Eigen::ComplexEigenSolver<Mat> solver(m, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()[i].real());
  std::sort(out.begin(), out.end());
  return out;
}

inline double negativity(const Mat& rho, int d1, int d2) {
  double s = 0.0;
  for (double l : eigenvalues(partial_transpose(rho, d1, d2)))
    if (l < 0.0) s -= l;
  return s;
}

/// Sum_j P_j rho P_j with P_j = |col j><col j|.
inline Mat channel(const Mat& basis, const Mat& rho) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    const Mat p = basis.col(j) * basis.col(j).adjoint();
    out += p * rho * p;
  }
  return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    best = std::max(best, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return best;
}

/// 95% critical value of the two-sample KS statistic.
inline double ks_critical(std::size_t n, std::size_t m) {
  return 1.358 * std::sqrt(double(n + m) / double(n * m));
}

/// Test-side sampler, independent of the library's streams.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Mat ginibre(int rows, int cols) {
    std::normal_distribution<double> g;
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = cplx(g(rng_), g(rng_));
    return m;
  }

  Vec ket(int n) {
    Vec v = ginibre(n, 1).col(0);
    return v / v.norm();
  }

  /// Unitary from modified Gram-Schmidt on a Ginibre matrix.
  Mat unitary(int n) {
    Mat m = ginibre(n, n);
    for (int c = 0; c < n; ++c) {
      for (int k = 0; k < c; ++k) m.col(c) -= m.col(k).dot(m.col(c)) * m.col(k);
      m.col(c) /= m.col(c).norm();
    }
    return m;
  }

  /// Random density matrix of the given rank (induced measure).
  Mat mixed(int n, int rank) {
    const Mat g = ginibre(n, rank);
    Mat rho = g * g.adjoint();
    return rho / rho.trace().real();
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
