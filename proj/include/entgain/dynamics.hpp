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

/// \file dynamics.hpp
/// Araki-Zurek dephasing of two qubits. A pointer coupling diagonal in the
/// measurement basis {|psi_j>} with a Cauchy-distributed free-particle
/// environment gives the exact reduced dynamics
///
///     rho_t = sum_{n,m} exp(-|l_n - l_m| t) exp(i t (g_n - g_m))
///                       <psi_n|rho_0|psi_m> |psi_n><psi_m|,
///
/// which tends to the non-selective measurement as t -> infinity but never
/// reaches it at finite t.

#include "entgain/csv.hpp"
#include "entgain/entanglement.hpp"
#include "entgain/measurement.hpp"
#include "entgain/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entgain {

struct ArakiZurekModel {
  ProjectiveBasis basis;
  std::vector<double> couplings;  ///< lambda_j, pairwise distinct
  std::vector<double> phases;     ///< gamma_j

  void validate() const {
    const auto n = static_cast<std::size_t>(basis.size());
    if (couplings.size() != n || phases.size() != n) {
      throw std::invalid_argument("Araki-Zurek model needs one coupling and one phase per basis state");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(couplings[i]) || !std::isfinite(phases[i])) {
        throw std::invalid_argument("couplings and phases must be finite");
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (couplings[i] == couplings[j]) {
          throw std::invalid_argument("couplings must be pairwise distinct");
        }
      }
    }
  }

  double coupling_spread() const {
    const auto [lo, hi] = std::minmax_element(couplings.begin(), couplings.end());
    return *hi - *lo;
  }
};

/// psi_0 = b|00> + sqrt(1-b^2)|11>, psi_1 = sqrt(1-b^2)|00> - b|11>,
/// psi_2 = |01>, psi_3 = |10>.
inline ProjectiveBasis dephasing_basis_2q(double b) {
  if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("parameter b must lie in [0, 1]");
  const double sb = std::sqrt(1.0 - b * b);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = b;   m(3, 0) = sb;
  m(0, 1) = sb;  m(3, 1) = -b;
  m(1, 2) = 1.0;
  m(2, 3) = 1.0;
  return ProjectiveBasis({2, 2}, std::move(m));
}

/// Couplings (0, mu, |mu| + 1.5, |mu| + 3) and phases (0, 0, 2, -2); the
/// psi_0/psi_1 coherence then decays at rate |mu|. mu = 1 gives the default
/// couplings (0, 1, 2.5, 4).
inline ArakiZurekModel default_araki_zurek(double b, double mu = 1.0) {
  if (!(mu != 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be finite and nonzero");
  ArakiZurekModel model{dephasing_basis_2q(b),
                        {0.0, mu, std::abs(mu) + 1.5, std::abs(mu) + 3.0},
                        {0.0, 0.0, 2.0, -2.0}};
  model.validate();
  return model;
}

/// b sqrt(1-b^2) |2b^2 - 1| (1 - exp(-|mu| t)) for rho_0 = |00><00|.
inline double closed_form_negativity(double b, double mu, double t) {
  return b * std::sqrt(1.0 - b * b) * std::abs(2.0 * b * b - 1.0) * (1.0 - std::exp(-std::abs(mu) * t));
}

/// rho_t expressed in the measurement basis.
inline Matrix evolve_in_measurement_basis(const ArakiZurekModel& model, const DensityMatrix& rho0,
                                          double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("evolution time must be nonnegative");
  require_same_dims(model.basis.dims(), rho0.dims(), "evolve");
  const Matrix& v = model.basis.states();
  Matrix c = v.adjoint() * rho0.matrix() * v;
  const Eigen::Index n = c.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index s = 0; s < n; ++s) {
      if (r == s) continue;
      const double decay = std::abs(model.couplings[r] - model.couplings[s]) * t;
      const double phase = t * (model.phases[r] - model.phases[s]);
      c(r, s) *= std::polar(std::exp(-decay), phase);
    }
  }
  return c;
}

inline DensityMatrix evolve(const ArakiZurekModel& model, const DensityMatrix& rho0, double t) {
  const Matrix& v = model.basis.states();
  return DensityMatrix::unchecked(rho0.dims(), v * evolve_in_measurement_basis(model, rho0, t) * v.adjoint());
}

inline double max_offdiagonal(const Matrix& m) {
  double best = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index s = 0; s < m.cols(); ++s) {
      if (r != s) best = std::max(best, std::abs(m(r, s)));
    }
  }
  return best;
}

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<double> negativities;
  /// Largest coherence |<psi_n|rho_t|psi_m>|, n != m.
  std::vector<double> max_offdiag;
  /// Negativity of the t -> infinity state (the measured state).
  double limit_negativity = 0.0;
};

inline Trajectory negativity_trajectory(const ArakiZurekModel& model, const DensityMatrix& rho0,
                                        const std::vector<double>& times) {
  model.validate();
  if (!std::is_sorted(times.begin(), times.end())) {
    throw std::invalid_argument("trajectory times must be sorted");
  }
  if (!times.empty() && !(times.front() >= 0.0)) {
    throw std::invalid_argument("trajectory times must be nonnegative");
  }
  Trajectory traj;
  traj.times = times;
  traj.limit_negativity = negativity(apply_nonselective(model.basis, rho0));
  const Matrix& v = model.basis.states();
  for (double t : times) {
    const Matrix c = evolve_in_measurement_basis(model, rho0, t);
    DensityMatrix rho_t = DensityMatrix::unchecked(rho0.dims(), v * c * v.adjoint());
    traj.negativities.push_back(negativity(rho_t));
    traj.max_offdiag.push_back(max_offdiagonal(c));
    traj.states.push_back(std::move(rho_t));
  }
  return traj;
}

/// Decay rate from a least-squares fit of ln|N_inf - N_t| against t.
/// Throws std::domain_error with fewer than 10 usable transient samples.
inline double fit_convergence_rate(const Trajectory& traj) {
  constexpr double kSignalFloor = 1e-11;
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < traj.times.size() && i < traj.negativities.size(); ++i) {
    const double gap = std::abs(traj.limit_negativity - traj.negativities[i]);
    if (gap > kSignalFloor) points.emplace_back(traj.times[i], std::log(gap));
  }
  if (points.size() < 10) {
    throw std::domain_error("no transient: " + std::to_string(points.size()) +
                            " samples above the noise floor, need 10");
  }
  double mt = 0.0;
  double my = 0.0;
  for (const auto& [t, y] : points) {
    mt += t;
    my += y;
  }
  mt /= double(points.size());
  my /= double(points.size());
  double sty = 0.0;
  double stt = 0.0;
  for (const auto& [t, y] : points) {
    sty += (t - mt) * (y - my);
    stt += (t - mt) * (t - mt);
  }
  if (!(stt > 0.0)) throw std::domain_error("no transient: all samples at one time");
  return -sty / stt;
}

/// Numerical witness that the dynamics never equals the measurement at a
/// finite time: every sampled state keeps a coherence above
/// exp(-(l_max - l_min) t) * c_0 / 2, c_0 the largest initial coherence.
/// Throws std::invalid_argument when rho_0 has no coherence of at least
/// 1e-3 in the measurement basis.
inline bool never_projective_check(const ArakiZurekModel& model, const DensityMatrix& rho0,
                                   const std::vector<double>& times) {
  model.validate();
  const double initial = max_offdiagonal(evolve_in_measurement_basis(model, rho0, 0.0));
  if (initial < 1e-3) {
    throw std::invalid_argument("initial state has no coherence in the measurement basis");
  }
  const double spread = model.coupling_spread();
  for (double t : times) {
    const double floor = std::exp(-spread * t) * initial / 2.0;
    const double coherence = max_offdiagonal(evolve_in_measurement_basis(model, rho0, t));
    if (!(coherence > 0.0) || !(coherence > floor)) return false;
  }
  return true;
}

/// Columns t, negativity, max_offdiag.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  csv::write_header(out, {"t", "negativity", "max_offdiag"});
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    csv::write_row(out, traj.times[i], traj.negativities[i], traj.max_offdiag[i]);
  }
}

}  // namespace entgain
