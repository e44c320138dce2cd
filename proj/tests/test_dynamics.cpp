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

#include "entgain/dynamics.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace entgain {
namespace {

const DensityMatrix kZeroZero = DensityMatrix::pure(Ket::computational({2, 2}, 0, 0));

std::vector<double> grid(double tmax, int points) {
  std::vector<double> t;
  for (int i = 0; i < points; ++i) t.push_back(tmax * i / (points - 1));
  return t;
}

TEST(ArakiZurek, DefaultModel) {
  const ArakiZurekModel m = default_araki_zurek(0.3);
  EXPECT_EQ(m.couplings, (std::vector<double>{0.0, 1.0, 2.5, 4.0}));
  EXPECT_EQ(m.phases, (std::vector<double>{0.0, 0.0, 2.0, -2.0}));
  EXPECT_THROW(default_araki_zurek(0.3, 0.0), std::invalid_argument);
  ArakiZurekModel bad = m;
  bad.couplings[2] = bad.couplings[1];
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Evolve, TimeZeroIsIdentity) {
  oracle::Sampler s(71);
  const DensityMatrix rho({2, 2}, s.mixed(4, 4));
  const ArakiZurekModel m = default_araki_zurek(0.4);
  EXPECT_LT(oracle::max_abs_diff(evolve(m, rho, 0.0).matrix(), rho.matrix()), 1e-15);
  EXPECT_THROW(evolve(m, rho, -1.0), std::invalid_argument);
}

TEST(Evolve, LongTimeLimitIsTheMeasurement) {
  oracle::Sampler s(72);
  for (double mu : {1.0, -2.0, 0.5}) {
    const ArakiZurekModel m = default_araki_zurek(0.35, mu);
    const DensityMatrix rho({2, 2}, s.mixed(4, 4));
    const Matrix limit = evolve(m, rho, 50.0 / std::abs(mu)).matrix();
    EXPECT_LT(oracle::max_abs_diff(limit, oracle::channel(m.basis.states(), rho.matrix())), 1e-12) << mu;
  }
}

TEST(Evolve, CoherenceDecay) {
  const double b = 0.3;
  for (double mu : {1.0, 2.0}) {
    const ArakiZurekModel m = default_araki_zurek(b, mu);
    for (double t : {0.0, 0.5, 1.0, 3.0}) {
      const Matrix c = evolve_in_measurement_basis(m, kZeroZero, t);
      EXPECT_NEAR(std::abs(c(0, 1)), std::exp(-std::abs(mu) * t) * b * std::sqrt(1 - b * b), 1e-14);
    }
  }
}

TEST(Evolve, PreservesStateProperties) {
  oracle::Sampler s(73);
  const ArakiZurekModel m = default_araki_zurek(0.2, 1.3);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho({2, 2}, s.mixed(4, 1 + s.index(4)));
    const Matrix out = evolve(m, rho, s.uniform(0.0, 5.0)).matrix();
    ASSERT_LT(std::abs(out.trace() - 1.0), 1e-12);
    ASSERT_LT(hermiticity_defect(out), 1e-12);
    ASSERT_GE(oracle::eigenvalues(out).front(), -1e-10);
  }
}

TEST(Evolve, MarkovComposition) {
  oracle::Sampler s(74);
  const ArakiZurekModel m = default_araki_zurek(0.45, 0.7);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho({2, 2}, s.mixed(4, 4));
    const double t = s.uniform(0.0, 3.0);
    const double u = s.uniform(0.0, 3.0);
    const DensityMatrix step = evolve(m, rho, u);
    ASSERT_LT(oracle::max_abs_diff(evolve(m, step, t).matrix(), evolve(m, rho, t + u).matrix()), 1e-12);
  }
}

TEST(Evolve, OffDiagonalRatesMatchCouplingGaps) {
  oracle::Sampler s(75);
  const ArakiZurekModel m = default_araki_zurek(0.25);
  const DensityMatrix rho({2, 2}, s.mixed(4, 4));
  const Matrix c0 = evolve_in_measurement_basis(m, rho, 0.0);
  const Matrix c1 = evolve_in_measurement_basis(m, rho, 1.7);
  for (int r = 0; r < 4; ++r) {
    for (int q = 0; q < 4; ++q) {
      const double rate = r == q ? 0.0 : std::abs(m.couplings[r] - m.couplings[q]);
      EXPECT_NEAR(std::abs(c1(r, q)), std::exp(-rate * 1.7) * std::abs(c0(r, q)), 1e-14);
    }
  }
}

TEST(Trajectory, ClosedFormExamples) {
  EXPECT_NEAR(closed_form_negativity(0.5, 1.0, std::log(2.0)), 0.5 * std::sqrt(0.75) * 0.5 * 0.5, 1e-15);
  EXPECT_NEAR(closed_form_negativity(0.5, 1.0, std::log(2.0)), 0.1083, 1e-4);
  const ArakiZurekModel m = default_araki_zurek(0.5);
  const Trajectory traj = negativity_trajectory(m, kZeroZero, {0.0, std::log(2.0)});
  EXPECT_EQ(traj.negativities[0], 0.0);
  EXPECT_NEAR(traj.negativities[1], 0.1083, 1e-4);
}

TEST(Trajectory, MatchesClosedFormOnGrid) {
  for (double b : {0.1, 0.3, 0.5, 0.65}) {
    for (double mu : {1.0, -0.5, 2.0}) {
      const Trajectory traj = negativity_trajectory(default_araki_zurek(b, mu), kZeroZero, grid(10.0, 100));
      for (std::size_t i = 0; i < traj.times.size(); ++i) {
        ASSERT_NEAR(traj.negativities[i], closed_form_negativity(b, mu, traj.times[i]), 1e-10);
      }
      EXPECT_TRUE(std::is_sorted(traj.negativities.begin(), traj.negativities.end()));
      EXPECT_NEAR(traj.limit_negativity, b * std::sqrt(1 - b * b) * std::abs(2 * b * b - 1), 1e-12);
    }
  }
}

TEST(Trajectory, MaximallyEntangledBasisStaysSeparable) {
  const Trajectory traj = negativity_trajectory(default_araki_zurek(1.0 / std::sqrt(2.0)), kZeroZero, grid(10.0, 50));
  for (double n : traj.negativities) EXPECT_LT(n, 1e-12);
  EXPECT_THROW(fit_convergence_rate(traj), std::domain_error);
}

TEST(Trajectory, RejectsUnsortedOrNegativeTimes) {
  const ArakiZurekModel m = default_araki_zurek(0.3);
  EXPECT_THROW(negativity_trajectory(m, kZeroZero, {1.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(negativity_trajectory(m, kZeroZero, {-1.0, 0.5}), std::invalid_argument);
}

TEST(FitConvergenceRate, RecoversCoupling) {
  const Trajectory t2 = negativity_trajectory(default_araki_zurek(0.3, 2.0), kZeroZero, grid(5.0, 100));
  EXPECT_NEAR(fit_convergence_rate(t2), 2.0, 0.02);
  const Trajectory t05 = negativity_trajectory(default_araki_zurek(0.3, 0.5), kZeroZero, grid(20.0, 100));
  EXPECT_NEAR(fit_convergence_rate(t05), 0.5, 0.005);
}

TEST(FitConvergenceRate, SyntheticClosedForm) {
  Trajectory traj;
  traj.limit_negativity = closed_form_negativity(0.4, 2.0, 1e9);
  for (double t : grid(6.0, 60)) {
    traj.times.push_back(t);
    traj.negativities.push_back(closed_form_negativity(0.4, 2.0, t));
  }
  EXPECT_NEAR(fit_convergence_rate(traj), 2.0, 1e-6);
}

TEST(NeverProjective, Examples) {
  const ArakiZurekModel m = default_araki_zurek(0.3);
  EXPECT_TRUE(never_projective_check(m, kZeroZero, grid(30.0, 301)));
  const DensityMatrix diagonal = DensityMatrix::pure(Ket::computational({2, 2}, 0, 1));
  EXPECT_THROW(never_projective_check(m, diagonal, grid(1.0, 5)), std::invalid_argument);
}

TEST(NeverProjective, CoherenceRatioBetweenCouplings) {
  const double b = 0.3;
  const ArakiZurekModel m1 = default_araki_zurek(b, 1.5);
  const ArakiZurekModel m2 = default_araki_zurek(b, 0.5);
  for (double t : {0.5, 1.0, 4.0}) {
    const double c1 = std::abs(evolve_in_measurement_basis(m1, kZeroZero, t)(0, 1));
    const double c2 = std::abs(evolve_in_measurement_basis(m2, kZeroZero, t)(0, 1));
    EXPECT_NEAR(c1 / c2, std::exp(-(1.5 - 0.5) * t), 1e-10);
  }
}

TEST(Trajectory, CsvColumns) {
  const Trajectory traj = negativity_trajectory(default_araki_zurek(0.5), kZeroZero, grid(1.0, 3));
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  const std::string out = os.str();
  EXPECT_EQ(out.substr(0, out.find('\n')), "t,negativity,max_offdiag");
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 4);
}

}  // namespace
}  // namespace entgain
