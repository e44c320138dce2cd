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

#include "entgain/constructions.hpp"
#include "entgain/montecarlo.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace entgain {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double channel_negativity(const ProjectiveBasis& basis, const Ket& phi) {
  const Matrix out = oracle::channel(basis.states(), phi.projector());
  return oracle::negativity(out, basis.dims().d1, basis.dims().d2);
}

/// Almost surely satisfies the state construction hypothesis.
ProjectiveBasis random_basis(oracle::Sampler& s, int d) { return ProjectiveBasis({d, d}, s.unitary(d * d)); }

TEST(StateForMeasurement, ParametricBasisExample) {
  const ProjectiveBasis basis = opt_basis_2q(0.95);
  const StateConstruction c = state_for_measurement(basis);
  EXPECT_FALSE(c.window.empty());
  EXPECT_NEAR(c.epsilon, c.window.midpoint(), 1e-15);
  EXPECT_GT(channel_negativity(basis, c.state) - oracle::negativity(c.state.projector(), 2, 2), 0.0);
}

TEST(StateForMeasurement, WindowFormula) {
  // psi_0 = 0.6|00> + 0.8|11>: p = (0.64, 0.36), beta = 1.4/sqrt 2, dN = 1/2 - 0.48.
  const SchmidtForm f = schmidt(Ket({2, 2}, opt_basis_2q(0.6).states().col(0)));
  const EpsilonWindow w = epsilon_window(f);
  const double beta = 1.4 / std::sqrt(2.0);
  const double dn = 0.5 - 0.48;
  const double expected = std::min(std::sqrt(2.0) * 0.36, 2 * beta * dn / (2 * (1 - beta * beta) + dn));
  EXPECT_NEAR(w.upper, expected, 1e-14);
  EXPECT_EQ(w.lower, 0.0);
}

TEST(StateForMeasurement, RejectsHypothesisViolations) {
  EXPECT_THROW(state_for_measurement(bell_basis()), std::domain_error);
  EXPECT_THROW(state_for_measurement(computational_basis({2, 2})), std::domain_error);
  EXPECT_THROW(state_for_measurement(opt_basis_2q(0.95), 10.0), std::invalid_argument);
  EXPECT_THROW(state_for_measurement(opt_basis_2q(0.95), 0.0), std::invalid_argument);
}

TEST(StateForMeasurement, PositiveGainOnRandomBases) {
  oracle::Sampler s(61);
  for (int d : {2, 3}) {
    int built = 0;
    for (int t = 0; t < 1000; ++t) {
      const ProjectiveBasis basis = random_basis(s, d);
      const StateConstruction mid = state_for_measurement(basis);
      ASSERT_GT(gain(basis, mid.state), 0.0) << "d=" << d << " t=" << t;
      const StateConstruction small = state_for_measurement(basis, 0.1 * mid.window.upper);
      ASSERT_GT(gain(basis, small.state), 0.0) << "d=" << d << " t=" << t;
      ++built;
    }
    EXPECT_EQ(built, 1000);
  }
}

TEST(MeasurementForState, Examples) {
  const Ket product = Ket::computational({2, 2}, 0, 0);
  const ProjectiveBasis b1 = measurement_for_state(product);
  EXPECT_NEAR(channel_negativity(b1, product), 0.25, 1e-12);

  const Ket k = ket_in_2q(0.6);
  const ProjectiveBasis b2 = measurement_for_state(k);
  EXPECT_NEAR(channel_negativity(b2, k), 0.49, 1e-12);
  EXPECT_NEAR(gain(b2, k), 0.01, 1e-12);

  const Ket q = Ket::computational({3, 3}, 0, 0);
  EXPECT_NEAR(channel_negativity(measurement_for_state(q), q), 0.5, 1e-12);
  EXPECT_NEAR(measurement_for_state_final_negativity(q), 0.5, 1e-15);
}

TEST(MeasurementForState, ChannelOutputIsEqualMixture) {
  const Ket k = ket_in_2q(0.3);
  const ProjectiveBasis basis = measurement_for_state(k);
  const Matrix out = apply_nonselective(basis, k).matrix();
  const Matrix expected = 0.5 * k.projector() + 0.5 * max_entangled(2).projector();
  EXPECT_LT(oracle::max_abs_diff(out, expected), 1e-12);
}

TEST(MeasurementForState, RejectsMaximallyEntangled) {
  EXPECT_THROW(measurement_for_state(max_entangled(2)), std::domain_error);
  EXPECT_THROW(measurement_for_state(max_entangled(3)), std::domain_error);
}

TEST(MeasurementForState, GainFormulaOnHaarStates) {
  for (int d : {2, 3}) {
    Engine rng = make_stream(62, StreamPurpose::kPairs, static_cast<std::uint64_t>(d));
    for (int t = 0; t < 1000; ++t) {
      const Ket phi = haar_ket({d, d}, rng);
      const double ni = pure_negativity(phi);
      const ProjectiveBasis basis = measurement_for_state(phi);
      const double g = negativity(apply_nonselective(basis, phi)) - ni;
      ASSERT_GT(g, 0.0);
      ASSERT_NEAR(g, 0.25 * (d - 1) - 0.5 * ni, 1e-10);
    }
  }
}

TEST(TwoQubit, ParameterNegativityRoundTrip) {
  for (int i = 0; i <= 20; ++i) {
    const double a = kInvSqrt2 * i / 20.0;
    EXPECT_NEAR(parameter_from_negativity(negativity_from_parameter(a)), a, 1e-7);
  }
}

TEST(TwoQubit, ClosedFormMatchesChannelOnGrid) {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double a = kInvSqrt2 * i / 49.0;
      const double b = kInvSqrt2 * j / 49.0;
      const double predicted = predict_final_negativity_2q({negativity_from_parameter(a), negativity_from_parameter(b)});
      worst = std::max(worst, std::abs(predicted - channel_negativity(opt_basis_2q(b), ket_in_2q(a))));
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(TwoQubit, PredictExamples) {
  EXPECT_NEAR(predict_final_negativity_2q({0.0, 1.0 / (2 * std::sqrt(2.0))}), 0.25, 1e-15);
  for (double n : {0.0, 0.1, 0.25, 0.4, 0.5}) EXPECT_NEAR(predict_final_negativity_2q({n, n}), n, 1e-15);
  for (double n : {0.0, 0.1, 0.3}) EXPECT_NEAR(predict_final_negativity_2q({n, 0.5}), n, 1e-15);
  EXPECT_THROW(predict_final_negativity_2q({0.6, 0.1}), std::invalid_argument);
  EXPECT_THROW(predict_final_negativity_2q({0.1, -0.1}), std::invalid_argument);
}

TEST(TwoQubit, GainCondition) {
  EXPECT_TRUE(gain_condition_2q({0.1, 0.3}));
  EXPECT_FALSE(gain_condition_2q({0.3, 0.1}));
  EXPECT_FALSE(gain_condition_2q({0.2, 0.5}));
  // Agrees with the sign of the closed-form gain away from the boundaries.
  for (int i = 1; i < 20; ++i) {
    for (int j = 1; j < 20; ++j) {
      const TwoQubitGainModel m{0.5 * i / 20.0, 0.5 * j / 20.0};
      if (i == j) continue;
      EXPECT_EQ(gain_condition_2q(m), predict_final_negativity_2q(m) > m.n_i) << i << "," << j;
    }
  }
}

TEST(TwoQubit, OptimalMeasurementExamples) {
  const OptimalMeasurement zero = optimal_measurement_2q(0.0);
  EXPECT_NEAR(zero.n_b_max, 1.0 / (2 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(zero.gain_max, 0.25, 1e-15);
  const OptimalMeasurement half = optimal_measurement_2q(0.5);
  EXPECT_NEAR(half.n_b_max, 0.5, 1e-15);
  EXPECT_NEAR(half.gain_max, 0.0, 1e-15);
  const OptimalMeasurement q = optimal_measurement_2q(0.25);
  EXPECT_NEAR(q.n_b_max, std::sqrt(1.5) / (2 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(q.n_b_max, 0.4330, 1e-4);
  EXPECT_NEAR(q.gain_max, 0.125, 1e-15);
  EXPECT_THROW(optimal_measurement_2q(0.51), std::invalid_argument);
}

TEST(TwoQubit, OptimumConsistentWithClosedForm) {
  for (int i = 0; i <= 100; ++i) {
    const double ni = 0.5 * i / 100.0;
    const OptimalMeasurement best = optimal_measurement_2q(ni);
    EXPECT_NEAR(predict_final_negativity_2q({ni, best.n_b_max}) - ni, best.gain_max, 1e-12) << ni;
  }
}

TEST(TwoQubit, GridMaximisationRecoversOptimum) {
  const int grid = 20000;
  for (int i = 0; i < 100; ++i) {
    const double ni = 0.5 * i / 100.0;
    double best_nb = 0.0;
    double best_nf = -1.0;
    for (int k = 0; k <= grid; ++k) {
      const double nb = 0.5 * k / grid;
      const double nf = predict_final_negativity_2q({ni, nb});
      if (nf > best_nf) {
        best_nf = nf;
        best_nb = nb;
      }
    }
    const OptimalMeasurement opt = optimal_measurement_2q(ni);
    EXPECT_NEAR(best_nb, opt.n_b_max, 2.0 * 0.5 / grid) << ni;
    EXPECT_NEAR(best_nf - ni, opt.gain_max, 1e-7) << ni;
  }
}

TEST(TwoQubit, OptimalBasisChannelCheck) {
  for (double ni : {0.0, 0.1, 0.2, 0.3, 0.45}) {
    const OptimalMeasurement opt = optimal_measurement_2q(ni);
    const double a = parameter_from_negativity(ni);
    const double b = parameter_from_negativity(opt.n_b_max);
    EXPECT_NEAR(channel_negativity(opt_basis_2q(b), ket_in_2q(a)) - ni, opt.gain_max, 1e-10) << ni;
  }
}

TEST(TwoQubit, RandomPairsStayBelowGainLine) {
  Engine rng = make_stream(63, StreamPurpose::kPairs, 0);
  for (int t = 0; t < 20000; ++t) {
    const Ket phi = haar_ket({2, 2}, rng);
    const ProjectiveBasis basis = haar_basis({2, 2}, rng);
    const GainSample s = measure_pair(phi, basis);
    ASSERT_LE(s.gain(), 0.25 - 0.5 * s.n_i + 1e-9);
  }
}

TEST(LowerBound, TwoQubitsEqualsExact) {
  for (double a : {0.1, 0.3, 0.5, 0.7}) {
    for (double b : {0.05, 0.2, 0.4, 0.6}) {
      const Ket phi = ket_in_2q(a);
      const ProjectiveBasis basis = opt_basis_2q(b, 0.3);
      EXPECT_NEAR(neg_lower_bound_qudit(basis, phi), channel_negativity(basis, phi), 1e-10) << a << "," << b;
    }
  }
}

TEST(LowerBound, RandomBlockBasesAtThreeLevels) {
  oracle::Sampler s(64);
  for (int t = 0; t < 1000; ++t) {
    const Ket phi({3, 3}, s.ket(9));
    const SchmidtForm f = schmidt(phi);
    const Matrix w = s.unitary(3);
    std::vector<Vector> seed;
    for (int j = 0; j < 3; ++j) {
      Vector v = Vector::Zero(9);
      for (int i = 0; i < 3; ++i) v += w(i, j) * detail::schmidt_product(f, i);
      seed.push_back(v);
    }
    const ProjectiveBasis basis({3, 3}, detail::complete_basis(seed, 9));
    ASSERT_LE(neg_lower_bound_qudit(basis, phi), channel_negativity(basis, phi) + 1e-10) << t;
  }
}

TEST(LowerBound, ComputationalBlockGivesZero) {
  oracle::Sampler s(65);
  const Ket phi({3, 3}, s.ket(9));
  const SchmidtForm f = schmidt(phi);
  std::vector<Vector> seed;
  for (int i = 0; i < 3; ++i) seed.push_back(detail::schmidt_product(f, i));
  const ProjectiveBasis basis({3, 3}, detail::complete_basis(seed, 9));
  EXPECT_NEAR(neg_lower_bound_qudit(basis, phi), 0.0, 1e-14);
  EXPECT_NEAR(neg_lower_bound(Matrix::Identity(3, 3), RealVector::Constant(3, 1.0 / std::sqrt(3.0))), 0.0, 1e-15);
}

TEST(LowerBound, RejectsBrokenBlockStructure) {
  oracle::Sampler s(66);
  const Ket phi({3, 3}, s.ket(9));
  EXPECT_THROW(neg_lower_bound_qudit(ProjectiveBasis({3, 3}, s.unitary(9)), phi), std::invalid_argument);
}

}  // namespace
}  // namespace entgain
