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

/// \file montecarlo.hpp
/// Haar-random states and measurement bases, and the sampling experiments
/// built on them.
///
/// Reproducibility: trials are cut into fixed blocks of kBlockSize. Block b
/// of an experiment draws from its own mt19937_64 seeded with
/// seed_seq{seed_lo, seed_hi, purpose, b_lo, b_hi}, so results depend only
/// on (seed, config) and never on how many workers processed the blocks.
/// Block results are merged in block order.

#include "entgain/csv.hpp"
#include "entgain/entanglement.hpp"
#include "entgain/measurement.hpp"
#include "entgain/qstate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace entgain {

using Engine = std::mt19937_64;

inline constexpr std::int64_t kBlockSize = 2048;
/// A trial counts as a gain event when N_f > N_i + kGainThreshold.
inline constexpr double kGainThreshold = 1e-12;

/// Independent sub-streams of one experiment seed.
enum class StreamPurpose : std::uint32_t {
  kPairs = 1,        ///< (state, basis) pairs
  kConditional = 2,  ///< bases for a fixed input
  kFixedInput = 3,   ///< the random fixed input of a conditional histogram
  kPerInput = 4,     ///< one stream per sampled input of the distance study
};

inline Engine make_stream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

/// Vector of i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1/2)).
inline Vector complex_gaussian(Eigen::Index n, Engine& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = cplx(re, im);
  }
  return v;
}

inline Ket haar_ket(BipartiteDims dims, Engine& rng) {
  dims.validate();
  return Ket::normalized(dims, complex_gaussian(dims.total(), rng)).with_canonical_phase();
}

/// Haar unitary: QR of a Ginibre matrix with the phases of diag(R) moved
/// into Q.
inline Matrix haar_unitary(int n, Engine& rng) {
  Matrix g(n, n);
  for (int c = 0; c < n; ++c) g.col(c) = complex_gaussian(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  for (int c = 0; c < n; ++c) {
    const cplx r = qr.matrixQR()(c, c);
    const double mag = std::abs(r);
    if (mag > 0.0) q.col(c) *= r / mag;
  }
  return q;
}

inline ProjectiveBasis haar_basis(BipartiteDims dims, Engine& rng) {
  dims.validate();
  return ProjectiveBasis::unchecked(dims, haar_unitary(dims.total(), rng));
}

struct SamplerConfig {
  std::uint64_t seed = 0;
  int d = 2;
  std::int64_t trials = 1;
  int bins = 1000;
  int jobs = 1;

  BipartiteDims dims() const { return {d, d}; }
  double max_negativity() const { return 0.5 * (d - 1); }

  void validate() const {
    if (d < 2) throw std::invalid_argument("subsystem dimension must be at least 2");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (bins < 2) throw std::invalid_argument("bins must be at least 2");
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  }
};

/// Runs \p per_block(rng, begin, end) for every block of [0, trials) on up to
/// \p jobs threads and returns the block results in block order. Result must
/// be default-constructible.
template <typename Result, typename PerBlock>
std::vector<Result> run_blocks(std::int64_t trials, int jobs, std::uint64_t seed, StreamPurpose purpose,
                               PerBlock&& per_block, std::int64_t block_size = kBlockSize) {
  const std::int64_t blocks = (trials + block_size - 1) / block_size;
  std::vector<Result> results(static_cast<std::size_t>(blocks));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::int64_t b = next++; b < blocks; b = next++) {
      try {
        Engine rng = make_stream(seed, purpose, static_cast<std::uint64_t>(b));
        const std::int64_t begin = b * block_size;
        const std::int64_t end = std::min(trials, begin + block_size);
        results[static_cast<std::size_t>(b)] = per_block(rng, begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = blocks;
      }
    }
  };

  const int threads = static_cast<int>(std::min<std::int64_t>(std::max(jobs, 1), std::max<std::int64_t>(blocks, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

struct GainSample {
  double n_i = 0.0;
  double n_f = 0.0;
  /// Convexity bound max_j N(psi_j) of the basis used.
  double bound = 0.0;

  double gain() const { return n_f - n_i; }
};

/// Measures a pure input in a basis and records both negativities.
inline GainSample measure_pair(const Ket& phi, const ProjectiveBasis& basis, bool with_bound = false) {
  GainSample s;
  s.n_i = pure_negativity(phi);
  s.n_f = negativity(mix_projectors(basis, outcome_probabilities(basis, phi.amplitudes())), phi.dims());
  if (with_bound) s.bound = convexity_bound(basis);
  return s;
}

/// One random (state, basis) pair per trial, state drawn first.
inline std::vector<GainSample> gain_scatter(const SamplerConfig& config, bool with_bound = true) {
  config.validate();
  auto blocks = run_blocks<std::vector<GainSample>>(
      config.trials, config.jobs, config.seed, StreamPurpose::kPairs,
      [&](Engine& rng, std::int64_t begin, std::int64_t end) {
        std::vector<GainSample> out;
        out.reserve(static_cast<std::size_t>(end - begin));
        for (std::int64_t i = begin; i < end; ++i) {
          const Ket phi = haar_ket(config.dims(), rng);
          const ProjectiveBasis basis = haar_basis(config.dims(), rng);
          out.push_back(measure_pair(phi, basis, with_bound));
        }
        return out;
      });
  std::vector<GainSample> all;
  all.reserve(static_cast<std::size_t>(config.trials));
  for (auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  return all;
}

struct GainProbability {
  std::int64_t events = 0;
  std::int64_t trials = 0;
  double estimate = 0.0;
  /// 95% Wilson score interval.
  double ci_low = 0.0;
  double ci_high = 0.0;
  double max_gain = 0.0;
};

inline GainProbability wilson_interval(std::int64_t events, std::int64_t trials) {
  constexpr double z = 1.959963984540054;
  GainProbability out;
  out.events = events;
  out.trials = trials;
  const double n = double(trials);
  const double p = double(events) / n;
  out.estimate = p;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  out.ci_low = std::max(0.0, centre - half);
  out.ci_high = std::min(1.0, centre + half);
  return out;
}

/// Fraction of random (state, basis) pairs with N_f > N_i + 1e-12.
/// Requires at least 10^4 trials.
inline GainProbability gain_probability(const SamplerConfig& config) {
  config.validate();
  if (config.trials < 10000) throw std::invalid_argument("gain probability needs at least 10^4 trials");
  struct Tally {
    std::int64_t events = 0;
    double max_gain = -1.0;
  };
  const auto blocks = run_blocks<Tally>(
      config.trials, config.jobs, config.seed, StreamPurpose::kPairs,
      [&](Engine& rng, std::int64_t begin, std::int64_t end) {
        Tally t;
        for (std::int64_t i = begin; i < end; ++i) {
          const Ket phi = haar_ket(config.dims(), rng);
          const ProjectiveBasis basis = haar_basis(config.dims(), rng);
          const GainSample s = measure_pair(phi, basis);
          if (s.n_f > s.n_i + kGainThreshold) ++t.events;
          t.max_gain = std::max(t.max_gain, s.gain());
        }
        return t;
      });
  std::int64_t events = 0;
  double max_gain = -1.0;
  for (const Tally& t : blocks) {
    events += t.events;
    max_gain = std::max(max_gain, t.max_gain);
  }
  GainProbability out = wilson_interval(events, config.trials);
  out.max_gain = max_gain;
  return out;
}

/// Uniform histogram on [0, upper]; values at or above upper land in the
/// last bin.
class Histogram {
 public:
  Histogram(int bins, double upper) : upper_(upper), counts_(static_cast<std::size_t>(bins), 0) {
    if (bins < 2) throw std::invalid_argument("histogram needs at least 2 bins");
    if (!(upper > 0.0)) throw std::invalid_argument("histogram range must be positive");
  }

  void add(double x) {
    const int n = bins();
    int idx = static_cast<int>(std::floor(x / upper_ * n));
    idx = std::clamp(idx, 0, n - 1);
    ++counts_[static_cast<std::size_t>(idx)];
    ++total_;
  }

  void merge(const Histogram& other) {
    require_same_binning(other);
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
  }

  int bins() const { return static_cast<int>(counts_.size()); }
  double upper() const { return upper_; }
  std::int64_t total() const { return total_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  double bin_left(int i) const { return upper_ * i / bins(); }
  double bin_right(int i) const { return upper_ * (i + 1) / bins(); }

  std::vector<double> frequencies() const {
    std::vector<double> f(counts_.size(), 0.0);
    if (total_ == 0) return f;
    for (std::size_t i = 0; i < counts_.size(); ++i) f[i] = double(counts_[i]) / double(total_);
    return f;
  }

  bool same_binning(const Histogram& other) const {
    return bins() == other.bins() && upper_ == other.upper_;
  }

  void require_same_binning(const Histogram& other) const {
    if (!same_binning(other)) throw std::invalid_argument("histograms use different binning");
  }

 private:
  double upper_;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

/// sum_bins |p - q|, not halved; 0 for identical and 2 for disjoint histograms.
inline double statistical_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("statistical distance needs identical binning");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s;
}

inline double statistical_distance(const Histogram& p, const Histogram& q) {
  p.require_same_binning(q);
  return statistical_distance(p.frequencies(), q.frequencies());
}

/// sum_bins min(p, q).
inline double histogram_overlap(const Histogram& p, const Histogram& q) {
  p.require_same_binning(q);
  const auto fp = p.frequencies();
  const auto fq = q.frequencies();
  double s = 0.0;
  for (std::size_t i = 0; i < fp.size(); ++i) s += std::min(fp[i], fq[i]);
  return s;
}

struct NegativityDistributions {
  Ket input;                 ///< the fixed input of the conditional histogram
  Histogram conditional;     ///< P(N_f | input) over random bases
  Histogram unconditional;   ///< P(N_f) over random inputs and bases
  Histogram input_states;    ///< N of the random inputs
};

/// config.trials random bases for the fixed input (random when not given),
/// plus config.trials independent (state, basis) pairs.
inline NegativityDistributions negativity_distributions(const SamplerConfig& config,
                                                        std::optional<Ket> input = std::nullopt) {
  config.validate();
  const BipartiteDims dims = config.dims();
  if (input) {
    require_same_dims(dims, input->dims(), "negativity_distributions");
  } else {
    Engine rng = make_stream(config.seed, StreamPurpose::kFixedInput, 0);
    input = haar_ket(dims, rng);
  }
  const Ket phi = *input;
  const double top = config.max_negativity();

  auto cond_blocks = run_blocks<std::optional<Histogram>>(
      config.trials, config.jobs, config.seed, StreamPurpose::kConditional,
      [&](Engine& rng, std::int64_t begin, std::int64_t end) {
        Histogram h(config.bins, top);
        for (std::int64_t i = begin; i < end; ++i) h.add(measure_pair(phi, haar_basis(dims, rng)).n_f);
        return std::optional<Histogram>(std::move(h));
      });

  struct PairHists {
    Histogram post;
    Histogram in;
  };
  auto pair_blocks = run_blocks<std::optional<PairHists>>(
      config.trials, config.jobs, config.seed, StreamPurpose::kPairs,
      [&](Engine& rng, std::int64_t begin, std::int64_t end) {
        PairHists h{Histogram(config.bins, top), Histogram(config.bins, top)};
        for (std::int64_t i = begin; i < end; ++i) {
          const Ket state = haar_ket(dims, rng);
          const ProjectiveBasis basis = haar_basis(dims, rng);
          const GainSample s = measure_pair(state, basis);
          h.post.add(s.n_f);
          h.in.add(s.n_i);
        }
        return std::optional<PairHists>(std::move(h));
      });

  NegativityDistributions out{phi, Histogram(config.bins, top), Histogram(config.bins, top),
                              Histogram(config.bins, top)};
  for (const auto& h : cond_blocks) out.conditional.merge(*h);
  for (const auto& h : pair_blocks) {
    out.unconditional.merge(h->post);
    out.input_states.merge(h->in);
  }
  return out;
}

struct StatisticalDistanceResult {
  double mean = 0.0;
  double standard_error = 0.0;
  std::vector<double> per_input;
  Histogram pooled;  ///< P(N_f), the average of all conditional histograms
};

/// Mean of S(phi) = sum |P(N_f|phi) - P(N_f)| over \p inputs random inputs,
/// each measured in config.trials random bases. P(N_f) pools every sample.
inline StatisticalDistanceResult mean_statistical_distance(const SamplerConfig& config, std::int64_t inputs) {
  config.validate();
  if (inputs < 1) throw std::invalid_argument("need at least one input state");
  const BipartiteDims dims = config.dims();
  const double top = config.max_negativity();

  // Blocks of one input each, so input k always owns stream k.
  auto blocks = run_blocks<std::optional<Histogram>>(
      inputs, config.jobs, config.seed, StreamPurpose::kPerInput,
      [&](Engine& rng, std::int64_t, std::int64_t) {
        const Ket phi = haar_ket(dims, rng);
        Histogram h(config.bins, top);
        for (std::int64_t i = 0; i < config.trials; ++i) h.add(measure_pair(phi, haar_basis(dims, rng)).n_f);
        return std::optional<Histogram>(std::move(h));
      },
      1);

  StatisticalDistanceResult out{0.0, 0.0, {}, Histogram(config.bins, top)};
  std::vector<Histogram> all;
  all.reserve(blocks.size());
  for (auto& h : blocks) {
    out.pooled.merge(*h);
    all.push_back(std::move(*h));
  }
  const auto pooled = out.pooled.frequencies();
  for (const Histogram& h : all) out.per_input.push_back(statistical_distance(h.frequencies(), pooled));
  double sum = 0.0;
  for (double s : out.per_input) sum += s;
  out.mean = sum / double(out.per_input.size());
  if (out.per_input.size() > 1) {
    double ss = 0.0;
    for (double s : out.per_input) ss += (s - out.mean) * (s - out.mean);
    out.standard_error = std::sqrt(ss / double(out.per_input.size() - 1) / double(out.per_input.size()));
  }
  return out;
}

/// Columns n_i, gain.
inline void write_scatter_csv(std::ostream& out, const std::vector<GainSample>& samples) {
  csv::write_header(out, {"n_i", "gain"});
  for (const GainSample& s : samples) csv::write_row(out, s.n_i, s.gain());
}

/// Columns bin_left, bin_right, freq.
inline void write_histogram_csv(std::ostream& out, const Histogram& h) {
  csv::write_header(out, {"bin_left", "bin_right", "freq"});
  const auto f = h.frequencies();
  for (int i = 0; i < h.bins(); ++i) csv::write_row(out, h.bin_left(i), h.bin_right(i), f[static_cast<std::size_t>(i)]);
}

}  // namespace entgain
