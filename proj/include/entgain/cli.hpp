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

/// \file cli.hpp
/// The `entgain` command line. Every subcommand writes one CSV or JSON
/// document (to --output or stdout) that starts with a metadata header
/// holding the tool version, subcommand and resolved configuration. The
/// worker count (--jobs) is not part of the echoed configuration, so output
/// bytes depend only on the experiment parameters and the seed.
///
/// Exit codes: 0 success, 2 invalid arguments or inputs, 1 other failures.

#include "entgain/basis_io.hpp"
#include "entgain/bell_reduction.hpp"
#include "entgain/constructions.hpp"
#include "entgain/csv.hpp"
#include "entgain/dynamics.hpp"
#include "entgain/entanglement.hpp"
#include "entgain/measurement.hpp"
#include "entgain/montecarlo.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef ENTGAIN_VERSION
#define ENTGAIN_VERSION "0.0.0"
#endif

namespace entgain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr const char* kSeedEnv = "ENTGAIN_SEED";

/// Thrown for argument combinations CLI11 cannot express.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long value = std::stoull(env, &used, 10);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string(kSeedEnv) + " is not an unsigned integer");
  }
  return 0;
}

namespace detail {

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline json histogram_to_json(const Histogram& h) {
  return {{"bins", h.bins()}, {"upper", h.upper()}, {"total", h.total()}, {"freq", h.frequencies()}};
}

inline void require_parameter_range(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0 / std::sqrt(2.0))) {
    throw ValidationError(std::string(name) + " must lie in [0, 1/sqrt(2)]");
  }
}

struct Document {
  std::string command;
  json config = json::object();
  std::string format;
  std::string output;
};

inline json metadata(const Document& doc) {
  return {{"tool", "entgain"}, {"version", ENTGAIN_VERSION}, {"command", doc.command}, {"config", doc.config}};
}

/// Opens --output or falls back to \p fallback.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline void write_json(const Document& doc, json result, std::ostream& fallback) {
  Sink sink(doc.output, fallback);
  json out = {{"meta", metadata(doc)}, {"result", std::move(result)}};
  sink.get() << out.dump(2) << '\n';
}

inline void write_csv(const Document& doc, const std::function<void(std::ostream&)>& body,
                      std::ostream& fallback) {
  Sink sink(doc.output, fallback);
  std::ostream& os = sink.get();
  csv::write_comment(os, std::string("entgain ") + ENTGAIN_VERSION);
  csv::write_comment(os, "command: " + doc.command);
  csv::write_comment(os, "config: " + doc.config.dump());
  body(os);
}

struct MonteCarloFlags {
  int d = 2;
  std::int64_t trials = 100000;
  int bins = 1000;
  std::optional<std::uint64_t> seed;
  int jobs = 1;

  SamplerConfig resolve(json& config) const {
    SamplerConfig c;
    c.d = d;
    c.trials = trials;
    c.bins = bins;
    c.seed = seed ? *seed : default_seed();
    c.jobs = jobs;
    c.validate();
    config["d"] = c.d;
    config["trials"] = c.trials;
    config["seed"] = c.seed;
    return c;
  }
};

inline void add_common(CLI::App* sub, Document& doc, const std::string& default_format) {
  sub->add_option("-o,--output", doc.output, "Output file (default: stdout)");
  sub->add_option("--format", doc.format, "Output format (default: " + default_format + ")")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->parse_complete_callback([&doc, default_format] {
    if (doc.format.empty()) doc.format = default_format;
  });
}

inline void add_sampling(CLI::App* sub, MonteCarloFlags& f, bool with_bins) {
  sub->add_option("--d", f.d, "Subsystem dimension (two d-level systems)")->check(CLI::Range(2, 64))->capture_default_str();
  sub->add_option("--trials", f.trials, "Number of samples")->check(CLI::PositiveNumber)->capture_default_str();
  if (with_bins) sub->add_option("--bins", f.bins, "Histogram bins over [0, (d-1)/2]")->check(CLI::Range(2, 1000000))->capture_default_str();
  sub->add_option("--seed", f.seed, std::string("RNG seed (default: $") + kSeedEnv + " or 0)");
  sub->add_option("--jobs", f.jobs, "Worker threads; does not change the output")->check(CLI::Range(1, 1024))->capture_default_str();
}

}  // namespace detail

/// Parses \p argv and runs one subcommand. Regular output goes to \p out
/// unless --output is given; diagnostics go to \p err.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  using detail::Document;
  CLI::App app{"Entanglement gain in non-selective global projective measurements", "entgain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ENTGAIN_VERSION);

  Document doc;
  detail::MonteCarloFlags mc;
  std::function<void()> action;

  // gain-scatter ------------------------------------------------------------
  auto* scatter = app.add_subcommand("gain-scatter", "Random (state, basis) pairs: N_i and N_f - N_i");
  detail::add_common(scatter, doc, "csv");
  detail::add_sampling(scatter, mc, false);
  scatter->callback([&] {
    action = [&] {
      doc.command = "gain-scatter";
      const SamplerConfig config = mc.resolve(doc.config);
      const auto samples = gain_scatter(config);
      if (doc.format == "csv") {
        detail::write_csv(doc, [&](std::ostream& os) { write_scatter_csv(os, samples); }, out);
        return;
      }
      double max_gain = -1.0;
      std::int64_t above_line = 0;
      std::int64_t above_bound = 0;
      for (const GainSample& s : samples) {
        max_gain = std::max(max_gain, s.gain());
        if (config.d == 2 && s.gain() > 0.25 - 0.5 * s.n_i + 1e-9) ++above_line;
        if (s.n_f > s.bound + 1e-10) ++above_bound;
      }
      json result = {{"samples", samples.size()}, {"max_gain", max_gain}, {"convexity_violations", above_bound}};
      if (config.d == 2) result["gain_line_violations"] = above_line;
      detail::write_json(doc, result, out);
    };
  });

  // gain-prob ---------------------------------------------------------------
  auto* prob = app.add_subcommand("gain-prob", "Probability that a random measurement increases negativity");
  detail::add_common(prob, doc, "json");
  detail::add_sampling(prob, mc, false);
  prob->callback([&] {
    action = [&] {
      doc.command = "gain-prob";
      const SamplerConfig config = mc.resolve(doc.config);
      const GainProbability p = gain_probability(config);
      if (doc.format == "csv") {
        detail::write_csv(doc, [&](std::ostream& os) {
          csv::write_header(os, {"estimate", "ci_low", "ci_high", "events", "trials"});
          csv::write_row(os, p.estimate, p.ci_low, p.ci_high, p.events, p.trials);
        }, out);
        return;
      }
      detail::write_json(doc, {{"estimate", p.estimate}, {"ci", {p.ci_low, p.ci_high}}, {"ci_level", 0.95},
                               {"events", p.events}, {"trials", p.trials}, {"threshold", kGainThreshold},
                               {"max_gain", p.max_gain}, {"seed", config.seed}}, out);
    };
  });

  // distributions -----------------------------------------------------------
  auto* dist = app.add_subcommand("distributions", "Negativity histograms P(N_f|phi), P(N_f) and of the inputs");
  std::string input_path;
  std::string which = "unconditional";
  detail::add_common(dist, doc, "csv");
  detail::add_sampling(dist, mc, true);
  dist->add_option("--input", input_path, "Fixed input ket (JSON); random when omitted")->check(CLI::ExistingFile);
  dist->add_option("--histogram", which, "Histogram written in CSV mode")
      ->check(CLI::IsMember({"conditional", "unconditional", "input"}))
      ->capture_default_str();
  dist->callback([&] {
    action = [&] {
      doc.command = "distributions";
      const SamplerConfig config = mc.resolve(doc.config);
      doc.config["bins"] = config.bins;
      std::optional<Ket> input;
      if (!input_path.empty()) input = ket_from_json(read_json_file(input_path));
      doc.config["input"] = input ? to_json(*input) : json(nullptr);
      const NegativityDistributions r = negativity_distributions(config, input);
      if (doc.format == "csv") {
        doc.config["histogram"] = which;
        const Histogram& h = which == "conditional" ? r.conditional
                             : which == "input"     ? r.input_states
                                                    : r.unconditional;
        detail::write_csv(doc, [&](std::ostream& os) { write_histogram_csv(os, h); }, out);
        return;
      }
      detail::write_json(doc, {{"input", to_json(r.input)},
                               {"input_negativity", pure_negativity(r.input)},
                               {"conditional", detail::histogram_to_json(r.conditional)},
                               {"unconditional", detail::histogram_to_json(r.unconditional)},
                               {"input_states", detail::histogram_to_json(r.input_states)},
                               {"statistical_distance", statistical_distance(r.conditional, r.unconditional)},
                               {"input_output_overlap", histogram_overlap(r.input_states, r.unconditional)}},
                         out);
    };
  });

  // statdist ----------------------------------------------------------------
  auto* statdist = app.add_subcommand("statdist", "Mean statistical distance between P(N_f|phi) and P(N_f)");
  std::int64_t inputs = 1000;
  bool full_scale = false;
  detail::add_common(statdist, doc, "json");
  detail::add_sampling(statdist, mc, true);
  statdist->add_option("--inputs", inputs, "Number of random input states")->check(CLI::PositiveNumber)->capture_default_str();
  statdist->add_flag("--full-scale", full_scale, "Use 10^4 inputs x 10^4 bases");
  statdist->callback([&] {
    action = [&] {
      doc.command = "statdist";
      if (full_scale) {
        inputs = 10000;
        mc.trials = 10000;
      }
      const SamplerConfig config = mc.resolve(doc.config);
      doc.config["bins"] = config.bins;
      doc.config["inputs"] = inputs;
      const StatisticalDistanceResult r = mean_statistical_distance(config, inputs);
      if (doc.format == "csv") {
        detail::write_csv(doc, [&](std::ostream& os) {
          csv::write_header(os, {"input", "distance"});
          for (std::size_t k = 0; k < r.per_input.size(); ++k) csv::write_row(os, static_cast<std::int64_t>(k), r.per_input[k]);
        }, out);
        return;
      }
      detail::write_json(doc, {{"mean", r.mean}, {"standard_error", r.standard_error}, {"inputs", r.per_input.size()},
                               {"bases_per_input", config.trials}, {"seed", config.seed}}, out);
    };
  });

  // evolve ------------------------------------------------------------------
  auto* ev = app.add_subcommand("evolve", "Araki-Zurek negativity trajectory from |00>");
  double b = 0.5;
  double mu = 1.0;
  double tmax = 10.0;
  int steps = 100;
  detail::add_common(ev, doc, "csv");
  ev->add_option("--b", b, "Basis parameter b in [0, 1/sqrt(2)]")->capture_default_str();
  ev->add_option("--mu", mu, "Coupling difference lambda_1 - lambda_0 (nonzero)")->capture_default_str();
  ev->add_option("--tmax", tmax, "Final time")->check(CLI::NonNegativeNumber)->capture_default_str();
  ev->add_option("--steps", steps, "Time steps; steps + 1 samples on [0, tmax]")->check(CLI::Range(1, 100000000))->capture_default_str();
  ev->callback([&] {
    action = [&] {
      doc.command = "evolve";
      detail::require_parameter_range(b, "b");
      if (mu == 0.0) throw ValidationError("mu must be nonzero");
      doc.config = {{"b", b}, {"mu", mu}, {"tmax", tmax}, {"steps", steps}};
      const ArakiZurekModel model = default_araki_zurek(b, mu);
      doc.config["couplings"] = model.couplings;
      doc.config["phases"] = model.phases;
      std::vector<double> times;
      times.reserve(static_cast<std::size_t>(steps) + 1);
      for (int k = 0; k <= steps; ++k) times.push_back(tmax * k / steps);
      const Trajectory traj = negativity_trajectory(model, DensityMatrix::pure(Ket::computational({2, 2}, 0, 0)), times);
      if (doc.format == "csv") {
        detail::write_csv(doc, [&](std::ostream& os) { write_trajectory_csv(os, traj); }, out);
        return;
      }
      std::vector<double> closed;
      for (double t : traj.times) closed.push_back(closed_form_negativity(b, mu, t));
      json result = {{"t", traj.times}, {"negativity", traj.negativities}, {"max_offdiag", traj.max_offdiag},
                     {"closed_form", closed}, {"limit_negativity", traj.limit_negativity}};
      try {
        result["fitted_rate"] = fit_convergence_rate(traj);
      } catch (const std::domain_error&) {
        result["fitted_rate"] = nullptr;
      }
      detail::write_json(doc, result, out);
    };
  });

  // optimal-2q --------------------------------------------------------------
  auto* opt = app.add_subcommand("optimal-2q", "Best parametric measurement for a two-qubit pure state");
  std::optional<double> ni;
  std::optional<double> a_param;
  detail::add_common(opt, doc, "json");
  auto* ni_opt = opt->add_option("--ni", ni, "Input negativity in [0, 1/2]");
  opt->add_option("--a", a_param, "Input parameter a in [0, 1/sqrt(2)]")->excludes(ni_opt);
  opt->callback([&] {
    action = [&] {
      doc.command = "optimal-2q";
      double n_i = 0.0;
      if (a_param) {
        detail::require_parameter_range(*a_param, "a");
        n_i = negativity_from_parameter(*a_param);
        doc.config["a"] = *a_param;
      } else {
        if (!ni) throw ValidationError("one of --ni or --a is required");
        if (!(*ni >= 0.0 && *ni <= 0.5)) throw ValidationError("--ni must lie in [0, 1/2]");
        n_i = *ni;
        doc.config["ni"] = n_i;
      }
      const OptimalMeasurement best = optimal_measurement_2q(n_i);
      const double a = parameter_from_negativity(n_i);
      const double b_opt = parameter_from_negativity(std::min(best.n_b_max, 0.5));
      const double channel_nf = negativity(apply_nonselective(opt_basis_2q(b_opt), ket_in_2q(a)));
      if (doc.format == "csv") {
        detail::write_csv(doc, [&](std::ostream& os) {
          csv::write_header(os, {"ni", "nb_max", "gain_max", "b", "channel_gain"});
          csv::write_row(os, n_i, best.n_b_max, best.gain_max, b_opt, channel_nf - n_i);
        }, out);
        return;
      }
      detail::write_json(doc, {{"ni", n_i}, {"nb_max", best.n_b_max}, {"gain_max", best.gain_max}, {"a", a},
                               {"b", b_opt}, {"channel_nf", channel_nf}, {"channel_gain", channel_nf - n_i}},
                         out);
    };
  });

  // construct-state -----------------------------------------------------------
  auto* cstate = app.add_subcommand("construct-state", "Input state that gains negativity in a given basis");
  std::string basis_path;
  std::optional<double> basis_b;
  double basis_c = 0.0;
  std::optional<double> epsilon;
  detail::add_common(cstate, doc, "json");
  auto* cs_basis = cstate->add_option("--basis", basis_path, "Measurement basis (JSON)")->check(CLI::ExistingFile);
  cstate->add_option("--b", basis_b, "Use the parametric two-qubit basis with this b")->excludes(cs_basis);
  cstate->add_option("--c", basis_c, "Second parameter of the parametric basis")->capture_default_str();
  cstate->add_option("--epsilon", epsilon, "Mixing weight (default: window midpoint)");
  cstate->callback([&] {
    action = [&] {
      doc.command = "construct-state";
      std::optional<ProjectiveBasis> basis;
      if (!basis_path.empty()) {
        basis = read_basis(basis_path);
        doc.config["basis"] = to_json(*basis);
      } else {
        if (!basis_b) throw ValidationError("one of --basis or --b is required");
        detail::require_parameter_range(*basis_b, "b");
        detail::require_parameter_range(basis_c, "c");
        basis = opt_basis_2q(*basis_b, basis_c);
        doc.config["b"] = *basis_b;
        doc.config["c"] = basis_c;
      }
      doc.config["epsilon"] = epsilon ? json(*epsilon) : json(nullptr);
      const StateConstruction built = state_for_measurement(*basis, epsilon);
      const double n_i = pure_negativity(built.state);
      const double n_f = negativity(apply_nonselective(*basis, built.state));
      detail::write_json(doc, {{"state", to_json(built.state)}, {"epsilon", built.epsilon},
                               {"window", {built.window.lower, built.window.upper}}, {"n_i", n_i},
                               {"n_f", n_f}, {"gain", n_f - n_i}}, out);
    };
  });

  // construct-measurement -----------------------------------------------------
  auto* cmeas = app.add_subcommand("construct-measurement", "Measurement that increases a given pure state's negativity");
  std::string ket_path;
  std::optional<double> ket_a;
  detail::add_common(cmeas, doc, "json");
  auto* cm_input = cmeas->add_option("--input", ket_path, "Input ket (JSON)")->check(CLI::ExistingFile);
  cmeas->add_option("--a", ket_a, "Use the two-qubit input a|00> + sqrt(1-a^2)|11>")->excludes(cm_input);
  cmeas->callback([&] {
    action = [&] {
      doc.command = "construct-measurement";
      std::optional<Ket> phi;
      if (!ket_path.empty()) {
        phi = ket_from_json(read_json_file(ket_path));
        doc.config["input"] = to_json(*phi);
      } else {
        if (!ket_a) throw ValidationError("one of --input or --a is required");
        detail::require_parameter_range(*ket_a, "a");
        phi = ket_in_2q(*ket_a);
        doc.config["a"] = *ket_a;
      }
      const ProjectiveBasis basis = measurement_for_state(*phi);
      const double n_i = pure_negativity(*phi);
      const double n_f = negativity(apply_nonselective(basis, *phi));
      detail::write_json(doc, {{"basis", to_json(basis)}, {"n_i", n_i}, {"n_f", n_f},
                               {"predicted_n_f", measurement_for_state_final_negativity(*phi)},
                               {"gain", n_f - n_i}}, out);
    };
  });

  // reduce-bell ---------------------------------------------------------------
  auto* reduce = app.add_subcommand("reduce-bell", "Local unitaries taking a maximally entangled basis to the Bell basis");
  std::string reduce_path;
  detail::add_common(reduce, doc, "json");
  reduce->add_option("--basis", reduce_path, "Two-qubit basis (JSON)")->required()->check(CLI::ExistingFile);
  reduce->callback([&] {
    action = [&] {
      doc.command = "reduce-bell";
      const ProjectiveBasis basis = read_basis(reduce_path);
      doc.config["basis"] = to_json(basis);
      const LocalUnitaryPair pair = bell_reduction(basis);
      const BellMatch match = match_bell_form(basis, pair);
      detail::write_json(doc, {{"u1", detail::matrix_to_json(pair.u1())}, {"u2", detail::matrix_to_json(pair.u2())},
                               {"permutation", match.permutation}, {"residual", match.residual}}, out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << ENTGAIN_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "entgain: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (!action) {
      err << "entgain: no subcommand given\n";
      return kExitValidation;
    }
    action();
  } catch (const std::invalid_argument& e) {
    err << "entgain: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    err << "entgain: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "entgain: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace entgain::cli
