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

// JSON form of a measurement basis:
//
//   { "dims": [d1, d2],
//     "states": [ [[re, im], [re, im], ...],   // psi_0, D amplitudes, row-major
//                 ... ] }                       // D states in total
//
// A single ket uses the same layout with "amplitudes" in place of "states".

#include "entgain/measurement.hpp"
#include "entgain/qstate.hpp"

#include "json.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace entgain {

using json = nlohmann::json;

namespace detail {

inline json complex_vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

inline Vector complex_vector_from_json(const json& j, int expected) {
  if (!j.is_array() || static_cast<int>(j.size()) != expected) {
    throw std::invalid_argument("expected an array of " + std::to_string(expected) +
                                " [re, im] pairs");
  }
  Vector v(expected);
  for (int i = 0; i < expected; ++i) {
    const json& entry = j[static_cast<std::size_t>(i)];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      throw std::invalid_argument("amplitude " + std::to_string(i) + " is not a [re, im] pair");
    }
    v[i] = cplx(entry[0].get<double>(), entry[1].get<double>());
  }
  return v;
}

inline BipartiteDims dims_from_json(const json& j) {
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2 ||
      !j["dims"][0].is_number_integer() || !j["dims"][1].is_number_integer()) {
    throw std::invalid_argument("missing integer pair \"dims\"");
  }
  BipartiteDims dims{j["dims"][0].get<int>(), j["dims"][1].get<int>()};
  dims.validate();
  return dims;
}

}  // namespace detail

inline json to_json(const ProjectiveBasis& basis) {
  json states = json::array();
  for (int j = 0; j < basis.size(); ++j) {
    states.push_back(detail::complex_vector_to_json(basis.states().col(j)));
  }
  return {{"dims", {basis.dims().d1, basis.dims().d2}}, {"states", states}};
}

inline json to_json(const Ket& ket) {
  return {{"dims", {ket.dims().d1, ket.dims().d2}},
          {"amplitudes", detail::complex_vector_to_json(ket.amplitudes())}};
}

inline ProjectiveBasis basis_from_json(const json& j) {
  const BipartiteDims dims = detail::dims_from_json(j);
  if (!j.contains("states") || !j["states"].is_array() ||
      static_cast<int>(j["states"].size()) != dims.total()) {
    throw std::invalid_argument("\"states\" must hold " + std::to_string(dims.total()) + " kets");
  }
  Matrix m(dims.total(), dims.total());
  for (int c = 0; c < dims.total(); ++c) {
    m.col(c) = detail::complex_vector_from_json(j["states"][static_cast<std::size_t>(c)], dims.total());
  }
  return ProjectiveBasis(dims, std::move(m));
}

inline Ket ket_from_json(const json& j) {
  const BipartiteDims dims = detail::dims_from_json(j);
  if (!j.contains("amplitudes")) throw std::invalid_argument("missing \"amplitudes\"");
  return Ket(dims, detail::complex_vector_from_json(j["amplitudes"], dims.total()));
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

inline ProjectiveBasis read_basis(const std::string& path) { return basis_from_json(read_json_file(path)); }

}  // namespace entgain
