// Copyright 2026 The cpdyn authors
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

#include "cpdyn/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace cpdyn {

Json matrix_to_json(const CMat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    fail(ErrorCode::kParseError, where + ": expected a nonempty array of rows");
  }
  const std::size_t n = j.size();
  CMat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != n) {
      fail(ErrorCode::kParseError,
           where + "[" + std::to_string(i) + "]: expected a row of " +
               std::to_string(n) + " entries (square matrix)");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const Json& cell = row[k];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
          !cell[1].is_number()) {
        fail(ErrorCode::kParseError,
             where + "[" + std::to_string(i) + "][" + std::to_string(k) +
                 "]: expected an [re, im] pair");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  if (!all_finite(m)) {
    fail(ErrorCode::kValidationError, where + ": non-finite entries");
  }
  return m;
}

Json density_to_json(const DensityMatrix& d) { return matrix_to_json(d.matrix()); }

DensityMatrix density_from_json(const Json& j, const std::string& where) {
  return DensityMatrix(matrix_from_json(j, where));
}

Json channel_to_json(const QuantumChannel& c) {
  Json kraus = Json::array();
  for (const CMat& k : c.kraus()) kraus.push_back(matrix_to_json(k));
  return Json{{"dim", c.dim()}, {"kraus", std::move(kraus)}};
}

QuantumChannel channel_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) {
    fail(ErrorCode::kParseError, where + ": expected a channel object");
  }
  if (j.contains("mixed_unitary")) {
    const Json& mu = j.at("mixed_unitary");
    if (!mu.is_object() || !mu.contains("weights") || !mu.contains("unitaries")) {
      fail(ErrorCode::kParseError,
           where + ".mixed_unitary: expected weights and unitaries");
    }
    std::vector<double> weights;
    for (const Json& w : mu.at("weights")) {
      if (!w.is_number()) {
        fail(ErrorCode::kParseError,
             where + ".mixed_unitary.weights: expected numbers");
      }
      weights.push_back(w.get<double>());
    }
    std::vector<CMat> unitaries;
    const Json& us = mu.at("unitaries");
    for (std::size_t i = 0; i < us.size(); ++i) {
      unitaries.push_back(matrix_from_json(
          us[i], where + ".mixed_unitary.unitaries[" + std::to_string(i) + "]"));
    }
    return QuantumChannel::mixed_unitary(weights, unitaries);
  }
  if (!j.contains("kraus")) {
    fail(ErrorCode::kParseError,
         where + ": channel needs either 'kraus' or 'mixed_unitary'");
  }
  std::vector<CMat> kraus =
      kraus_list_from_json(j.at("kraus"), where + ".kraus");
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer() ||
        j.at("dim").get<int>() != static_cast<int>(kraus.front().rows())) {
      fail(ErrorCode::kValidationError,
           where + ".dim: does not match the Kraus matrices");
    }
  }
  const bool require_tp = j.value("require_tp", false);
  return QuantumChannel::from_kraus(std::move(kraus), require_tp);
}

Json measure_to_json(const DiscreteMeasure& mu) {
  Json atoms = Json::array();
  for (const Atom& a : mu.atoms()) {
    atoms.push_back(Json{{"weight", a.weight}, {"state", density_to_json(a.state)}});
  }
  return Json{{"atoms", std::move(atoms)}};
}

DiscreteMeasure measure_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array()) {
    fail(ErrorCode::kParseError, where + ": expected { \"atoms\": [...] }");
  }
  std::vector<Atom> atoms;
  const Json& list = j.at("atoms");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Json& a = list[i];
    const std::string path = where + ".atoms[" + std::to_string(i) + "]";
    if (!a.is_object() || !a.contains("weight") || !a.contains("state") ||
        !a.at("weight").is_number()) {
      fail(ErrorCode::kParseError, path + ": expected weight and state");
    }
    atoms.push_back(Atom{a.at("weight").get<double>(),
                         density_from_json(a.at("state"), path + ".state")});
  }
  return DiscreteMeasure(std::move(atoms));
}

Json transfer_to_json(const TransferSpec& t) {
  Json branches = Json::array();
  for (const QuantumChannel& b : t.branches()) branches.push_back(channel_to_json(b));
  return Json{{"weights", t.weights()}, {"branches", std::move(branches)}};
}

TransferSpec transfer_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("weights") || !j.contains("branches")) {
    fail(ErrorCode::kParseError,
         where + ": expected { \"weights\": [...], \"branches\": [...] }");
  }
  std::vector<double> weights;
  for (const Json& w : j.at("weights")) {
    if (!w.is_number()) {
      fail(ErrorCode::kParseError, where + ".weights: expected numbers");
    }
    weights.push_back(w.get<double>());
  }
  std::vector<QuantumChannel> branches;
  const Json& list = j.at("branches");
  for (std::size_t i = 0; i < list.size(); ++i) {
    branches.push_back(channel_from_json(
        list[i], where + ".branches[" + std::to_string(i) + "]"));
  }
  return TransferSpec(std::move(weights), std::move(branches));
}

Json kappa_to_json(const KappaArray& k) {
  return Json{{"block", matrix_to_json(k.block)}, {"dim", k.dim}};
}

Json omega_limit_to_json(const OmegaLimitSet& l) {
  Json cycle = Json::array();
  for (const DensityMatrix& s : l.cycle) cycle.push_back(density_to_json(s));
  return Json{{"period", l.period},
              {"cycle", std::move(cycle)},
              {"residual", l.residual},
              {"burn_in", l.burn_in}};
}

Json kraus_list_to_json(const std::vector<CMat>& kraus) {
  Json out = Json::array();
  for (const CMat& k : kraus) out.push_back(matrix_to_json(k));
  return out;
}

std::vector<CMat> kraus_list_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    fail(ErrorCode::kParseError, where + ": expected a nonempty matrix list");
  }
  std::vector<CMat> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(matrix_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json parse_json_text(const std::string& text, const std::string& where) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    fail(ErrorCode::kParseError, where + ": malformed JSON");
  }
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::kIoError, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) {
    fail(ErrorCode::kIoError, "error while reading '" + path + "'");
  }
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out.good()) {
    fail(ErrorCode::kIoError, "error while writing '" + path + "'");
  }
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= static_cast<std::uint64_t>(b);
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace cpdyn
