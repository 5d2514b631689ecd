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

#pragma once

#include <string>

#include "json.hpp"

#include "cpdyn/dynamics.hpp"
#include "cpdyn/gns.hpp"
#include "cpdyn/measure.hpp"

namespace cpdyn {

using Json = nlohmann::json;

// Matrices are nested arrays of [re, im] pairs, row-major.
Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j, const std::string& where);

Json density_to_json(const DensityMatrix& d);
DensityMatrix density_from_json(const Json& j, const std::string& where);

// { "dim": n, "kraus": [matrix, ...] } or
// { "mixed_unitary": { "weights": [...], "unitaries": [...] } }
Json channel_to_json(const QuantumChannel& c);
QuantumChannel channel_from_json(const Json& j, const std::string& where);

// { "atoms": [ { "weight": w, "state": matrix }, ... ] }
Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j, const std::string& where);

// { "weights": [...], "branches": [channel, ...] }
Json transfer_to_json(const TransferSpec& t);
TransferSpec transfer_from_json(const Json& j, const std::string& where);

Json kappa_to_json(const KappaArray& k);

Json omega_limit_to_json(const OmegaLimitSet& l);

Json kraus_list_to_json(const std::vector<CMat>& kraus);
std::vector<CMat> kraus_list_from_json(const Json& j, const std::string& where);

Json parse_json_text(const std::string& text, const std::string& where);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit digest, hex encoded; used to fingerprint input documents in
// reports.
std::string digest_hex(const std::string& bytes);

}  // namespace cpdyn
