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

#include <optional>
#include <string>

#include "cpdyn/json_io.hpp"
#include "cpdyn/quantization.hpp"

namespace cpdyn {

// Scenario documents drive the workbench:
//   { "kind": "evolve|limit|fixpoint|quantize|verify|universal|markov",
//     "inputs": { name: inline-document | "path" | "random" (states only) },
//     "params": { "tol": ..., "max_iter": ..., "period_max": ...,
//                 "samples": ..., "steps": ..., "seed": ... } }
//
// Reports embed the library version, the seed, effective parameters and a
// digest of every resolved input; reruns with the same seed reproduce the
// report byte for byte except the timestamp field.
struct ScenarioResult {
  Json report;
  std::optional<std::string> csv;
};

ScenarioResult run_scenario(const Json& scenario, const std::string& base_dir = "");

// Loads a scenario file; relative input paths resolve against its directory.
ScenarioResult run_scenario_file(const std::string& path);

// Machine-readable error object emitted on every failure path.
Json error_to_json(const Error& e);

// CSV trace of an orbit: step, trace_distance_to_previous,
// trace_distance_to_cycle. With an empty cycle the third column measures the
// distance to the final orbit point.
std::string emit_trace(const DensityMatrix& initial,
                       const std::vector<DensityMatrix>& orbit_states,
                       const std::vector<DensityMatrix>& cycle);

}  // namespace cpdyn
