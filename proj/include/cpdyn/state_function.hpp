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

#include <memory>
#include <vector>

#include "json.hpp"

#include "cpdyn/matrix.hpp"

namespace cpdyn {

// Real-valued observable over states, kept as an expression tree so scenarios
// serialize and compositions with channel branches evaluate exactly.
//
// Grammar: {"const":c} | {"re":[r,s]} | {"im":[r,s]} | {"sum":[...]} |
//          {"prod":[...]} | {"pow":[expr,k]}, indices 1-based.
class StateFunction {
 public:
  static StateFunction constant(double c);
  static StateFunction re_entry(int r, int s);
  static StateFunction im_entry(int r, int s);
  static StateFunction sum(std::vector<StateFunction> terms);
  static StateFunction product(std::vector<StateFunction> factors);
  static StateFunction power(StateFunction base, int exponent);

  double eval(const DensityMatrix& omega) const;

  nlohmann::json to_json() const;
  static StateFunction from_json(const nlohmann::json& j);

  // Structural equality of the trees.
  bool operator==(const StateFunction& other) const;

 private:
  struct Node;
  explicit StateFunction(std::shared_ptr<const Node> root)
      : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

// Random expression tree of depth at most `max_depth` with constants in
// [0.1, 2] and entry indices bounded by n.
StateFunction random_state_function(Rng& rng, int n, int max_depth = 3);

// f shifted by a constant so that min over the given states is at least
// `floor` (returns f unchanged when already above it).
StateFunction offset_positive(const StateFunction& f,
                              const std::vector<DensityMatrix>& states,
                              double floor = 0.1);

}  // namespace cpdyn
