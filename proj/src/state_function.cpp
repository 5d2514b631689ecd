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

#include "cpdyn/state_function.hpp"

#include <algorithm>
#include <cmath>

namespace cpdyn {

struct StateFunction::Node {
  enum class Kind { kConst, kRe, kIm, kSum, kProd, kPow };

  Kind kind = Kind::kConst;
  double value = 0.0;      // kConst
  int row = 0, col = 0;    // kRe / kIm, 1-based
  int exponent = 0;        // kPow
  std::vector<StateFunction> children;
};

StateFunction StateFunction::constant(double c) {
  if (!std::isfinite(c)) {
    fail(ErrorCode::kValidationError, "state function: non-finite constant");
  }
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::kConst;
  node->value = c;
  return StateFunction(std::move(node));
}

namespace {

void check_indices(int r, int s) {
  if (r < 1 || s < 1) {
    fail(ErrorCode::kIndexOutOfRange,
         "state function: entry indices are 1-based, got (" +
             std::to_string(r) + "," + std::to_string(s) + ")");
  }
}

}  // namespace

StateFunction StateFunction::re_entry(int r, int s) {
  check_indices(r, s);
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::kRe;
  node->row = r;
  node->col = s;
  return StateFunction(std::move(node));
}

StateFunction StateFunction::im_entry(int r, int s) {
  check_indices(r, s);
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::kIm;
  node->row = r;
  node->col = s;
  return StateFunction(std::move(node));
}

StateFunction StateFunction::sum(std::vector<StateFunction> terms) {
  if (terms.empty()) {
    fail(ErrorCode::kValidationError, "state function: empty sum");
  }
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::kSum;
  node->children = std::move(terms);
  return StateFunction(std::move(node));
}

StateFunction StateFunction::product(std::vector<StateFunction> factors) {
  if (factors.empty()) {
    fail(ErrorCode::kValidationError, "state function: empty product");
  }
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::kProd;
  node->children = std::move(factors);
  return StateFunction(std::move(node));
}

StateFunction StateFunction::power(StateFunction base, int exponent) {
  if (exponent < 0) {
    fail(ErrorCode::kValidationError,
         "state function: power exponent must be >= 0");
  }
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::kPow;
  node->exponent = exponent;
  node->children.push_back(std::move(base));
  return StateFunction(std::move(node));
}

namespace {

double checked(double v) {
  if (!std::isfinite(v)) {
    fail(ErrorCode::kValidationError,
         "state function: evaluation produced a non-finite value");
  }
  return v;
}

}  // namespace

double StateFunction::eval(const DensityMatrix& omega) const {
  const Node& node = *root_;
  switch (node.kind) {
    case Node::Kind::kConst:
      return node.value;
    case Node::Kind::kRe:
      return omega.expect_unit(node.row, node.col).real();
    case Node::Kind::kIm:
      return omega.expect_unit(node.row, node.col).imag();
    case Node::Kind::kSum: {
      double acc = 0.0;
      for (const StateFunction& c : node.children) acc += c.eval(omega);
      return checked(acc);
    }
    case Node::Kind::kProd: {
      double acc = 1.0;
      for (const StateFunction& c : node.children) acc *= c.eval(omega);
      return checked(acc);
    }
    case Node::Kind::kPow:
      return checked(
          std::pow(node.children.front().eval(omega), node.exponent));
  }
  fail(ErrorCode::kValidationError, "state function: corrupt node");
}

nlohmann::json StateFunction::to_json() const {
  const Node& node = *root_;
  switch (node.kind) {
    case Node::Kind::kConst:
      return {{"const", node.value}};
    case Node::Kind::kRe:
      return {{"re", {node.row, node.col}}};
    case Node::Kind::kIm:
      return {{"im", {node.row, node.col}}};
    case Node::Kind::kSum:
    case Node::Kind::kProd: {
      nlohmann::json items = nlohmann::json::array();
      for (const StateFunction& c : node.children) items.push_back(c.to_json());
      return {{node.kind == Node::Kind::kSum ? "sum" : "prod", items}};
    }
    case Node::Kind::kPow:
      return {{"pow", {node.children.front().to_json(), node.exponent}}};
  }
  fail(ErrorCode::kValidationError, "state function: corrupt node");
}

StateFunction StateFunction::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1) {
    fail(ErrorCode::kParseError,
         "state function: expected an object with one key");
  }
  const auto it = j.begin();
  const std::string& key = it.key();
  const nlohmann::json& val = it.value();

  auto parse_pair = [&](const char* what) -> std::pair<int, int> {
    if (!val.is_array() || val.size() != 2 || !val[0].is_number_integer() ||
        !val[1].is_number_integer()) {
      fail(ErrorCode::kParseError,
           std::string("state function: ") + what + " expects [r, s]");
    }
    return {val[0].get<int>(), val[1].get<int>()};
  };

  if (key == "const") {
    if (!val.is_number()) {
      fail(ErrorCode::kParseError, "state function: const expects a number");
    }
    return constant(val.get<double>());
  }
  if (key == "re") {
    auto [r, s] = parse_pair("re");
    return re_entry(r, s);
  }
  if (key == "im") {
    auto [r, s] = parse_pair("im");
    return im_entry(r, s);
  }
  if (key == "sum" || key == "prod") {
    if (!val.is_array() || val.empty()) {
      fail(ErrorCode::kParseError,
           "state function: " + key + " expects a nonempty array");
    }
    std::vector<StateFunction> children;
    children.reserve(val.size());
    for (const nlohmann::json& c : val) children.push_back(from_json(c));
    return key == "sum" ? sum(std::move(children)) : product(std::move(children));
  }
  if (key == "pow") {
    if (!val.is_array() || val.size() != 2 || !val[1].is_number_integer()) {
      fail(ErrorCode::kParseError, "state function: pow expects [expr, k]");
    }
    return power(from_json(val[0]), val[1].get<int>());
  }
  fail(ErrorCode::kParseError, "state function: unknown operator '" + key + "'");
}

bool StateFunction::operator==(const StateFunction& other) const {
  const Node& a = *root_;
  const Node& b = *other.root_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::kConst:
      return a.value == b.value;
    case Node::Kind::kRe:
    case Node::Kind::kIm:
      return a.row == b.row && a.col == b.col;
    case Node::Kind::kPow:
      if (a.exponent != b.exponent) return false;
      [[fallthrough]];
    case Node::Kind::kSum:
    case Node::Kind::kProd:
      if (a.children.size() != b.children.size()) return false;
      for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!(a.children[i] == b.children[i])) return false;
      }
      return true;
  }
  return false;
}

namespace {

StateFunction random_leaf(Rng& rng, int n) {
  switch (rng.uniform_int(3)) {
    case 0:
      return StateFunction::constant(rng.uniform(0.1, 2.0));
    case 1:
      return StateFunction::re_entry(1 + rng.uniform_int(n),
                                     1 + rng.uniform_int(n));
    default:
      return StateFunction::im_entry(1 + rng.uniform_int(n),
                                     1 + rng.uniform_int(n));
  }
}

StateFunction random_tree(Rng& rng, int n, int depth) {
  if (depth <= 0) return random_leaf(rng, n);
  switch (rng.uniform_int(8)) {
    case 0:
    case 1:
      return random_leaf(rng, n);
    case 2:
    case 3:
    case 4: {
      const int arity = 2 + rng.uniform_int(2);
      std::vector<StateFunction> terms;
      for (int i = 0; i < arity; ++i) {
        terms.push_back(random_tree(rng, n, depth - 1));
      }
      return StateFunction::sum(std::move(terms));
    }
    case 5:
    case 6: {
      std::vector<StateFunction> factors;
      factors.push_back(random_tree(rng, n, depth - 1));
      factors.push_back(random_tree(rng, n, depth - 1));
      return StateFunction::product(std::move(factors));
    }
    default:
      return StateFunction::power(random_tree(rng, n, depth - 1),
                                  2 + rng.uniform_int(2));
  }
}

}  // namespace

StateFunction random_state_function(Rng& rng, int n, int max_depth) {
  return random_tree(rng, n, max_depth);
}

StateFunction offset_positive(const StateFunction& f,
                              const std::vector<DensityMatrix>& states,
                              double floor) {
  double min_value = std::numeric_limits<double>::infinity();
  for (const DensityMatrix& s : states) {
    min_value = std::min(min_value, f.eval(s));
  }
  if (states.empty() || min_value >= floor) return f;
  return StateFunction::sum({f, StateFunction::constant(floor - min_value)});
}

}  // namespace cpdyn
