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

#include <vector>

#include "cpdyn/channel.hpp"

namespace cpdyn {

inline constexpr double kStochasticWeightTol = 1e-12;

// Weights p_i and branch maps F_i of a transfer operator
// (L f)(omega) = sum_i p_i f(F_i(omega)). The branch count is capped at
// dim^2, matching the Kraus rank bound of the maps it induces.
class TransferSpec {
 public:
  TransferSpec(std::vector<double> weights, std::vector<QuantumChannel> branches);

  int dim() const { return branches_.front().dim(); }
  int size() const { return static_cast<int>(branches_.size()); }
  double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& weights() const { return weights_; }
  const QuantumChannel& branch(int i) const {
    return branches_[static_cast<std::size_t>(i)];
  }
  const std::vector<QuantumChannel>& branches() const { return branches_; }

  bool is_stochastic() const;
  bool all_unitary_branches() const;

  // Phi = sum_i p_i F_i as a single Kraus-form channel.
  QuantumChannel induced_channel() const;

 private:
  std::vector<double> weights_;
  std::vector<QuantumChannel> branches_;
};

}  // namespace cpdyn
