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

#include "cpdyn/transfer.hpp"

#include <cmath>

namespace cpdyn {

TransferSpec::TransferSpec(std::vector<double> weights,
                           std::vector<QuantumChannel> branches)
    : weights_(std::move(weights)), branches_(std::move(branches)) {
  if (branches_.empty() || weights_.size() != branches_.size()) {
    fail(ErrorCode::kValidationError,
         "transfer spec: need one weight per branch, at least one branch");
  }
  const int n = branches_.front().dim();
  if (static_cast<int>(branches_.size()) > n * n) {
    fail(ErrorCode::kValidationError,
         "transfer spec: at most dim^2 = " + std::to_string(n * n) +
             " branches are admissible, got " +
             std::to_string(branches_.size()));
  }
  for (const QuantumChannel& b : branches_) {
    if (b.dim() != n) {
      fail(ErrorCode::kDimensionMismatch,
           "transfer spec: branch dimensions disagree");
    }
  }
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      fail(ErrorCode::kWeightsInvalid,
           "transfer spec: weights must be finite and nonnegative");
    }
  }
}

bool TransferSpec::is_stochastic() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  return std::abs(total - 1.0) <= kStochasticWeightTol;
}

bool TransferSpec::all_unitary_branches() const {
  for (const QuantumChannel& b : branches_) {
    if (!b.single_unitary()) return false;
  }
  return true;
}

QuantumChannel TransferSpec::induced_channel() const {
  std::vector<CMat> kraus;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const double root = std::sqrt(weights_[i]);
    for (const CMat& k : branches_[i].kraus()) kraus.push_back(root * k);
  }
  return QuantumChannel::from_kraus(std::move(kraus), /*require_tp=*/false);
}

}  // namespace cpdyn
