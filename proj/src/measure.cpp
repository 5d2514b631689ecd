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

#include "cpdyn/measure.hpp"

#include <cmath>

namespace cpdyn {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    fail(ErrorCode::kValidationError, "measure: needs at least one atom");
  }
  const int n = atoms_.front().state.dim();
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (a.state.dim() != n) {
      fail(ErrorCode::kDimensionMismatch, "measure: atom dimensions disagree");
    }
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) {
      fail(ErrorCode::kWeightsInvalid,
           "measure: weights must be finite and nonnegative");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > kMeasureWeightTol) {
    fail(ErrorCode::kWeightsInvalid,
         "measure: weights sum to " + std::to_string(total));
  }
}

DensityMatrix barycenter(const DiscreteMeasure& mu) {
  const int n = mu.dim();
  CMat avg = CMat::Zero(n, n);
  for (const Atom& a : mu.atoms()) avg += a.weight * a.state.matrix();
  return DensityMatrix(avg);
}

bool is_diagonal_supported(const DiscreteMeasure& mu, double tol) {
  for (const Atom& a : mu.atoms()) {
    const CMat& m = a.state.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (i != j && std::abs(m(i, j)) > tol) return false;
      }
    }
  }
  return true;
}

DiscreteMeasure markov_pushforward(const TransferSpec& transfer,
                                   const DiscreteMeasure& mu) {
  if (!transfer.is_stochastic()) {
    fail(ErrorCode::kWeightsInvalid,
         "markov_pushforward: transfer weights must sum to one");
  }
  if (transfer.dim() != mu.dim()) {
    fail(ErrorCode::kDimensionMismatch,
         "markov_pushforward: transfer and measure dimensions disagree");
  }
  std::vector<Atom> pushed;
  pushed.reserve(static_cast<std::size_t>(transfer.size()) *
                 static_cast<std::size_t>(mu.size()));
  for (int i = 0; i < transfer.size(); ++i) {
    for (const Atom& a : mu.atoms()) {
      const double w = transfer.weight(i) * a.weight;
      DensityMatrix image = transfer.branch(i).apply(a.state);
      bool merged = false;
      for (Atom& existing : pushed) {
        if (trace_distance(existing.state, image) <= kAtomMergeTol) {
          existing.weight += w;
          merged = true;
          break;
        }
      }
      if (!merged) pushed.push_back(Atom{w, std::move(image)});
    }
  }
  return DiscreteMeasure(std::move(pushed));
}

}  // namespace cpdyn
