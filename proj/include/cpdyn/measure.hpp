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

#include "cpdyn/matrix.hpp"
#include "cpdyn/transfer.hpp"

namespace cpdyn {

inline constexpr double kMeasureWeightTol = 1e-12;
inline constexpr double kAtomMergeTol = 1e-12;

struct Atom {
  double weight;
  DensityMatrix state;
};

// Finite discrete probability measure sum_m lambda_m delta_{omega_m} on the
// state space. Weights are nonnegative and sum to one within 1e-12.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  int size() const { return static_cast<int>(atoms_.size()); }
  int dim() const { return atoms_.front().state.dim(); }

 private:
  std::vector<Atom> atoms_;
};

// Weighted average of the atoms; the unique barycenter.
DensityMatrix barycenter(const DiscreteMeasure& mu);

// True when every atom has all off-diagonal moduli at most tol.
bool is_diagonal_supported(const DiscreteMeasure& mu, double tol);

// Markov pushforward sum_i sum_m p_i lambda_m delta_{F_i(omega_m)}. Atoms
// closer than kAtomMergeTol in trace distance are merged with summed weights.
DiscreteMeasure markov_pushforward(const TransferSpec& transfer,
                                   const DiscreteMeasure& mu);

}  // namespace cpdyn
