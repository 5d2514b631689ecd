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

#include <cstdint>
#include <vector>

#include "cpdyn/channel.hpp"

namespace cpdyn {

inline constexpr double kDefaultCycleTol = 1e-9;
inline constexpr int kDefaultMaxIterations = 10000;
inline constexpr int kDefaultMaxPeriod = 64;
// A period is declared only after this many consecutive iterations stay
// within tolerance, which keeps slow transients from faking a cycle.
inline constexpr int kStabilizationWindow = 16;
// Convex sampling keeps supports within the Caratheodory bound dim^2 + 1.
inline constexpr int kPeripheralDefaultSamples = 50;

// Detected omega-limit cycle: the channel maps cycle[j] to cycle[j+1 mod p]
// within tolerance, and residual = max_j d(Phi^p(cycle_j), cycle_j).
struct OmegaLimitSet {
  int period = 0;
  std::vector<DensityMatrix> cycle;
  int burn_in = 0;  // iterations consumed before the first representative
  double residual = 0.0;
};

struct IsometryReport {
  double max_distortion = 0.0;
  int sample_count = 0;
  int pairs_checked = 0;
};

// [Phi(rho0), Phi^2(rho0), ..., Phi^N(rho0)].
std::vector<DensityMatrix> orbit(const QuantumChannel& channel,
                                 const DensityMatrix& rho0, int steps);

OmegaLimitSet detect_limit_cycle(const QuantumChannel& channel,
                                 const DensityMatrix& rho0,
                                 double tol = kDefaultCycleTol,
                                 int max_iterations = kDefaultMaxIterations,
                                 int max_period = kDefaultMaxPeriod);

// Unique fixed point in the closed convex hull of the orbit's limit set,
// computed as the Cesaro average of the orbit. Averaging windows are aligned
// to the detected period so the average settles geometrically; the result is
// guaranteed fixed within 10*tol or NoConvergence is raised.
DensityMatrix cesaro_fixed_point(const QuantumChannel& channel,
                                 const DensityMatrix& eta,
                                 double tol = kDefaultCycleTol,
                                 int max_iterations = kDefaultMaxIterations);

// Spectral projection of the superoperator onto the peripheral eigenvalues
// |lambda| >= 1 - tol. Acts as the non-expansive projection onto the
// attractor.
Superoperator attractor_projection(const QuantumChannel& channel,
                                   double tol = kDefaultCycleTol);

// Convex samples from the hull of `states` (Dirichlet weights over a support
// of at most dim^2 + 1 points).
std::vector<DensityMatrix> sample_hull(const std::vector<DensityMatrix>& states,
                                       int count, Rng& rng);

// Max |d(Phi x, Phi y) - d(x, y)| over pairs drawn from `states` and from
// hull samples.
IsometryReport verify_isometry(const QuantumChannel& channel,
                               const std::vector<DensityMatrix>& states,
                               int hull_samples, double tol,
                               std::uint64_t seed = 0);

// Max commutator Frobenius norm over pairs drawn from the hull of `states`.
double verify_commuting_hull(const std::vector<DensityMatrix>& states,
                             int hull_samples, std::uint64_t seed = 0);

}  // namespace cpdyn
