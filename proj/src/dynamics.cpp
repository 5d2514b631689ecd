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

#include "cpdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace cpdyn {

namespace {

// Cheap Frobenius screen for "trace distance <= tol":
// ||D||_F <= ||D||_tr <= sqrt(n) ||D||_F, so most candidates resolve without
// an eigendecomposition.
bool within_trace_tol(const CMat& a, const CMat& b, double tol) {
  const double fro = (a - b).norm();
  if (0.5 * fro > tol) return false;
  const double n = static_cast<double>(a.rows());
  if (0.5 * std::sqrt(n) * fro <= tol) return true;
  return trace_distance(a, b) <= tol;
}

}  // namespace

std::vector<DensityMatrix> orbit(const QuantumChannel& channel,
                                 const DensityMatrix& rho0, int steps) {
  if (steps < 1) {
    fail(ErrorCode::kValidationError, "orbit: steps must be >= 1");
  }
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(steps));
  DensityMatrix x = rho0;
  for (int k = 0; k < steps; ++k) {
    x = channel.apply(x);
    out.push_back(x);
  }
  return out;
}

OmegaLimitSet detect_limit_cycle(const QuantumChannel& channel,
                                 const DensityMatrix& rho0, double tol,
                                 int max_iterations, int max_period) {
  if (!(tol > 0.0)) {
    fail(ErrorCode::kValidationError, "detect_limit_cycle: tol must be > 0");
  }
  if (max_period < 1 || max_iterations < 1) {
    fail(ErrorCode::kValidationError,
         "detect_limit_cycle: iteration and period caps must be >= 1");
  }

  std::deque<DensityMatrix> history;  // most recent max_period + 1 states
  history.push_back(rho0);
  std::vector<int> run(static_cast<std::size_t>(max_period) + 1, 0);

  DensityMatrix x = rho0;
  // Once some lag completes its window, a short grace phase lets smaller
  // lags finish theirs; an oscillating transient decaying to a fixed point
  // otherwise reports twice the true period.
  int grace_left = -1;
  for (int n = 1; n <= max_iterations; ++n) {
    x = channel.apply(x);
    history.push_back(x);
    if (static_cast<int>(history.size()) > max_period + 1) history.pop_front();

    const int available = static_cast<int>(history.size()) - 1;
    int found = 0;
    for (int p = 1; p <= std::min(max_period, available); ++p) {
      const DensityMatrix& lagged = history[history.size() - 1 - p];
      if (within_trace_tol(x.matrix(), lagged.matrix(), tol)) {
        if (++run[static_cast<std::size_t>(p)] >= kStabilizationWindow &&
            found == 0) {
          found = p;
        }
      } else {
        run[static_cast<std::size_t>(p)] = 0;
      }
    }
    if (found == 0) continue;
    if (found > 1 && grace_left < 0) grace_left = kStabilizationWindow;
    if (found > 1 && grace_left-- > 0 && n < max_iterations) continue;

    const int p = found;
    OmegaLimitSet out;
    out.period = p;
    out.burn_in = n + 1 - p;
    out.cycle.assign(history.end() - p, history.end());

    double residual = 0.0;
    DensityMatrix y = x;
    for (int j = 0; j < p; ++j) {
      y = channel.apply(y);
      residual = std::max(residual, trace_distance(y, out.cycle[j]));
    }
    out.residual = residual;
    return out;
  }
  fail(ErrorCode::kNoConvergence,
       "detect_limit_cycle: no period up to " + std::to_string(max_period) +
           " within " + std::to_string(max_iterations) + " iterations");
}

DensityMatrix cesaro_fixed_point(const QuantumChannel& channel,
                                 const DensityMatrix& eta, double tol,
                                 int max_iterations) {
  const OmegaLimitSet limit =
      detect_limit_cycle(channel, eta, tol, max_iterations, kDefaultMaxPeriod);
  CMat avg = CMat::Zero(eta.dim(), eta.dim());
  for (const DensityMatrix& s : limit.cycle) avg += s.matrix();
  avg /= static_cast<double>(limit.period);
  DensityMatrix fixed_point(avg);
  const double residual = trace_distance(channel.apply(fixed_point), fixed_point);
  if (residual > 10.0 * tol) {
    fail(ErrorCode::kNoConvergence,
         "cesaro_fixed_point: averaged state moves by " +
             std::to_string(residual));
  }
  return fixed_point;
}

Superoperator attractor_projection(const QuantumChannel& channel, double tol) {
  if (!channel.trace_preserving()) {
    fail(ErrorCode::kValidationError,
         "attractor_projection: channel must be trace preserving");
  }
  const Superoperator s = superoperator(channel);
  Eigen::ComplexEigenSolver<CMat> solver(s.matrix);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kSpectralFailure,
         "attractor_projection: eigensolver failed");
  }
  const CVec values = solver.eigenvalues();
  const CMat vectors = solver.eigenvectors();
  const CMat left = vectors.inverse();

  const Eigen::Index m = values.size();
  CMat proj = CMat::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    if (std::abs(values(k)) >= 1.0 - tol) {
      proj += vectors.col(k) * left.row(k);
    }
  }
  if ((proj * proj - proj).norm() > 1e-8) {
    fail(ErrorCode::kSpectralFailure,
         "attractor_projection: peripheral eigenspace is numerically defective");
  }
  return Superoperator{channel.dim(), std::move(proj)};
}

std::vector<DensityMatrix> sample_hull(const std::vector<DensityMatrix>& states,
                                       int count, Rng& rng) {
  if (states.empty()) {
    fail(ErrorCode::kValidationError, "sample_hull: empty state list");
  }
  const int n = states.front().dim();
  const int cap = n * n + 1;
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> indices(states.size());
  std::iota(indices.begin(), indices.end(), 0);

  for (int s = 0; s < count; ++s) {
    int support = static_cast<int>(states.size());
    if (support > cap) {
      // partial Fisher-Yates: the first `cap` entries become the support
      for (int i = 0; i < cap; ++i) {
        const int j = i + rng.uniform_int(static_cast<int>(indices.size()) - i);
        std::swap(indices[static_cast<std::size_t>(i)],
                  indices[static_cast<std::size_t>(j)]);
      }
      support = cap;
    }
    const std::vector<double> w = rng.dirichlet(support);
    CMat combo = CMat::Zero(n, n);
    for (int i = 0; i < support; ++i) {
      combo += w[static_cast<std::size_t>(i)] *
               states[static_cast<std::size_t>(indices[static_cast<std::size_t>(i)])]
                   .matrix();
    }
    out.emplace_back(combo);
  }
  return out;
}

IsometryReport verify_isometry(const QuantumChannel& channel,
                               const std::vector<DensityMatrix>& states,
                               int hull_samples, double tol,
                               std::uint64_t seed) {
  (void)tol;  // recorded by callers; the report carries the raw distortion
  if (states.empty()) {
    fail(ErrorCode::kValidationError, "verify_isometry: empty state list");
  }
  Rng rng(seed);
  std::vector<DensityMatrix> pool = states;
  if (hull_samples > 0) {
    std::vector<DensityMatrix> extra = sample_hull(states, hull_samples, rng);
    pool.insert(pool.end(), extra.begin(), extra.end());
  }

  IsometryReport report;
  report.sample_count = static_cast<int>(pool.size());
  for (std::size_t a = 0; a < pool.size(); ++a) {
    for (std::size_t b = a + 1; b < pool.size(); ++b) {
      const double before = trace_distance(pool[a], pool[b]);
      const double after =
          trace_distance(channel.apply(pool[a]), channel.apply(pool[b]));
      report.max_distortion =
          std::max(report.max_distortion, std::abs(after - before));
      ++report.pairs_checked;
    }
  }
  return report;
}

double verify_commuting_hull(const std::vector<DensityMatrix>& states,
                             int hull_samples, std::uint64_t seed) {
  if (states.empty()) {
    fail(ErrorCode::kValidationError, "verify_commuting_hull: empty state list");
  }
  Rng rng(seed);
  std::vector<DensityMatrix> pool = states;
  if (hull_samples > 0) {
    std::vector<DensityMatrix> extra = sample_hull(states, hull_samples, rng);
    pool.insert(pool.end(), extra.begin(), extra.end());
  }
  double max_comm = 0.0;
  for (std::size_t a = 0; a < pool.size(); ++a) {
    for (std::size_t b = a + 1; b < pool.size(); ++b) {
      max_comm = std::max(
          max_comm, commutator_frobenius(pool[a].matrix(), pool[b].matrix()));
    }
  }
  return max_comm;
}

}  // namespace cpdyn
