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

#include "cpdyn/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace cpdyn {

double transfer_apply(const TransferSpec& transfer, const StateFunction& f,
                      const DensityMatrix& omega) {
  if (transfer.dim() != omega.dim()) {
    fail(ErrorCode::kDimensionMismatch,
         "transfer_apply: state and transfer dimensions disagree");
  }
  double acc = 0.0;
  for (int i = 0; i < transfer.size(); ++i) {
    acc += transfer.weight(i) * f.eval(transfer.branch(i).apply(omega));
  }
  return acc;
}

namespace {

// Array with entries sum_m lambda_m g_m * omega_m(E_rs) for per-atom scalars
// g_m.
CMat weighted_unit_array(const DiscreteMeasure& mu,
                         const std::vector<double>& per_atom) {
  const int n = mu.dim();
  CMat weighted = CMat::Zero(n, n);
  const auto& atoms = mu.atoms();
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    weighted += atoms[m].weight * per_atom[m] * atoms[m].state.matrix();
  }
  return weighted.transpose();
}

std::vector<double> eval_on_atoms(const StateFunction& f,
                                  const DiscreteMeasure& mu) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(mu.size()));
  for (const Atom& a : mu.atoms()) out.push_back(f.eval(a.state));
  return out;
}

std::vector<double> eval_on_branch_images(const StateFunction& f,
                                          const QuantumChannel& branch,
                                          const DiscreteMeasure& mu) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(mu.size()));
  for (const Atom& a : mu.atoms()) out.push_back(f.eval(branch.apply(a.state)));
  return out;
}

}  // namespace

DiagonalSolution solve_diagonal_kraus(
    const TransferSpec& transfer, const StateFunction& f,
    const DiscreteMeasure& mu, const std::vector<std::vector<double>>& phases) {
  if (transfer.dim() != mu.dim()) {
    fail(ErrorCode::kDimensionMismatch,
         "solve_diagonal_kraus: transfer and measure dimensions disagree");
  }
  if (!is_diagonal_supported(mu, kDiagonalSupportTol)) {
    fail(ErrorCode::kNotDiagonalSupported,
         "solve_diagonal_kraus: measure atoms must be diagonal supported");
  }
  const int n = mu.dim();
  const int k = transfer.size();
  if (!phases.empty()) {
    if (static_cast<int>(phases.size()) != k) {
      fail(ErrorCode::kValidationError,
           "solve_diagonal_kraus: phases must have one row per branch");
    }
    for (const auto& row : phases) {
      if (static_cast<int>(row.size()) != n) {
        fail(ErrorCode::kValidationError,
             "solve_diagonal_kraus: each phase row needs dim entries");
      }
    }
  }

  const std::vector<double> f_atoms = eval_on_atoms(f, mu);
  const auto& atoms = mu.atoms();

  std::vector<double> denom(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < atoms.size(); ++m) {
      denom[static_cast<std::size_t>(j)] +=
          atoms[m].weight * f_atoms[m] * atoms[m].state.matrix()(j, j).real();
    }
    if (denom[static_cast<std::size_t>(j)] <= kZeroMassTol) {
      fail(ErrorCode::kZeroDenominator,
           "solve_diagonal_kraus: diagonal mass of f*mu vanishes at index " +
               std::to_string(j + 1));
    }
  }

  DiagonalSolution sol;
  sol.moduli.assign(static_cast<std::size_t>(k),
                    std::vector<double>(static_cast<std::size_t>(n), 0.0));
  sol.kraus.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const std::vector<double> f_images =
        eval_on_branch_images(f, transfer.branch(i), mu);
    CMat v = CMat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      double numer = 0.0;
      for (std::size_t m = 0; m < atoms.size(); ++m) {
        numer += atoms[m].weight * f_images[m] *
                 atoms[m].state.matrix()(j, j).real();
      }
      double ratio = transfer.weight(i) * numer / denom[static_cast<std::size_t>(j)];
      if (ratio < -1e-12) {
        fail(ErrorCode::kZeroDenominator,
             "solve_diagonal_kraus: negative diagonal mass ratio at branch " +
                 std::to_string(i + 1) + ", index " + std::to_string(j + 1));
      }
      ratio = std::max(ratio, 0.0);
      const double modulus = std::sqrt(ratio);
      sol.moduli[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          modulus;
      const double theta =
          phases.empty()
              ? 0.0
              : phases[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      v(j, j) = modulus * Complex(std::cos(theta), std::sin(theta));
    }
    sol.kraus.push_back(std::move(v));
  }
  sol.residual = verify_diagram(transfer, f, mu, sol.kraus);
  return sol;
}

double verify_diagram(const TransferSpec& transfer, const StateFunction& f,
                      const DiscreteMeasure& mu,
                      const std::vector<CMat>& kraus) {
  if (transfer.dim() != mu.dim()) {
    fail(ErrorCode::kDimensionMismatch,
         "verify_diagram: transfer and measure dimensions disagree");
  }
  const int n = mu.dim();
  for (const CMat& v : kraus) {
    require_square(v, "verify_diagram");
    if (static_cast<int>(v.rows()) != n) {
      fail(ErrorCode::kDimensionMismatch,
           "verify_diagram: Kraus dimension does not match the measure");
    }
  }

  std::vector<double> lf(static_cast<std::size_t>(mu.size()), 0.0);
  for (std::size_t m = 0; m < lf.size(); ++m) {
    lf[m] = transfer_apply(transfer, f, mu.atoms()[m].state);
  }
  const CMat lhs = weighted_unit_array(mu, lf);

  const CMat m_f = m_f_array(f, mu);
  CMat rhs = CMat::Zero(n, n);
  for (const CMat& v : kraus) rhs += v * m_f * v.adjoint();
  return (lhs - rhs).norm();
}

ConsistencyReport offdiagonal_consistency(
    const TransferSpec& transfer, const StateFunction& f,
    const DiscreteMeasure& mu, const std::vector<std::vector<double>>& moduli,
    double tol) {
  const int n = mu.dim();
  const int k = transfer.size();
  if (static_cast<int>(moduli.size()) != k) {
    fail(ErrorCode::kValidationError,
         "offdiagonal_consistency: moduli must have one row per branch");
  }
  for (const auto& row : moduli) {
    if (static_cast<int>(row.size()) != n) {
      fail(ErrorCode::kValidationError,
           "offdiagonal_consistency: each moduli row needs dim entries");
    }
  }

  const CMat reference = m_f_array(f, mu);  // B
  std::vector<CMat> branch_arrays;          // A_i
  branch_arrays.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    std::vector<double> fi = eval_on_branch_images(f, transfer.branch(i), mu);
    branch_arrays.push_back(weighted_unit_array(mu, fi));
  }

  double scale = 1e-30;
  for (int i = 0; i < k; ++i) {
    scale = std::max(scale, transfer.weight(i) * branch_arrays
                                [static_cast<std::size_t>(i)]
                                    .cwiseAbs()
                                    .maxCoeff());
  }
  scale = std::max(scale, reference.cwiseAbs().maxCoeff());
  const double vacuous_eps = 1e-12 * scale;

  ConsistencyReport report;
  report.phases.assign(static_cast<std::size_t>(k),
                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
  report.free_phase_count.assign(static_cast<std::size_t>(k), 0);

  for (int i = 0; i < k; ++i) {
    const CMat& a = branch_arrays[static_cast<std::size_t>(i)];
    const double p = transfer.weight(i);
    const auto& mv = moduli[static_cast<std::size_t>(i)];

    // required phase differences theta_r - theta_s on non-vacuous pairs
    std::vector<std::vector<std::pair<int, double>>> adjacency(
        static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
      for (int s = r + 1; s < n; ++s) {
        const Complex lhs = p * a(r, s);
        const Complex ref = reference(r, s);
        const double product =
            mv[static_cast<std::size_t>(r)] * mv[static_cast<std::size_t>(s)];
        if (std::abs(ref) <= vacuous_eps) {
          if (std::abs(lhs) > std::max(vacuous_eps, tol * scale)) {
            fail(ErrorCode::kInconsistent,
                 "offdiagonal_consistency: branch " + std::to_string(i + 1) +
                     " entry (" + std::to_string(r + 1) + "," +
                     std::to_string(s + 1) +
                     ") requires mass on a vanishing reference integral");
          }
          continue;  // vacuous; recorded after phase assignment
        }
        const Complex required = lhs / ref;
        if (std::abs(std::abs(required) - product) >
            tol * std::max(1.0, product)) {
          fail(ErrorCode::kInconsistent,
               "offdiagonal_consistency: branch " + std::to_string(i + 1) +
                   " entry (" + std::to_string(r + 1) + "," +
                   std::to_string(s + 1) + ") needs modulus " +
                   std::to_string(std::abs(required)) +
                   " but the diagonal solution gives " +
                   std::to_string(product));
        }
        if (product > 1e-15) {
          const double delta = std::arg(required);
          adjacency[static_cast<std::size_t>(r)].push_back({s, delta});
          adjacency[static_cast<std::size_t>(s)].push_back({r, -delta});
        }
      }
    }

    // spanning-tree phase assignment: theta_r - theta_s = delta_{rs}
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    auto& theta = report.phases[static_cast<std::size_t>(i)];
    int components = 0;
    for (int root = 0; root < n; ++root) {
      if (visited[static_cast<std::size_t>(root)]) continue;
      ++components;
      std::deque<int> queue{root};
      visited[static_cast<std::size_t>(root)] = 1;
      theta[static_cast<std::size_t>(root)] = 0.0;
      while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (const auto& [w, delta] : adjacency[static_cast<std::size_t>(u)]) {
          if (visited[static_cast<std::size_t>(w)]) continue;
          visited[static_cast<std::size_t>(w)] = 1;
          theta[static_cast<std::size_t>(w)] =
              theta[static_cast<std::size_t>(u)] - delta;
          queue.push_back(w);
        }
      }
    }
    report.free_phase_count[static_cast<std::size_t>(i)] = components;

    // residuals of every constraint with the assigned phases
    for (int r = 0; r < n; ++r) {
      for (int s = r + 1; s < n; ++s) {
        const Complex lhs = p * a(r, s);
        const Complex ref = reference(r, s);
        const bool vacuous =
            std::abs(ref) <= vacuous_eps && std::abs(lhs) <= vacuous_eps;
        const Complex vr =
            mv[static_cast<std::size_t>(r)] *
            Complex(std::cos(theta[static_cast<std::size_t>(r)]),
                    std::sin(theta[static_cast<std::size_t>(r)]));
        const Complex vs =
            mv[static_cast<std::size_t>(s)] *
            Complex(std::cos(theta[static_cast<std::size_t>(s)]),
                    std::sin(theta[static_cast<std::size_t>(s)]));
        const double residual = std::abs(lhs - vr * std::conj(vs) * ref);
        report.constraints.push_back(
            PhaseConstraint{i + 1, r + 1, s + 1, vacuous, residual});
        report.max_relative_residual =
            std::max(report.max_relative_residual, residual / scale);
      }
    }
  }
  report.consistent = report.max_relative_residual <= tol;
  return report;
}

UniversalVerdict check_universal_quantization(const TransferSpec& transfer,
                                              const DiscreteMeasure& mu,
                                              int f_samples, double tol,
                                              std::uint64_t seed) {
  if (!transfer.all_unitary_branches()) {
    fail(ErrorCode::kNotMixedUnitary,
         "check_universal_quantization: every branch must be a single "
         "unitary conjugation");
  }
  if (!transfer.is_stochastic()) {
    fail(ErrorCode::kWeightsInvalid,
         "check_universal_quantization: weights must sum to one");
  }
  if (transfer.dim() != mu.dim()) {
    fail(ErrorCode::kDimensionMismatch,
         "check_universal_quantization: transfer and measure dimensions "
         "disagree");
  }
  const int n = mu.dim();

  // The one candidate the diagonal equations single out for every f: with
  // f == 1 the mass ratios collapse to p_i, i.e. V_i = sqrt(p_i) I.
  std::vector<CMat> candidate;
  candidate.reserve(static_cast<std::size_t>(transfer.size()));
  for (int i = 0; i < transfer.size(); ++i) {
    candidate.push_back(std::sqrt(transfer.weight(i)) * CMat::Identity(n, n));
  }

  std::vector<DensityMatrix> atom_states;
  for (const Atom& a : mu.atoms()) atom_states.push_back(a.state);

  UniversalVerdict verdict;
  verdict.samples = f_samples;
  Rng rng(seed);
  for (int j = 0; j < f_samples; ++j) {
    const StateFunction sample =
        offset_positive(random_state_function(rng, n), atom_states);
    const double residual = verify_diagram(transfer, sample, mu, candidate);
    verdict.max_residual = std::max(verdict.max_residual, residual);
    if (residual > tol && !verdict.witness) {
      verdict.witness = sample;
      verdict.witness_residual = residual;
    }
  }
  verdict.universal_pass = verdict.max_residual <= tol;

  const QuantumChannel phi = transfer.induced_channel();
  for (const DensityMatrix& s : atom_states) {
    verdict.max_atom_movement =
        std::max(verdict.max_atom_movement,
                 (phi.apply_raw(s.matrix()) - s.matrix()).norm());
  }
  verdict.atoms_all_fixed = verdict.max_atom_movement <= tol;
  verdict.verdicts_agree = verdict.universal_pass == verdict.atoms_all_fixed;
  return verdict;
}

}  // namespace cpdyn
