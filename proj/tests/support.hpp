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

// Shared fixtures: named gates, channels and seeded instance generators used
// by the unit and acceptance suites.

#pragma once

#include <utility>
#include <vector>

#include "cpdyn/dynamics.hpp"
#include "cpdyn/measure.hpp"
#include "cpdyn/quantization.hpp"

namespace testsup {

using cpdyn::CMat;
using cpdyn::Complex;
using cpdyn::DensityMatrix;
using cpdyn::DiscreteMeasure;
using cpdyn::QuantumChannel;
using cpdyn::Rng;
using cpdyn::TransferSpec;

inline CMat identity(int n) { return CMat::Identity(n, n); }

inline CMat pauli_x() {
  CMat x(2, 2);
  x << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
  return x;
}

inline CMat pauli_z() {
  CMat z(2, 2);
  z << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  return z;
}

inline CMat diag2(double a, double b) {
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

// |i,j> -> |i, i xor j> on the ordered two-qubit basis.
inline CMat cnot_forward() {
  CMat c = CMat::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(3, 2) = c(2, 3) = 1.0;
  return c;
}

// |i,j> -> |i xor j, j>.
inline CMat cnot_reverse() {
  CMat c = CMat::Zero(4, 4);
  c(0, 0) = c(3, 1) = c(2, 2) = c(1, 3) = 1.0;
  return c;
}

inline QuantumChannel cnot_channel() {
  return QuantumChannel::mixed_unitary({0.5, 0.5},
                                       {cnot_forward(), cnot_reverse()});
}

inline QuantumChannel damping_channel(double gamma) {
  CMat k0 = CMat::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  CMat k1 = CMat::Zero(2, 2);
  k1(0, 1) = std::sqrt(gamma);
  return QuantumChannel::from_kraus({k0, k1}, /*require_tp=*/true);
}

inline QuantumChannel identity_channel(int n) {
  return QuantumChannel::from_kraus({identity(n)}, /*require_tp=*/true);
}

inline QuantumChannel unitary_channel(const CMat& u) {
  return QuantumChannel::from_kraus({u}, /*require_tp=*/true);
}

// Random trace-preserving channel: Gaussian Kraus seeds normalized through
// S^{-1/2} with S = sum_i A_i* A_i.
inline QuantumChannel random_tp_channel(Rng& rng, int n, int kraus_count) {
  std::vector<CMat> seeds;
  CMat s = CMat::Zero(n, n);
  for (int k = 0; k < kraus_count; ++k) {
    CMat a(n, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) a(i, j) = rng.cgaussian();
    }
    seeds.push_back(a);
    s += a.adjoint() * a;
  }
  const cpdyn::EigResult eig = cpdyn::hermitian_eig(s);
  CMat inv_root = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    inv_root += (1.0 / std::sqrt(eig.values(i))) * eig.vectors.col(i) *
                eig.vectors.col(i).adjoint();
  }
  for (CMat& a : seeds) a = a * inv_root;
  return QuantumChannel::from_kraus(std::move(seeds), /*require_tp=*/true);
}

inline QuantumChannel random_mixed_unitary(Rng& rng, int n, int kraus_count) {
  std::vector<CMat> unitaries;
  for (int k = 0; k < kraus_count; ++k) {
    unitaries.push_back(cpdyn::random_unitary(rng, n));
  }
  return QuantumChannel::mixed_unitary(rng.dirichlet(kraus_count), unitaries);
}

// Diagonal density with strictly positive entries (floored Dirichlet).
inline DensityMatrix random_positive_diagonal(Rng& rng, int n) {
  const std::vector<double> w = rng.dirichlet(n);
  CMat d = CMat::Zero(n, n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    d(i, i) = w[static_cast<std::size_t>(i)] + 0.05;
    total += d(i, i).real();
  }
  for (int i = 0; i < n; ++i) d(i, i) /= total;
  return DensityMatrix(d);
}

inline DiscreteMeasure random_diagonal_measure(Rng& rng, int n, int atom_count) {
  const std::vector<double> weights = rng.dirichlet(atom_count);
  std::vector<cpdyn::Atom> atoms;
  for (int m = 0; m < atom_count; ++m) {
    atoms.push_back(cpdyn::Atom{weights[static_cast<std::size_t>(m)],
                                random_positive_diagonal(rng, n)});
  }
  return DiscreteMeasure(std::move(atoms));
}

inline DiscreteMeasure random_measure(Rng& rng, int n, int atom_count) {
  const std::vector<double> weights = rng.dirichlet(atom_count);
  std::vector<cpdyn::Atom> atoms;
  for (int m = 0; m < atom_count; ++m) {
    atoms.push_back(cpdyn::Atom{weights[static_cast<std::size_t>(m)],
                                cpdyn::random_density(rng, n)});
  }
  return DiscreteMeasure(std::move(atoms));
}

// Transfer spec whose unitary branches all commute with a common frame, plus
// a measure of atoms diagonal in that frame; every atom is then fixed by
// every branch.
inline std::pair<TransferSpec, DiscreteMeasure> fixed_atom_instance(
    Rng& rng, int n, int branch_count, int atom_count) {
  const CMat frame = cpdyn::random_unitary(rng, n);
  std::vector<QuantumChannel> branches;
  for (int i = 0; i < branch_count; ++i) {
    CMat phases = CMat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      const double theta = rng.uniform(0.0, 6.283185307179586);
      phases(j, j) = Complex(std::cos(theta), std::sin(theta));
    }
    branches.push_back(unitary_channel(frame * phases * frame.adjoint()));
  }
  std::vector<cpdyn::Atom> atoms;
  const std::vector<double> weights = rng.dirichlet(atom_count);
  for (int m = 0; m < atom_count; ++m) {
    const DensityMatrix diag = random_positive_diagonal(rng, n);
    atoms.push_back(cpdyn::Atom{
        weights[static_cast<std::size_t>(m)],
        DensityMatrix(frame * diag.matrix() * frame.adjoint())});
  }
  return {TransferSpec(rng.dirichlet(branch_count), std::move(branches)),
          DiscreteMeasure(std::move(atoms))};
}

inline TransferSpec random_unitary_transfer(Rng& rng, int n, int branch_count,
                                            bool stochastic = true) {
  std::vector<QuantumChannel> branches;
  for (int i = 0; i < branch_count; ++i) {
    branches.push_back(unitary_channel(cpdyn::random_unitary(rng, n)));
  }
  std::vector<double> weights = rng.dirichlet(branch_count);
  if (!stochastic) {
    const double scale = rng.uniform(0.6, 1.4);
    for (double& w : weights) w *= scale;
  }
  return TransferSpec(std::move(weights), std::move(branches));
}

}  // namespace testsup
