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

#include "cpdyn/gns.hpp"

#include <cmath>

namespace cpdyn {

GNSTriplet gns_triplet(const DensityMatrix& rho, double faithfulness_floor) {
  EigResult eig = hermitian_eig(rho.matrix());
  const int n = rho.dim();
  const double min_eig = eig.values(n - 1);
  if (min_eig < faithfulness_floor) {
    fail(ErrorCode::kNotFaithful,
         "gns_triplet: smallest eigenvalue " + std::to_string(min_eig) +
             " is below the faithfulness floor");
  }
  CVec v = CVec::Zero(static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double root = std::sqrt(eig.values(i));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        v(static_cast<Eigen::Index>(a) * n + b) +=
            root * eig.vectors(a, i) * eig.vectors(b, i);
      }
    }
  }
  return GNSTriplet{n, rho, std::move(v), std::move(eig)};
}

int pair_index(int i, int j, int n) {
  if (i < 1 || i > n || j < 1 || j > n) {
    fail(ErrorCode::kIndexOutOfRange,
         "pair_index: (" + std::to_string(i) + "," + std::to_string(j) +
             ") outside 1.." + std::to_string(n));
  }
  return n * (i - 1) + j;
}

CMat m_f_array(const StateFunction& f, const DiscreteMeasure& mu) {
  const int n = mu.dim();
  CMat weighted = CMat::Zero(n, n);
  for (const Atom& a : mu.atoms()) {
    weighted += a.weight * f.eval(a.state) * a.state.matrix();
  }
  // omega(E_rs) picks the (s, r) entry, so the array is the transpose of the
  // f-weighted barycenter.
  return weighted.transpose();
}

KappaArray kappa_matrix(const StateFunction& f, const DiscreteMeasure& mu,
                        const DensityMatrix& rho) {
  const DensityMatrix b = barycenter(mu);
  if (trace_distance(rho, b) > kBarycenterTol) {
    fail(ErrorCode::kBarycenterMismatch,
         "kappa_matrix: rho is not the barycenter of mu");
  }
  // Faithfulness gate matches the GNS construction.
  (void)gns_triplet(rho);
  KappaArray out;
  out.dim = mu.dim();
  out.block = m_f_array(f, mu);
  out.full = kron(CMat::Identity(out.dim, out.dim), out.block);
  return out;
}

CMat m_f_operator(const StateFunction& f, const DiscreteMeasure& mu,
                  const DensityMatrix& rho, double faithfulness_floor) {
  const DensityMatrix b = barycenter(mu);
  if (trace_distance(rho, b) > kBarycenterTol) {
    fail(ErrorCode::kBarycenterMismatch,
         "m_f_operator: rho is not the barycenter of mu");
  }
  const EigResult eig = hermitian_eig(rho.matrix());
  const int n = rho.dim();
  if (eig.values(n - 1) < faithfulness_floor) {
    fail(ErrorCode::kNotFaithful,
         "m_f_operator: rho is not faithful enough for the Gram normalization");
  }

  CMat weighted = CMat::Zero(n, n);
  for (const Atom& a : mu.atoms()) {
    weighted += a.weight * f.eval(a.state) * a.state.matrix();
  }
  const CMat& u = eig.vectors;
  const CMat gram_eigenbasis = (u.adjoint() * weighted * u).transpose();
  CMat op(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      op(i, j) =
          gram_eigenbasis(i, j) / std::sqrt(eig.values(i) * eig.values(j));
    }
  }
  return u * op * u.adjoint();
}

}  // namespace cpdyn
