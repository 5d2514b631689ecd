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

#include "cpdyn/measure.hpp"
#include "cpdyn/state_function.hpp"

namespace cpdyn {

inline constexpr double kFaithfulnessFloor = 1e-8;
inline constexpr double kBarycenterTol = 1e-9;

// GNS data for a faithful state rho: the representation A -> A (x) I on
// C^n (x) C^n with cyclic vector |sqrt(rho)> = sum_i sqrt(r_i) |r_i>|r_i>.
struct GNSTriplet {
  int dim = 0;
  DensityMatrix rho;
  CVec sqrt_rho_vec;  // length n^2, tensor index a*n + b for |a>(x)|b>
  EigResult eig;      // spectral data of rho used to build the vector
};

GNSTriplet gns_triplet(const DensityMatrix& rho,
                       double faithfulness_floor = kFaithfulnessFloor);

// Flattened matrix-unit label: (i, j) -> n(i-1) + j, 1-based.
int pair_index(int i, int j, int n);

// Gram array of the embedded observable against the basis
// v_k = (E_k (x) I)|sqrt(rho)>: entry (r, s) = sum_m lambda_m f(omega_m)
// omega_m(E_rs).
CMat m_f_array(const StateFunction& f, const DiscreteMeasure& mu);

// Embedded observable in the commutant I (x) M_n. `block` is the Gram array
// M_f; `full` = I (x) block is the matrix in the paired basis, block diagonal
// with n identical blocks.
struct KappaArray {
  int dim = 0;
  CMat block;
  CMat full;
};

// Requires rho to be the barycenter of mu (within kBarycenterTol) and
// faithful.
KappaArray kappa_matrix(const StateFunction& f, const DiscreteMeasure& mu,
                        const DensityMatrix& rho);

// Operator coordinates of the embedding: the unique K with I (x) K acting as
// the Gram array above. In rho's eigenbasis K_{ss'} = [M_f]_{ss'} /
// sqrt(r_s r_{s'}); the result is conjugated back to the input basis.
// f == 1 with rho = b(mu) gives the identity.
CMat m_f_operator(const StateFunction& f, const DiscreteMeasure& mu,
                  const DensityMatrix& rho,
                  double faithfulness_floor = kFaithfulnessFloor);

}  // namespace cpdyn
