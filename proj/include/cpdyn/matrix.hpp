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

#include <Eigen/Dense>
#include <complex>

#include "cpdyn/error.hpp"
#include "cpdyn/rng.hpp"

namespace cpdyn {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Hermiticity is accepted up to 1e-9 times the Frobenius norm of the input;
// density construction clips eigenvalue noise in [-1e-9, 0) to zero so that
// long channel iterations cannot cascade into spurious rejections.
inline constexpr double kHermitianTolFactor = 1e-9;
inline constexpr double kDensityEigClip = 1e-9;
inline constexpr double kDensityTraceTolFactor = 1e-9;  // times dimension

void require_square(const CMat& a, const char* what);
void require_same_dim(const CMat& a, const CMat& b, const char* what);
bool all_finite(const CMat& a);

// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted
// descending; exact ties are ordered by the first differing eigenvector
// component and each eigenvector's first significant component is rotated to
// the positive real axis, so the output is reproducible.
struct EigResult {
  RVec values;
  CMat vectors;  // orthonormal columns matching `values`
};

EigResult hermitian_eig(const CMat& h);

double commutator_frobenius(const CMat& a, const CMat& b);

struct DensityCheck {
  bool hermitian = false;
  bool positive = false;
  bool unit_trace = false;
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;
  bool ok = false;
};

// Diagnostic density test: Hermitian, min eigenvalue >= -tol, trace within
// tol of one. Never throws; the flags say which check failed.
DensityCheck check_density(const CMat& a, double tol);
bool is_density(const CMat& a, double tol);

// Validated positive-semidefinite trace-one matrix. Doubles as the state
// functional omega(A) = tr(A omega).
class DensityMatrix {
 public:
  explicit DensityMatrix(const CMat& m);

  const CMat& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  // omega(E_rs) for 1-based unit indices, i.e. entry (s, r) of the matrix.
  Complex expect_unit(int r, int s) const;

 private:
  CMat m_;
};

// Trace distance d(a, b) = tr|a - b| / 2.
double trace_distance(const CMat& a, const CMat& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

CMat random_hermitian(Rng& rng, int n);
CMat random_unitary(Rng& rng, int n);
DensityMatrix random_density(Rng& rng, int n);

}  // namespace cpdyn
