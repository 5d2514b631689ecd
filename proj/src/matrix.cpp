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

#include "cpdyn/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace cpdyn {

void require_square(const CMat& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    fail(ErrorCode::kDimensionMismatch,
         std::string(what) + ": expected a nonempty square matrix, got " +
             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_same_dim(const CMat& a, const CMat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::kDimensionMismatch,
         std::string(what) + ": dimension mismatch " + std::to_string(a.rows()) +
             "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
             "x" + std::to_string(b.cols()));
  }
}

bool all_finite(const CMat& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

namespace {

// Rotate each eigenvector so its first significant component is real
// positive, then order descending by eigenvalue with exact ties broken by the
// first differing component.
EigResult canonicalize(const RVec& values, const CMat& vectors) {
  const Eigen::Index n = values.size();
  CMat v = vectors;
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const Complex x = v(r, c);
      if (std::abs(x) > 1e-12) {
        v.col(c) *= std::conj(x) / std::abs(x);
        break;
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  auto column_less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const Complex x = v(r, a);
      const Complex y = v(r, b);
      if (x.real() != y.real()) return x.real() < y.real();
      if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
  };
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (values(a) != values(b)) return values(a) > values(b);
    return column_less(b, a);
  });

  EigResult out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = values(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace

EigResult hermitian_eig(const CMat& h) {
  require_square(h, "hermitian_eig");
  if (!all_finite(h)) {
    fail(ErrorCode::kValidationError, "hermitian_eig: non-finite entries");
  }
  const double herm_err = (h - h.adjoint()).norm();
  if (herm_err > kHermitianTolFactor * h.norm()) {
    fail(ErrorCode::kNotHermitian,
         "hermitian_eig: ||H - H*||_F = " + std::to_string(herm_err) +
             " exceeds tolerance");
  }
  const CMat hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(hs);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kSpectralFailure, "hermitian_eig: solver did not converge");
  }
  return canonicalize(solver.eigenvalues(), solver.eigenvectors());
}

double commutator_frobenius(const CMat& a, const CMat& b) {
  require_square(a, "commutator_frobenius");
  require_same_dim(a, b, "commutator_frobenius");
  return (a * b - b * a).norm();
}

DensityCheck check_density(const CMat& a, double tol) {
  DensityCheck out;
  if (a.rows() != a.cols() || a.rows() == 0 || !all_finite(a)) {
    return out;
  }
  const double herm_err = (a - a.adjoint()).norm();
  out.hermitian = herm_err <= kHermitianTolFactor * std::max(a.norm(), 1.0);
  if (!out.hermitian) return out;

  const CMat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  if (solver.info() != Eigen::Success) return out;
  out.min_eigenvalue = solver.eigenvalues().minCoeff();
  out.positive = out.min_eigenvalue >= -tol;
  out.trace_error = std::abs(h.trace() - Complex(1.0, 0.0));
  out.unit_trace = out.trace_error <= tol;
  out.ok = out.hermitian && out.positive && out.unit_trace;
  return out;
}

bool is_density(const CMat& a, double tol) { return check_density(a, tol).ok; }

DensityMatrix::DensityMatrix(const CMat& m) {
  require_square(m, "density");
  if (!all_finite(m)) {
    fail(ErrorCode::kValidationError, "density: non-finite entries");
  }
  const double herm_err = (m - m.adjoint()).norm();
  if (herm_err > kHermitianTolFactor * std::max(m.norm(), 1.0)) {
    fail(ErrorCode::kNotHermitian, "density: matrix is not Hermitian");
  }
  CMat h = 0.5 * (m + m.adjoint());
  const Eigen::Index n = h.rows();

  const double trace_tol = kDensityTraceTolFactor * static_cast<double>(n);
  const Complex tr = h.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > trace_tol) {
    fail(ErrorCode::kValidationError,
         "density: trace " + std::to_string(tr.real()) + " is not one");
  }

  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kSpectralFailure, "density: eigensolver failed");
  }
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kDensityEigClip) {
    fail(ErrorCode::kValidationError,
         "density: negative eigenvalue " + std::to_string(min_eig));
  }
  if (min_eig < 0.0) {
    RVec clipped = solver.eigenvalues().cwiseMax(0.0);
    h = solver.eigenvectors() * clipped.asDiagonal() *
        solver.eigenvectors().adjoint();
    h = 0.5 * (h + CMat(h.adjoint()));
  }
  m_ = h;
}

Complex DensityMatrix::expect_unit(int r, int s) const {
  const int n = dim();
  if (r < 1 || r > n || s < 1 || s > n) {
    fail(ErrorCode::kIndexOutOfRange,
         "expect_unit: index (" + std::to_string(r) + "," + std::to_string(s) +
             ") outside 1.." + std::to_string(n));
  }
  return m_(s - 1, r - 1);
}

double trace_distance(const CMat& a, const CMat& b) {
  require_square(a, "trace_distance");
  require_same_dim(a, b, "trace_distance");
  CMat d = a - b;
  d = 0.5 * (d + CMat(d.adjoint()));
  Eigen::SelfAdjointEigenSolver<CMat> solver(d, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kSpectralFailure, "trace_distance: eigensolver failed");
  }
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

CMat random_hermitian(Rng& rng, int n) {
  CMat a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) a(i, j) = rng.cgaussian();
  }
  return 0.5 * (a + CMat(a.adjoint()));
}

CMat random_unitary(Rng& rng, int n) {
  CMat z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) z(i, j) = rng.cgaussian();
  }
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ() * CMat::Identity(n, n);
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

DensityMatrix random_density(Rng& rng, int n) {
  CMat b(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) b(i, j) = rng.cgaussian();
  }
  CMat rho = b * b.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

}  // namespace cpdyn
