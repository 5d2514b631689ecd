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

#include "cpdyn/channel.hpp"

#include <cmath>

namespace cpdyn {

namespace {

bool is_unitary(const CMat& u, double tol) {
  const int n = static_cast<int>(u.rows());
  return (u.adjoint() * u - CMat::Identity(n, n)).norm() <= tol;
}

}  // namespace

QuantumChannel QuantumChannel::from_kraus(std::vector<CMat> kraus,
                                          bool require_tp) {
  if (kraus.empty()) {
    fail(ErrorCode::kValidationError, "channel: empty Kraus list");
  }
  require_square(kraus.front(), "channel");
  const int n = static_cast<int>(kraus.front().rows());
  for (const CMat& k : kraus) {
    require_square(k, "channel");
    require_same_dim(kraus.front(), k, "channel");
    if (!all_finite(k)) {
      fail(ErrorCode::kValidationError, "channel: non-finite Kraus entries");
    }
  }

  const double flag_tol = kChannelFlagTolFactor * static_cast<double>(n);
  CMat sum_vdv = CMat::Zero(n, n);
  CMat sum_vvd = CMat::Zero(n, n);
  for (const CMat& k : kraus) {
    sum_vdv += k.adjoint() * k;
    sum_vvd += k * k.adjoint();
  }
  const CMat id = CMat::Identity(n, n);

  QuantumChannel c;
  c.dim_ = n;
  c.kraus_ = std::move(kraus);
  c.trace_preserving_ = (sum_vdv - id).norm() <= flag_tol;
  c.unital_ = (sum_vvd - id).norm() <= flag_tol;
  // Kraus form guarantees complete positivity; the Choi test is kept as a
  // numerical cross-check.
  c.cp_ = choi_is_cp(choi_matrix(c), flag_tol);

  if (require_tp && !c.trace_preserving_) {
    fail(ErrorCode::kNotTracePreserving,
         "channel: Kraus family is not trace preserving");
  }
  return c;
}

QuantumChannel QuantumChannel::mixed_unitary(const std::vector<double>& weights,
                                             const std::vector<CMat>& unitaries) {
  if (weights.empty() || weights.size() != unitaries.size()) {
    fail(ErrorCode::kWeightsInvalid,
         "mixed_unitary: need one weight per unitary");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      fail(ErrorCode::kWeightsInvalid, "mixed_unitary: negative weight");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    fail(ErrorCode::kWeightsInvalid,
         "mixed_unitary: weights sum to " + std::to_string(total));
  }
  require_square(unitaries.front(), "mixed_unitary");
  const int n = static_cast<int>(unitaries.front().rows());
  const double utol = kUnitaryTolFactor * std::sqrt(static_cast<double>(n));
  std::vector<CMat> kraus;
  kraus.reserve(unitaries.size());
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    require_same_dim(unitaries.front(), unitaries[i], "mixed_unitary");
    if (!is_unitary(unitaries[i], utol)) {
      fail(ErrorCode::kNotUnitary,
           "mixed_unitary: operator " + std::to_string(i) + " is not unitary");
    }
    kraus.push_back(std::sqrt(weights[i]) * unitaries[i]);
  }
  return from_kraus(std::move(kraus), /*require_tp=*/true);
}

bool QuantumChannel::single_unitary() const {
  if (kraus_.size() != 1) return false;
  const double utol = kUnitaryTolFactor * std::sqrt(static_cast<double>(dim_));
  return is_unitary(kraus_.front(), utol);
}

CMat QuantumChannel::apply_raw(const CMat& rho) const {
  require_square(rho, "apply");
  if (static_cast<int>(rho.rows()) != dim_) {
    fail(ErrorCode::kDimensionMismatch,
         "apply: state dimension " + std::to_string(rho.rows()) +
             " does not match channel dimension " + std::to_string(dim_));
  }
  CMat out = CMat::Zero(dim_, dim_);
  for (const CMat& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

DensityMatrix QuantumChannel::apply(const DensityMatrix& rho) const {
  return DensityMatrix(apply_raw(rho.matrix()));
}

CMat kron(const CMat& a, const CMat& b) {
  const Eigen::Index p = a.rows(), q = a.cols();
  const Eigen::Index r = b.rows(), s = b.cols();
  CMat out(p * r, q * s);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < q; ++j) {
      out.block(i * r, j * s, r, s) = a(i, j) * b;
    }
  }
  return out;
}

CVec vec(const CMat& m) {
  return Eigen::Map<const CVec>(m.data(), m.size());
}

CMat unvec(const CVec& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) {
    fail(ErrorCode::kDimensionMismatch, "unvec: size mismatch");
  }
  return Eigen::Map<const CMat>(v.data(), n, n);
}

Superoperator superoperator(const QuantumChannel& channel) {
  const int n = channel.dim();
  CMat s = CMat::Zero(static_cast<Eigen::Index>(n) * n,
                      static_cast<Eigen::Index>(n) * n);
  for (const CMat& k : channel.kraus()) s += kron(k.conjugate(), k);
  return Superoperator{n, std::move(s)};
}

CMat choi_matrix(const QuantumChannel& channel) {
  const int n = channel.dim();
  return choi_of_map(n, [&](int i, int j) {
    CMat img = CMat::Zero(n, n);
    for (const CMat& k : channel.kraus()) {
      img += k.col(i) * k.col(j).adjoint();
    }
    return img;
  });
}

CMat choi_of_map(int n, const std::function<CMat(int, int)>& image_of_unit) {
  CMat c = CMat::Zero(static_cast<Eigen::Index>(n) * n,
                      static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      c.block(static_cast<Eigen::Index>(i) * n, static_cast<Eigen::Index>(j) * n,
              n, n) = image_of_unit(i, j);
    }
  }
  return c;
}

bool choi_is_cp(const CMat& choi, double tol) {
  const CMat h = 0.5 * (choi + CMat(choi.adjoint()));
  Eigen::SelfAdjointEigenSolver<CMat> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kSpectralFailure, "choi_is_cp: eigensolver failed");
  }
  return solver.eigenvalues().minCoeff() >= -tol;
}

}  // namespace cpdyn
