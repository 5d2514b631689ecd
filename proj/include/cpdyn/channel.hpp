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

#include <functional>
#include <vector>

#include "cpdyn/matrix.hpp"

namespace cpdyn {

inline constexpr double kUnitaryTolFactor = 1e-9;      // times sqrt(n)
inline constexpr double kChannelFlagTolFactor = 1e-9;  // times n

// Completely positive map in Kraus form, Phi(rho) = sum_i V_i rho V_i*.
// Immutable after construction; the trace-preserving / unital / CP flags are
// computed once from the Kraus family.
class QuantumChannel {
 public:
  static QuantumChannel from_kraus(std::vector<CMat> kraus, bool require_tp);

  // Kraus family {sqrt(p_i) U_i}; the result is trace preserving and unital.
  static QuantumChannel mixed_unitary(const std::vector<double>& weights,
                                      const std::vector<CMat>& unitaries);

  int dim() const { return dim_; }
  const std::vector<CMat>& kraus() const { return kraus_; }
  bool trace_preserving() const { return trace_preserving_; }
  bool unital() const { return unital_; }
  bool completely_positive() const { return cp_; }

  // True when the channel is a single unitary conjugation.
  bool single_unitary() const;

  CMat apply_raw(const CMat& rho) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  QuantumChannel() = default;

  int dim_ = 0;
  std::vector<CMat> kraus_;
  bool trace_preserving_ = false;
  bool unital_ = false;
  bool cp_ = false;
};

CMat kron(const CMat& a, const CMat& b);

// Column-major vectorization, matching Eigen's storage order.
CVec vec(const CMat& m);
CMat unvec(const CVec& v, int n);

// Matrix of the channel acting on column-major vectorized densities:
// vec(V rho V*) = (conj(V) (x) V) vec(rho).
struct Superoperator {
  int dim = 0;
  CMat matrix;

  CMat apply_raw(const CMat& rho) const { return unvec(matrix * vec(rho), dim); }
};

Superoperator superoperator(const QuantumChannel& channel);

// Choi matrix C = sum_ij E_ij (x) Phi(E_ij). The entrywise overload accepts
// an arbitrary linear map through its images on the matrix units, which is
// how non-CP maps (e.g. the transpose) are probed.
CMat choi_matrix(const QuantumChannel& channel);
CMat choi_of_map(int n, const std::function<CMat(int, int)>& image_of_unit);
bool choi_is_cp(const CMat& choi, double tol);

}  // namespace cpdyn
