// Copyright 2026 The arrowtime Authors
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

#include <optional>
#include <vector>

#include "arrowtime/linalg.hpp"

namespace arrowtime {

inline constexpr double kTolCompleteness = 1e-9;

/// Trace-preserving channel in Kraus form, Σ K†K = 1.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> kraus_ops,
                        double tol = kTolCompleteness);

  /// Single-Kraus channel X ↦ V X V†.
  static KrausChannel unitary(const Matrix& v);
  static KrausChannel identity(std::size_t d);

  const std::vector<Matrix>& ops() const { return ops_; }
  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }

  /// Σ K X K†. Accepts any operator, not only states.
  Matrix apply(const Matrix& x) const;

 private:
  std::vector<Matrix> ops_;
  std::size_t d_in_ = 0;
  std::size_t d_out_ = 0;
};

/// CJ matrix M = Σ_ij |i⟩⟨j| ⊗ E(|j⟩⟨i|) on H_in ⊗ H_out. Complete positivity
/// of E is positivity of the input-slot partial transpose M^{T₁}.
class ChoiMatrix {
 public:
  ChoiMatrix(Matrix m, std::size_t d_in, std::size_t d_out);

  const Matrix& matrix() const { return m_; }
  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }

  Matrix partial_transpose_input() const;
  double min_eig_t1() const;
  /// min eig(M^{T₁}) ≥ −tol · max(1, ‖M^{T₁}‖₂).
  bool is_t1_psd(double tol = kTolPsd) const;

  /// Σ_ij |i⟩⟨j| Tr E(|j⟩⟨i|) = 1 on the input space.
  bool is_trace_preserving(double tol = kTolCompleteness) const;

 private:
  Matrix m_;
  std::size_t d_in_;
  std::size_t d_out_;
};

/// Global unitary on S⊗E (system factor first) with a fixed environment
/// input state.
class UnitaryDilation {
 public:
  UnitaryDilation(Matrix u, std::size_t d_s, std::size_t d_e,
                  DensityMatrix env_state);

  const Matrix& u() const { return u_; }
  std::size_t d_s() const { return d_s_; }
  std::size_t d_e() const { return d_e_; }
  const DensityMatrix& env_state() const { return env_; }

 private:
  Matrix u_;
  std::size_t d_s_;
  std::size_t d_e_;
  DensityMatrix env_;
};

ChoiMatrix cj_from_kraus(const KrausChannel& channel);

/// Tr₁[(ρ ⊗ 1) M].
Matrix apply_via_cj(const ChoiMatrix& m, const Matrix& rho);

/// Canonical Stinespring dilation with d_E = number of Kraus operators and
/// environment |0⟩⟨0|. Columns (j, 0) hold Σ_k K_k|j⟩ ⊗ |k⟩; the remaining
/// columns are completed in index order by Gram–Schmidt over the canonical
/// basis (two orthogonalization passes).
UnitaryDilation stinespring_dilation(const KrausChannel& channel);

/// U (ρ_S ⊗ ρ_E) U†.
DensityMatrix apply_global(const UnitaryDilation& dil, const DensityMatrix& rho_s);

/// Channel on S induced by the dilation: Tr_E U(· ⊗ ρ_E)U†.
KrausChannel induced_channel(const UnitaryDilation& dil);

}  // namespace arrowtime
