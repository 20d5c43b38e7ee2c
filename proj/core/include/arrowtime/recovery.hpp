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

#include "arrowtime/channels.hpp"
#include "arrowtime/extraction.hpp"
#include "arrowtime/linalg.hpp"

namespace arrowtime {

enum class RecoveryMethod { Dilation, Unitary, Petz };

struct RecoveryResult {
  ChoiMatrix choi_bar;
  std::optional<UnitaryDilation> dilation_used;
  bool is_t1_psd = false;
  double min_eig_t1 = 0.0;
  ExtractionMode mode = ExtractionMode::Full;
  RecoveryMethod method = RecoveryMethod::Dilation;
  /// Reproduction residual of the extraction step (0 for closed forms).
  double residual = 0.0;
};

/// Two-slot PDM of the reversed global process on (S₁E₁)⊗(S₂E₂): the state
/// U(ρ_S⊗ρ_E)U† evolved by U†, in closed form ½{ρ_{S₂E₂}⊗1, M_{U†}}.
Matrix reversed_global_pdm(const DensityMatrix& rho_s,
                           const UnitaryDilation& dil);

/// Tr_{E₁E₂} of reversed_global_pdm, keeping subsystems {0, 2} of the
/// (d, d_E, d, d_E) split.
Matrix reduced_reversed_pdm(const DensityMatrix& rho_s,
                            const UnitaryDilation& dil);

/// Recovery map of a given dilation: M̄ solving
/// Tr_{E₁E₂} R̄_global = ½{γ⊗1, M̄}, γ = Tr_E U(ρ_S⊗ρ_E)U†. A rank-deficient
/// γ yields the projected representative and mode = Projected.
RecoveryResult unitary_dilation_recovery(const DensityMatrix& rho_s,
                                         const UnitaryDilation& dil,
                                         double psd_tol = kTolPsd);

/// CJ matrix of X ↦ V† X V.
ChoiMatrix unitary_reversal_cj(const Matrix& v);

/// L = (√ρ⊗1) M (√ρ⊗1).
Matrix leifer_spekkens_state(const DensityMatrix& rho, const ChoiMatrix& m);

/// M̄ = (γ^{−1/2}⊗1) S L S† (γ^{−1/2}⊗1) with γ = E(ρ). On a rank-deficient
/// γ the inverse square root is taken on the support and mode = Projected.
RecoveryResult petz_reversal_cj(const DensityMatrix& rho, const ChoiMatrix& m,
                                double psd_tol = kTolPsd);

}  // namespace arrowtime
