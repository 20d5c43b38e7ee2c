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
#include "arrowtime/linalg.hpp"
#include "arrowtime/pdm.hpp"

namespace arrowtime {

/// Recovering a process from R = ½{σ⊗1, M}.
///
/// With σ̃ = σ ⊗ 1 and row-major vectorization the equation reads
/// |R⟩⟩ = A|M⟩⟩ with A = ½(σ̃ ⊗ 1 + 1 ⊗ σ̃ᵀ). Three solvers are provided:
///
///  - extract_choi_sylvester: works in the eigenbasis of σ̃, where A is
///    diagonal with entries (λ_a + λ_b)/2. This is the closed evaluation of
///    M = 2∫₀^∞ e^{−tσ̃} R e^{−tσ̃} dt and costs O(d⁶).
///  - extract_choi_inverse: forms A explicitly and solves the d⁴ × d⁴
///    positive-definite system. Independent of the eigenbasis route.
///  - extract_choi_pseudoinverse: applies A‡, i.e. drops eigenbasis
///    components with λ_a + λ_b below 2·kRankTol·λ_max, returning P|M⟩⟩
///    together with the support projector P = A‡A.
///
/// Full-rank σ is required by the first two; the pseudoinverse works for any
/// σ and agrees with them when σ is full rank.

/// Eigenvalue-pair threshold factor for the pseudoinverse path.
inline constexpr double kPairRankTol = 2.0 * kRankTol;

struct MultiplicationSuperoperator {
  Matrix a;
  DensityMatrix source;
};

/// A = ½(σ̃⊗1 + 1⊗σ̃ᵀ) with σ̃ = σ ⊗ 1_d. Dimension d⁴ × d⁴.
MultiplicationSuperoperator build_superoperator(const DensityMatrix& sigma);

enum class ExtractionMode { Full, Projected };

struct ExtractionResult {
  ChoiMatrix choi;
  ExtractionMode mode = ExtractionMode::Full;
  std::optional<Matrix> support_projector;
  /// ‖½{σ̃, choi} − R‖_F. For projected results this includes any component
  /// of R outside Ran(A), so it stays near zero only for consistent data.
  double residual = 0.0;
};

ExtractionResult extract_choi_inverse(const Pdm& p, const DensityMatrix& sigma);
ExtractionResult extract_choi_pseudoinverse(const Pdm& p,
                                            const DensityMatrix& sigma);
ExtractionResult extract_choi_sylvester(const Pdm& p,
                                        const DensityMatrix& sigma);

/// Consistency of the forward/backward relation Ā|M̄⟩⟩ = (S⊗S*)A|M⟩⟩.
///
/// M and M̄ are extracted from R and S R S† against the PDM's own marginals
/// (Tr₂R and Tr₁R); A and Ā are built from the supplied states. The returned
/// Frobenius residual is at round-off level when the supplied states are the
/// ones encoded in R and grows with any mismatch (for example a corrupted
/// single-time correlator).
double swap_vectorization_relation_check(const Pdm& r,
                                         const DensityMatrix& sigma_fwd,
                                         const DensityMatrix& sigma_bwd);

/// ½((σ⊗1)M + M(σ⊗1)).
Matrix half_anticommutator(const DensityMatrix& sigma, const Matrix& m);

}  // namespace arrowtime
