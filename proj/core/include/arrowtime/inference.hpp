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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arrowtime/channels.hpp"
#include "arrowtime/extraction.hpp"
#include "arrowtime/pauli.hpp"
#include "arrowtime/pdm.hpp"

namespace arrowtime {

/// Residual above which a table is rejected as inconsistent with any
/// state + linear map pair.
inline constexpr double kCorruptResidual = 1e-4;
/// Default constant c in psd_tol = c / √shots for sampled tables.
inline constexpr double kShotTolConstant = 3.0;

enum class Verdict { Forward, Backward, Either, Inconsistent, Indeterminate };

std::string_view to_string(Verdict v);
Verdict mirrored(Verdict v);

/// Joint outcome distribution of two ±1 measurements; index 0 is +1.
struct JointDistribution {
  std::array<std::array<double, 2>, 2> p{};  // p[a][b]
  double coarse_correlator() const;
};

/// Conditional expectations for one measurement order. An entry is empty
/// when the conditioning outcome has zero probability.
struct ConditionalExpectations {
  std::array<std::optional<double>, 2> b_given_a;  // ⟨σ_B⟩ given a = ±1
  std::array<std::optional<double>, 2> a_given_b;  // ⟨σ_A⟩ given b = ±1
};

struct Discrimination {
  ConditionalExpectations forward;   // A measured first, then the channel, B
  ConditionalExpectations reversed;  // B measured first, then the channel, A
  bool distinguishable = false;
};

/// Fine-grained evidence that can settle an otherwise indeterminate table:
/// model predictions for both orders plus the observed conditionals.
struct FineGrainedWitness {
  Discrimination prediction;
  ConditionalExpectations observed;
  double tol = 1e-6;
};

struct ArrowReport {
  Verdict verdict = Verdict::Indeterminate;
  double min_eig_fwd_t1 = 0.0;
  double min_eig_bwd_t1 = 0.0;
  std::size_t rank_rho = 0;
  std::size_t rank_gamma = 0;
  std::optional<double> arrow_measure;
  std::optional<double> entropy_delta;
  double residual_fwd = 0.0;
  double residual_bwd = 0.0;
  double psd_tol = kTolPsd;
  ExtractionMode mode_fwd = ExtractionMode::Full;
  ExtractionMode mode_bwd = ExtractionMode::Full;
  std::vector<std::string> notes;
};

/// Decide the time direction of a correlator table.
///
/// Both labelings are tried: M is extracted from R against ρ = Tr₂R and M̄
/// from R̄ = S R S† against γ = Tr₁R. With full-rank ρ and γ the verdict is
///
///   M^{T₁} ≥ 0, M̄^{T₁} ≱ 0  →  Forward
///   M^{T₁} ≱ 0, M̄^{T₁} ≥ 0  →  Backward
///   both ≥ 0                →  Either
///   neither                 →  Inconsistent
///
/// and rank-deficient marginals give Indeterminate unless `witness` decides.
/// Throws CorruptPdm / CorruptData for tables that fail validation or leave
/// an extraction residual above kCorruptResidual.
ArrowReport infer_arrow(const CorrelatorTable& table, double psd_tol = kTolPsd,
                        const std::optional<FineGrainedWitness>& witness = {});

/// F(M̄^{T₁}) − F(M^{T₁}).
double arrow_measure(const ChoiMatrix& m, const ChoiMatrix& m_bar);

/// As above; throws Unsupported when either extraction is projected.
double arrow_measure(const ExtractionResult& fwd, const ExtractionResult& bwd);

struct EntropyBalance {
  double delta = 0.0;  // [S(ρ_S₂)+S(ρ_E₂)] − [S(ρ_S₁)+S(ρ_E₁)]
  bool symmetric = false;
};

EntropyBalance entropy_balance(const DensityMatrix& rho_s,
                               const UnitaryDilation& dil);

/// P(a, b) = Tr[Π_b^B E(Π_a^A ρ Π_a^A)].
JointDistribution fine_grained_joint(const DensityMatrix& rho,
                                     const KrausChannel& channel,
                                     const PauliLabel& a_label,
                                     const PauliLabel& b_label);

ConditionalExpectations conditionals_from_joint(const JointDistribution& joint,
                                                double min_probability = 1e-12);

/// Compares the conditional expectations of the two measurement orders on the
/// same state and channel.
Discrimination fine_grained_discriminator(const DensityMatrix& rho,
                                          const KrausChannel& channel,
                                          const PauliLabel& a_label,
                                          const PauliLabel& b_label,
                                          double tol = 1e-9);

}  // namespace arrowtime
