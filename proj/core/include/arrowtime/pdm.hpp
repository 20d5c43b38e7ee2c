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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arrowtime/channels.hpp"
#include "arrowtime/linalg.hpp"
#include "arrowtime/pauli.hpp"

namespace arrowtime {

/// Slack allowed when validating correlator ranges and the (I, I) entry.
inline constexpr double kCorrelatorSlack = 1e-9;

/// Two-time Pauli correlators ⟨{σ_a, σ_b}⟩ for every pair of n-qubit labels.
/// The table carries no notion of which slot is earlier.
class CorrelatorTable {
 public:
  struct Entry {
    PauliLabel a;
    PauliLabel b;
    double value = 0.0;
  };

  /// Dense row-major values indexed by (index(a), index(b)).
  CorrelatorTable(unsigned n_qubits, std::vector<double> values);

  /// Validates completeness, ranges and the (I…I, I…I) = 1 normalization.
  /// Throws MissingEntry naming the first absent pair, InvalidData otherwise.
  static CorrelatorTable from_entries(unsigned n_qubits,
                                      std::span<const Entry> entries);

  unsigned n_qubits() const { return n_; }
  std::uint64_t basis_size() const { return std::uint64_t{1} << (2 * n_); }
  double value(const PauliLabel& a, const PauliLabel& b) const;
  double value(std::uint64_t a, std::uint64_t b) const {
    return values_[a * basis_size() + b];
  }
  const std::vector<double>& values() const { return values_; }

  /// Entries in canonical order (a-index major, b-index minor).
  std::vector<Entry> entries() const;

  /// (a, b) → (b, a): the same data with the time labels exchanged.
  CorrelatorTable swapped() const;

  /// Shot count behind the values, when they were sampled.
  std::optional<std::uint64_t> shots;

 private:
  unsigned n_;
  std::vector<double> values_;
};

enum class Direction { Forward, Backward };
enum class Orientation { AsRecorded, Swapped };

/// Pseudo-density matrix on H₁⊗H₂ (slot 1 first). Hermitian, unit trace, may
/// have negative eigenvalues.
class Pdm {
 public:
  Pdm(Matrix m, unsigned n_qubits, Orientation orientation);

  const Matrix& matrix() const { return m_; }
  unsigned n_qubits() const { return n_; }
  std::size_t slot_dim() const { return std::size_t{1} << n_; }
  Orientation orientation() const { return orientation_; }

 private:
  Matrix m_;
  unsigned n_;
  Orientation orientation_;
};

/// Forward: R = 4⁻ⁿ Σ c_ab σ_a ⊗ σ_b. Backward: the same coefficients on
/// σ_b ⊗ σ_a.
Pdm pdm_from_correlators(const CorrelatorTable& table, Direction direction);

/// Coarse-grained ± projector scheme: for every pair,
/// Σ_{a,b=±1} ab · Tr[Π_b E(Π_a ρ Π_a)].
CorrelatorTable correlators_from_process(const DensityMatrix& rho,
                                         const KrausChannel& channel);

/// Binomially resamples every entry except (I…I, I…I) with `shots` draws per
/// pair. Deterministic for a given seed.
CorrelatorTable sample_correlators(const CorrelatorTable& exact,
                                   std::uint64_t shots, std::uint64_t seed);

/// R = ½((ρ⊗1) M + M (ρ⊗1)).
Pdm pdm_closed_form(const DensityMatrix& rho, const ChoiMatrix& m);

/// R̄ = ½((γ⊗1) M̄ + M̄ (γ⊗1)), tagged as swapped.
Pdm backward_closed_form(const DensityMatrix& gamma, const ChoiMatrix& m_bar);

/// S R S†; flips the orientation tag.
Pdm reverse(const Pdm& p);

/// States of the two slots, read as if slot 1 were the earlier time:
/// `initial` = Tr₂ p, `final` = Tr₁ p.
struct Marginals {
  DensityMatrix initial;
  DensityMatrix final;
};

/// Throws CorruptPdm when a marginal is not a valid density matrix.
Marginals marginals(const Pdm& p, double psd_tol = kTolPsd);

/// Sum of |negative eigenvalues|.
double negativity(const Pdm& p);

}  // namespace arrowtime
