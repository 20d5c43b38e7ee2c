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
#include <string>
#include <string_view>
#include <vector>

#include "arrowtime/linalg.hpp"

namespace arrowtime {

/// Largest qubit count accepted by the Pauli enumeration.
inline constexpr unsigned kMaxQubits = 8;

/// n-qubit Pauli string stored in symplectic form. Bit (n-1-q) of the masks
/// belongs to qubit q, so the leftmost letter is the most significant tensor
/// factor. Letter codes: I=0, X=1, Y=2, Z=3.
class PauliLabel {
 public:
  PauliLabel() = default;

  static PauliLabel identity(unsigned n_qubits);
  /// Canonical base-4 index with the leftmost letter most significant.
  static PauliLabel from_index(unsigned n_qubits, std::uint64_t index);
  /// Parses an ASCII string over {I, X, Y, Z}.
  static PauliLabel parse(std::string_view text);

  unsigned n_qubits() const { return n_; }
  std::uint64_t index() const;
  std::string str() const;
  char letter(unsigned qubit) const;
  bool is_identity() const { return x_ == 0 && z_ == 0; }

  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }

  /// Tensor product label (this ⊗ other) on n + m qubits.
  PauliLabel concat(const PauliLabel& other) const;

  friend bool operator==(const PauliLabel&, const PauliLabel&) = default;

 private:
  PauliLabel(unsigned n, std::uint64_t x, std::uint64_t z)
      : n_(n), x_(x), z_(z) {}

  unsigned n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// All 4ⁿ labels in canonical index order; index 0 is the all-I label.
std::vector<PauliLabel> enumerate_basis(unsigned n_qubits);

/// Dense 2ⁿ × 2ⁿ matrix of the label.
Matrix pauli_matrix(const PauliLabel& label);

/// target += coefficient · σ, touching only the 2ⁿ non-zero entries.
void accumulate_pauli(Matrix& target, const PauliLabel& label,
                      Complex coefficient);

struct EigenProjectors {
  Matrix plus;
  Matrix minus;
};

/// Π± = (1 ± σ)/2. The all-I label yields (identity, zero): its only outcome
/// is +1.
EigenProjectors eigenspace_projectors(const PauliLabel& label);

}  // namespace arrowtime
