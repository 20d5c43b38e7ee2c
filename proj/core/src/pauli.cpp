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

#include "arrowtime/pauli.hpp"

#include <array>
#include <bit>

#include "arrowtime/errors.hpp"

namespace arrowtime {

namespace {

constexpr std::array<char, 4> kLetters{'I', 'X', 'Y', 'Z'};

void check_qubits(unsigned n) {
  if (n == 0 || n > kMaxQubits) {
    throw InvalidArgument("qubit count must be in [1, " +
                          std::to_string(kMaxQubits) + "], got " +
                          std::to_string(n));
  }
}

unsigned code_of(bool x, bool z) {
  if (x && z) return 2;
  if (x) return 1;
  if (z) return 3;
  return 0;
}

}  // namespace

PauliLabel PauliLabel::identity(unsigned n_qubits) {
  check_qubits(n_qubits);
  return PauliLabel(n_qubits, 0, 0);
}

PauliLabel PauliLabel::from_index(unsigned n_qubits, std::uint64_t index) {
  check_qubits(n_qubits);
  if (index >> (2 * n_qubits) != 0) {
    throw InvalidArgument("Pauli index out of range");
  }
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (unsigned bit = 0; bit < n_qubits; ++bit) {
    const unsigned code = (index >> (2 * bit)) & 3U;
    if (code == 1 || code == 2) x |= std::uint64_t{1} << bit;
    if (code == 2 || code == 3) z |= std::uint64_t{1} << bit;
  }
  return PauliLabel(n_qubits, x, z);
}

PauliLabel PauliLabel::parse(std::string_view text) {
  check_qubits(static_cast<unsigned>(text.size()));
  const auto n = static_cast<unsigned>(text.size());
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (unsigned q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    switch (text[q]) {
      case 'I':
        break;
      case 'X':
        x |= bit;
        break;
      case 'Y':
        x |= bit;
        z |= bit;
        break;
      case 'Z':
        z |= bit;
        break;
      default:
        throw InvalidArgument("invalid Pauli letter '" +
                              std::string(1, text[q]) + "' in \"" +
                              std::string(text) + "\"");
    }
  }
  return PauliLabel(n, x, z);
}

std::uint64_t PauliLabel::index() const {
  std::uint64_t index = 0;
  for (unsigned bit = 0; bit < n_; ++bit) {
    const unsigned code = code_of((x_ >> bit) & 1U, (z_ >> bit) & 1U);
    index |= std::uint64_t{code} << (2 * bit);
  }
  return index;
}

char PauliLabel::letter(unsigned qubit) const {
  if (qubit >= n_) throw InvalidArgument("qubit index out of range");
  const unsigned bit = n_ - 1 - qubit;
  return kLetters[code_of((x_ >> bit) & 1U, (z_ >> bit) & 1U)];
}

std::string PauliLabel::str() const {
  std::string s(n_, 'I');
  for (unsigned q = 0; q < n_; ++q) s[q] = letter(q);
  return s;
}

PauliLabel PauliLabel::concat(const PauliLabel& other) const {
  const unsigned n = n_ + other.n_;
  if (n > 2 * kMaxQubits) throw InvalidArgument("concatenated label too long");
  return PauliLabel(n, (x_ << other.n_) | other.x_,
                    (z_ << other.n_) | other.z_);
}

std::vector<PauliLabel> enumerate_basis(unsigned n_qubits) {
  check_qubits(n_qubits);
  const std::uint64_t count = std::uint64_t{1} << (2 * n_qubits);
  std::vector<PauliLabel> basis;
  basis.reserve(count);
  for (std::uint64_t index = 0; index < count; ++index) {
    basis.push_back(PauliLabel::from_index(n_qubits, index));
  }
  return basis;
}

// σ|j⟩ = i^{|x∧z|} (−1)^{|z∧j|} |j ⊕ x⟩.
void accumulate_pauli(Matrix& target, const PauliLabel& label,
                      Complex coefficient) {
  const std::uint64_t dim = std::uint64_t{1} << label.n_qubits();
  if (static_cast<std::uint64_t>(target.rows()) != dim ||
      static_cast<std::uint64_t>(target.cols()) != dim) {
    throw InvalidArgument("target shape does not match Pauli label");
  }
  static constexpr std::array<Complex, 4> kIPowers{
      Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}};
  const Complex base =
      coefficient * kIPowers[std::popcount(label.x_bits() & label.z_bits()) % 4];
  for (std::uint64_t col = 0; col < dim; ++col) {
    const bool odd = std::popcount(label.z_bits() & col) % 2 != 0;
    const auto row = static_cast<Eigen::Index>(col ^ label.x_bits());
    target(row, static_cast<Eigen::Index>(col)) += odd ? -base : base;
  }
}

Matrix pauli_matrix(const PauliLabel& label) {
  const auto dim = static_cast<Eigen::Index>(1) << label.n_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  accumulate_pauli(m, label, 1.0);
  return m;
}

EigenProjectors eigenspace_projectors(const PauliLabel& label) {
  const auto dim = static_cast<Eigen::Index>(1) << label.n_qubits();
  if (label.is_identity()) {
    return {Matrix::Identity(dim, dim), Matrix::Zero(dim, dim)};
  }
  const Matrix sigma = pauli_matrix(label);
  const Matrix id = Matrix::Identity(dim, dim);
  return {0.5 * (id + sigma), 0.5 * (id - sigma)};
}

}  // namespace arrowtime
