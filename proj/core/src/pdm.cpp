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

#include "arrowtime/pdm.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "arrowtime/errors.hpp"

namespace arrowtime {

namespace {

// Re Tr[σ X] using the monomial structure of σ.
double pauli_expectation(const PauliLabel& label, const Matrix& x) {
  static constexpr std::array<Complex, 4> kIPowers{
      Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}};
  const Complex base =
      kIPowers[std::popcount(label.x_bits() & label.z_bits()) % 4];
  Complex acc = 0.0;
  const auto dim = static_cast<std::uint64_t>(x.rows());
  for (std::uint64_t col = 0; col < dim; ++col) {
    const bool odd = std::popcount(label.z_bits() & col) % 2 != 0;
    const auto row = static_cast<Eigen::Index>(col ^ label.x_bits());
    acc += (odd ? -base : base) * x(static_cast<Eigen::Index>(col), row);
  }
  return acc.real();
}

unsigned qubits_for_dim(std::size_t d) {
  if (d < 2 || !std::has_single_bit(d)) {
    throw InvalidArgument("dimension " + std::to_string(d) +
                          " is not a qubit register");
  }
  return static_cast<unsigned>(std::countr_zero(d));
}

Pdm symmetric_product(const DensityMatrix& state, const ChoiMatrix& m,
                      Orientation orientation) {
  if (state.dim() != m.d_in() || m.d_in() != m.d_out()) {
    throw InvalidArgument("state and CJ matrix dimensions do not match");
  }
  const unsigned n = qubits_for_dim(state.dim());
  const Matrix lifted = kron(state.matrix(), identity(m.d_out()));
  Matrix r = 0.5 * (lifted * m.matrix() + m.matrix() * lifted);
  return Pdm(std::move(r), n, orientation);
}

}  // namespace

CorrelatorTable::CorrelatorTable(unsigned n_qubits, std::vector<double> values)
    : n_(n_qubits), values_(std::move(values)) {
  if (n_ == 0 || n_ > kMaxQubits) throw InvalidArgument("invalid qubit count");
  const std::uint64_t size = basis_size();
  if (values_.size() != size * size) {
    throw InvalidData("correlator table must hold " +
                      std::to_string(size * size) + " values");
  }
  for (std::uint64_t a = 0; a < size; ++a) {
    for (std::uint64_t b = 0; b < size; ++b) {
      const double v = values_[a * size + b];
      if (!std::isfinite(v) || std::abs(v) > 1.0 + kCorrelatorSlack) {
        throw InvalidData("correlator (" +
                          PauliLabel::from_index(n_, a).str() + ", " +
                          PauliLabel::from_index(n_, b).str() +
                          ") = " + std::to_string(v) + " is outside [-1, 1]");
      }
    }
  }
  if (std::abs(values_[0] - 1.0) > kCorrelatorSlack) {
    throw InvalidData("identity correlator must equal 1");
  }
}

CorrelatorTable CorrelatorTable::from_entries(unsigned n_qubits,
                                              std::span<const Entry> entries) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) {
    throw InvalidData("invalid qubit count " + std::to_string(n_qubits));
  }
  const std::uint64_t size = std::uint64_t{1} << (2 * n_qubits);
  std::vector<double> values(size * size, 0.0);
  std::vector<bool> seen(size * size, false);
  for (const Entry& e : entries) {
    if (e.a.n_qubits() != n_qubits || e.b.n_qubits() != n_qubits) {
      throw InvalidData("label length does not match n_qubits: (" + e.a.str() +
                        ", " + e.b.str() + ")");
    }
    const std::uint64_t slot = e.a.index() * size + e.b.index();
    if (seen[slot]) {
      throw InvalidData("duplicate correlator entry (" + e.a.str() + ", " +
                        e.b.str() + ")");
    }
    seen[slot] = true;
    values[slot] = e.value;
  }
  for (std::uint64_t slot = 0; slot < seen.size(); ++slot) {
    if (!seen[slot]) {
      throw MissingEntry(PauliLabel::from_index(n_qubits, slot / size).str(),
                         PauliLabel::from_index(n_qubits, slot % size).str());
    }
  }
  return CorrelatorTable(n_qubits, std::move(values));
}

double CorrelatorTable::value(const PauliLabel& a, const PauliLabel& b) const {
  if (a.n_qubits() != n_ || b.n_qubits() != n_) {
    throw InvalidArgument("label length does not match table");
  }
  return value(a.index(), b.index());
}

std::vector<CorrelatorTable::Entry> CorrelatorTable::entries() const {
  const std::uint64_t size = basis_size();
  const std::vector<PauliLabel> basis = enumerate_basis(n_);
  std::vector<Entry> out;
  out.reserve(values_.size());
  for (std::uint64_t a = 0; a < size; ++a) {
    for (std::uint64_t b = 0; b < size; ++b) {
      out.push_back({basis[a], basis[b], values_[a * size + b]});
    }
  }
  return out;
}

CorrelatorTable CorrelatorTable::swapped() const {
  const std::uint64_t size = basis_size();
  std::vector<double> t(values_.size());
  for (std::uint64_t a = 0; a < size; ++a) {
    for (std::uint64_t b = 0; b < size; ++b) {
      t[b * size + a] = values_[a * size + b];
    }
  }
  CorrelatorTable out(n_, std::move(t));
  out.shots = shots;
  return out;
}

Pdm::Pdm(Matrix m, unsigned n_qubits, Orientation orientation)
    : m_(std::move(m)), n_(n_qubits), orientation_(orientation) {
  const auto dim = Eigen::Index{1} << (2 * n_);
  if (m_.rows() != dim || m_.cols() != dim) {
    throw InvalidArgument("PDM must be 4ⁿ × 4ⁿ");
  }
  if (!all_finite(m_)) throw InvalidArgument("PDM has non-finite entries");
  if (!is_hermitian(m_, kTolHerm)) throw InvalidArgument("PDM is not Hermitian");
  if (std::abs(m_.trace() - Complex{1.0, 0.0}) > kTolTrace) {
    throw InvalidArgument("PDM trace is not 1");
  }
}

Pdm pdm_from_correlators(const CorrelatorTable& table, Direction direction) {
  const unsigned n = table.n_qubits();
  const std::uint64_t size = table.basis_size();
  const std::vector<PauliLabel> basis = enumerate_basis(n);
  const auto dim = static_cast<Eigen::Index>(size);
  Matrix r = Matrix::Zero(dim, dim);
  const double norm = 1.0 / static_cast<double>(size);
  for (std::uint64_t a = 0; a < size; ++a) {
    for (std::uint64_t b = 0; b < size; ++b) {
      const double c = table.value(a, b);
      if (c == 0.0) continue;
      const PauliLabel joint = direction == Direction::Forward
                                   ? basis[a].concat(basis[b])
                                   : basis[b].concat(basis[a]);
      accumulate_pauli(r, joint, c * norm);
    }
  }
  return Pdm(std::move(r), n,
             direction == Direction::Forward ? Orientation::AsRecorded
                                             : Orientation::Swapped);
}

CorrelatorTable correlators_from_process(const DensityMatrix& rho,
                                         const KrausChannel& channel) {
  if (channel.d_in() != rho.dim() || channel.d_out() != rho.dim()) {
    throw InvalidArgument("channel does not match state dimension");
  }
  const unsigned n = qubits_for_dim(rho.dim());
  const std::vector<PauliLabel> basis = enumerate_basis(n);
  const std::uint64_t size = basis.size();
  std::vector<double> values(size * size);
  for (std::uint64_t a = 0; a < size; ++a) {
    // Σ_a a · E(Π_a ρ Π_a); Σ_b b Π_b = σ_b closes the second sum.
    Matrix signed_output;
    if (basis[a].is_identity()) {
      signed_output = channel.apply(rho.matrix());
    } else {
      const EigenProjectors p = eigenspace_projectors(basis[a]);
      signed_output = channel.apply(p.plus * rho.matrix() * p.plus) -
                      channel.apply(p.minus * rho.matrix() * p.minus);
    }
    for (std::uint64_t b = 0; b < size; ++b) {
      values[a * size + b] =
          std::clamp(pauli_expectation(basis[b], signed_output), -1.0, 1.0);
    }
  }
  return CorrelatorTable(n, std::move(values));
}

CorrelatorTable sample_correlators(const CorrelatorTable& exact,
                                   std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw InvalidArgument("shot count must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> values = exact.values();
  for (std::size_t slot = 1; slot < values.size(); ++slot) {
    const double p_plus = std::clamp(0.5 * (1.0 + values[slot]), 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(shots, p_plus);
    const auto hits = static_cast<double>(draw(rng));
    values[slot] = 2.0 * hits / static_cast<double>(shots) - 1.0;
  }
  CorrelatorTable out(exact.n_qubits(), std::move(values));
  out.shots = shots;
  return out;
}

Pdm pdm_closed_form(const DensityMatrix& rho, const ChoiMatrix& m) {
  return symmetric_product(rho, m, Orientation::AsRecorded);
}

Pdm backward_closed_form(const DensityMatrix& gamma, const ChoiMatrix& m_bar) {
  return symmetric_product(gamma, m_bar, Orientation::Swapped);
}

Pdm reverse(const Pdm& p) {
  const Matrix s = swap_operator(p.n_qubits());
  return Pdm(s * p.matrix() * s.adjoint(), p.n_qubits(),
             p.orientation() == Orientation::AsRecorded
                 ? Orientation::Swapped
                 : Orientation::AsRecorded);
}

Marginals marginals(const Pdm& p, double psd_tol) {
  const Dims dims{p.slot_dim(), p.slot_dim()};
  const std::size_t keep_first[] = {0};
  const std::size_t keep_second[] = {1};
  try {
    DensityMatrix initial(partial_trace(p.matrix(), dims, keep_first), psd_tol);
    DensityMatrix final(partial_trace(p.matrix(), dims, keep_second), psd_tol);
    return {std::move(initial), std::move(final)};
  } catch (const InvalidArgument& e) {
    throw CorruptPdm(std::string("PDM marginal is not a valid state: ") +
                     e.what());
  }
}

double negativity(const Pdm& p) {
  const RealVector values = hermitian_eigenvalues(p.matrix());
  double total = 0.0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) < 0.0) total -= values(k);
  }
  return total;
}

}  // namespace arrowtime
