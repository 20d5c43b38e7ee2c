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

#include "arrowtime/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "arrowtime/errors.hpp"

namespace arrowtime {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiOffTol = 1e-14;

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

void check_dims(const Matrix& o, std::span<const std::size_t> dims) {
  if (o.rows() != o.cols()) {
    throw InvalidArgument("operator must be square");
  }
  if (dims.empty() || product(dims) != static_cast<std::size_t>(o.rows())) {
    throw InvalidArgument("subsystem dimensions do not multiply to " +
                          std::to_string(o.rows()));
  }
}

// Mixed-radix digits of `index`, most significant subsystem first.
void split_index(std::size_t index, std::span<const std::size_t> dims,
                 std::vector<std::size_t>& digits) {
  digits.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

std::size_t join_index(std::span<const std::size_t> digits,
                       std::span<const std::size_t> dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    index = index * dims[k] + digits[k];
  }
  return index;
}

// In-place cyclic Jacobi on a Hermitian matrix. On return `a` is diagonal up
// to the convergence threshold and `v` holds the accumulated rotations.
void jacobi_diagonalize(Matrix& a, Matrix& v) {
  const Eigen::Index n = a.rows();
  v = Matrix::Identity(n, n);
  const double scale = a.norm();
  if (scale == 0.0 || n == 1) return;

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index q = 0; q < n; ++q) {
      for (Eigen::Index p = 0; p < q; ++p) off += std::norm(a(p, q));
    }
    if (std::sqrt(2.0 * off) < kJacobiOffTol * scale) return;

    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300 || mag < 1e-18 * scale) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Complex phase_conj = std::conj(apq) / mag;  // e^{-iφ}

        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]] restricted to (p, q).
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * phase_conj;
        const Complex jqq = c * phase_conj;

        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          const Complex new_kp = akp * jpp + akq * jqp;
          const Complex new_kq = akp * jpq + akq * jqq;
          a(k, p) = new_kp;
          a(k, q) = new_kq;
          a(p, k) = std::conj(new_kp);
          a(q, k) = std::conj(new_kq);
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = a(q, p) = 0.0;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }
}

Matrix hermitian_part(const Matrix& h, double herm_tol) {
  if (h.rows() != h.cols()) throw InvalidArgument("matrix must be square");
  if (!all_finite(h)) throw InvalidArgument("matrix has non-finite entries");
  if (!is_hermitian(h, herm_tol)) {
    throw InvalidArgument("matrix is not Hermitian within tolerance");
  }
  return 0.5 * (h + h.adjoint());
}

}  // namespace

Matrix identity(std::size_t d) {
  return Matrix::Identity(static_cast<Eigen::Index>(d),
                          static_cast<Eigen::Index>(d));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

bool is_hermitian(const Matrix& h, double tol) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).norm() <= tol * std::max(1.0, h.norm());
}

EigenSystem hermitian_eig(const Matrix& h, double herm_tol) {
  Matrix a = hermitian_part(h, herm_tol);
  Matrix v;
  jacobi_diagonalize(a, v);

  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) {
                     return a(x, x).real() < a(y, y).real();
                   });

  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

RealVector hermitian_eigenvalues(const Matrix& h, double herm_tol) {
  return hermitian_eig(h, herm_tol).values;
}

double min_eigenvalue(const Matrix& h, double herm_tol) {
  const RealVector values = hermitian_eigenvalues(h, herm_tol);
  return values.size() == 0 ? 0.0 : values(0);
}

Matrix hermitian_function(const Matrix& h,
                          const std::function<double(double)>& f) {
  const EigenSystem es = hermitian_eig(h);
  RealVector mapped(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    mapped(k) = f(es.values(k));
  }
  return es.vectors * mapped.cast<Complex>().asDiagonal() *
         es.vectors.adjoint();
}

double hermitian_spectral_norm(const Matrix& h) {
  const RealVector values = hermitian_eigenvalues(h);
  if (values.size() == 0) return 0.0;
  return std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
}

double psd_tolerance(const Matrix& h, double tol) {
  return tol * std::max(1.0, hermitian_spectral_norm(h));
}

Matrix partial_trace(const Matrix& o, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep) {
  check_dims(o, dims);
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw InvalidArgument("kept subsystem out of range");
    kept[k] = true;
  }

  std::vector<std::size_t> kept_dims;
  std::vector<std::size_t> traced_dims;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    (kept[k] ? kept_dims : traced_dims).push_back(dims[k]);
  }

  const std::size_t total = product(dims);
  std::vector<std::size_t> kept_of(total);
  std::vector<std::size_t> traced_of(total);
  std::vector<std::size_t> digits;
  std::vector<std::size_t> kd;
  std::vector<std::size_t> td;
  for (std::size_t index = 0; index < total; ++index) {
    split_index(index, dims, digits);
    kd.clear();
    td.clear();
    for (std::size_t k = 0; k < dims.size(); ++k) {
      (kept[k] ? kd : td).push_back(digits[k]);
    }
    kept_of[index] = join_index(kd, kept_dims);
    traced_of[index] = join_index(td, traced_dims);
  }

  const auto out_dim = static_cast<Eigen::Index>(product(kept_dims));
  Matrix out = Matrix::Zero(out_dim, out_dim);
  for (std::size_t c = 0; c < total; ++c) {
    for (std::size_t r = 0; r < total; ++r) {
      if (traced_of[r] != traced_of[c]) continue;
      out(static_cast<Eigen::Index>(kept_of[r]),
          static_cast<Eigen::Index>(kept_of[c])) +=
          o(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

Matrix partial_transpose(const Matrix& o, std::span<const std::size_t> dims,
                         std::size_t subsystem) {
  check_dims(o, dims);
  if (subsystem >= dims.size()) {
    throw InvalidArgument("subsystem index out of range");
  }
  const std::size_t total = product(dims);
  Matrix out(o.rows(), o.cols());
  std::vector<std::size_t> rd;
  std::vector<std::size_t> cd;
  for (std::size_t c = 0; c < total; ++c) {
    split_index(c, dims, cd);
    for (std::size_t r = 0; r < total; ++r) {
      split_index(r, dims, rd);
      std::swap(rd[subsystem], cd[subsystem]);
      const std::size_t src_r = join_index(rd, dims);
      const std::size_t src_c = join_index(cd, dims);
      std::swap(rd[subsystem], cd[subsystem]);
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          o(static_cast<Eigen::Index>(src_r), static_cast<Eigen::Index>(src_c));
    }
  }
  return out;
}

VectorizedOperator vectorize(const Matrix& o) {
  VectorizedOperator v;
  v.rows = o.rows();
  v.cols = o.cols();
  v.data.resize(o.rows() * o.cols());
  for (Eigen::Index i = 0; i < o.rows(); ++i) {
    for (Eigen::Index j = 0; j < o.cols(); ++j) {
      v.data(i * o.cols() + j) = o(i, j);
    }
  }
  return v;
}

Matrix devectorize(const VectorizedOperator& v) {
  if (v.data.size() != v.rows * v.cols) {
    throw InvalidArgument("vector length does not match recorded shape");
  }
  Matrix o(v.rows, v.cols);
  for (Eigen::Index i = 0; i < v.rows; ++i) {
    for (Eigen::Index j = 0; j < v.cols; ++j) {
      o(i, j) = v.data(i * v.cols + j);
    }
  }
  return o;
}

Matrix pseudoinverse(const Matrix& a, double rank_tol) {
  if (!all_finite(a)) throw InvalidArgument("matrix has non-finite entries");

  if (a.rows() == a.cols() && is_hermitian(a, kTolHerm)) {
    const EigenSystem es = hermitian_eig(a);
    const double largest = es.values.cwiseAbs().maxCoeff();
    const double cut = rank_tol * largest;
    RealVector inv = RealVector::Zero(es.values.size());
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
      if (std::abs(es.values(k)) > cut) inv(k) = 1.0 / es.values(k);
    }
    return es.vectors * inv.cast<Complex>().asDiagonal() *
           es.vectors.adjoint();
  }

  // General input: the Hermitian dilation [[0, A], [A†, 0]] has eigenvalues
  // ±σ_k with eigenvectors (u_k; ±v_k)/√2, so A‡ = Σ_{σ>cut} 2 v u† / σ.
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  Matrix dilation = Matrix::Zero(m + n, m + n);
  dilation.topRightCorner(m, n) = a;
  dilation.bottomLeftCorner(n, m) = a.adjoint();
  const EigenSystem es = hermitian_eig(dilation);
  const double largest = es.values.cwiseAbs().maxCoeff();
  const double cut = rank_tol * largest;
  Matrix out = Matrix::Zero(n, m);
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const double sigma = es.values(k);
    if (sigma <= cut) continue;
    const Vector u = es.vectors.col(k).head(m);
    const Vector v = es.vectors.col(k).tail(n);
    out += (2.0 / sigma) * v * u.adjoint();
  }
  return out;
}

Matrix swap_operator_dim(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix s = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) s(i * n + j, j * n + i) = 1.0;
  }
  return s;
}

Matrix swap_operator(unsigned n_qubits) {
  if (n_qubits == 0) throw InvalidArgument("swap operator needs n >= 1");
  return swap_operator_dim(std::size_t{1} << n_qubits);
}

double negativity_functional(const Matrix& o, double herm_tol) {
  const RealVector values = hermitian_eigenvalues(o, herm_tol);
  double f = 0.0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    f += std::abs(values(k)) - values(k);
  }
  return f;
}

DensityMatrix::DensityMatrix(Matrix m, double psd_tol)
    : DensityMatrix(m, Dims{static_cast<std::size_t>(m.rows())}, psd_tol) {}

DensityMatrix::DensityMatrix(Matrix m, Dims dims, double psd_tol)
    : dims_(std::move(dims)) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidArgument("density matrix must be square and non-empty");
  }
  check_dims(m, dims_);
  if (!all_finite(m)) {
    throw InvalidArgument("density matrix has non-finite entries");
  }
  if (!is_hermitian(m, kTolHerm)) {
    throw InvalidArgument("density matrix is not Hermitian");
  }
  m_ = 0.5 * (m + m.adjoint());
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kTolTrace) {
    throw InvalidArgument("density matrix trace is " +
                          std::to_string(tr.real()) + ", expected 1");
  }
  const double lowest = min_eigenvalue(m_);
  if (lowest < -psd_tol * std::max(1.0, hermitian_spectral_norm(m_))) {
    throw InvalidArgument("density matrix has negative eigenvalue " +
                          std::to_string(lowest));
  }
}

std::size_t DensityMatrix::rank(double rel_tol) const {
  const RealVector values = hermitian_eigenvalues(m_);
  const double largest = values(values.size() - 1);
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) > rel_tol * largest) ++r;
  }
  return r;
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidArgument("zero state vector");
  const Vector unit = psi / norm;
  return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  return DensityMatrix(identity(d) / static_cast<double>(d));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector values = hermitian_eigenvalues(rho.matrix());
  double s = 0.0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    const double p = values(k);
    if (p > 0.0) s -= p * std::log2(p);
  }
  return std::max(0.0, s);
}

}  // namespace arrowtime
