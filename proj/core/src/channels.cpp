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

#include "arrowtime/channels.hpp"

#include <cmath>
#include <string>

#include "arrowtime/errors.hpp"

namespace arrowtime {

namespace {

constexpr double kUnitaryTol = 1e-9;
constexpr double kGramSchmidtAccept = 1e-6;

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() <= tol;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops, double tol)
    : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw InvalidArgument("channel needs at least one Kraus op");
  d_out_ = static_cast<std::size_t>(ops_.front().rows());
  d_in_ = static_cast<std::size_t>(ops_.front().cols());
  if (d_in_ == 0 || d_out_ == 0) throw InvalidArgument("empty Kraus operator");
  Matrix completeness = Matrix::Zero(ops_.front().cols(), ops_.front().cols());
  for (const Matrix& k : ops_) {
    if (static_cast<std::size_t>(k.rows()) != d_out_ ||
        static_cast<std::size_t>(k.cols()) != d_in_) {
      throw InvalidArgument("Kraus operators have inconsistent shapes");
    }
    if (!all_finite(k)) throw InvalidArgument("Kraus operator not finite");
    completeness += k.adjoint() * k;
  }
  const double defect =
      (completeness - Matrix::Identity(completeness.rows(), completeness.cols()))
          .norm();
  if (defect > tol) {
    throw InvalidArgument("Kraus set is not complete (trace-preserving); "
                          "‖Σ K†K − 1‖ = " + std::to_string(defect));
  }
}

KrausChannel KrausChannel::unitary(const Matrix& v) {
  if (!is_unitary(v, kUnitaryTol)) throw InvalidArgument("matrix is not unitary");
  return KrausChannel({v});
}

KrausChannel KrausChannel::identity(std::size_t d) {
  return KrausChannel({arrowtime::identity(d)});
}

Matrix KrausChannel::apply(const Matrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != d_in_ ||
      static_cast<std::size_t>(x.cols()) != d_in_) {
    throw InvalidArgument("operator dimension does not match channel input");
  }
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d_out_),
                            static_cast<Eigen::Index>(d_out_));
  for (const Matrix& k : ops_) out += k * x * k.adjoint();
  return out;
}

ChoiMatrix::ChoiMatrix(Matrix m, std::size_t d_in, std::size_t d_out)
    : m_(std::move(m)), d_in_(d_in), d_out_(d_out) {
  const auto dim = static_cast<Eigen::Index>(d_in * d_out);
  if (d_in == 0 || d_out == 0 || m_.rows() != dim || m_.cols() != dim) {
    throw InvalidArgument("CJ matrix shape does not match d_in · d_out");
  }
  if (!all_finite(m_)) throw InvalidArgument("CJ matrix not finite");
  if (!is_hermitian(m_, kTolHerm)) {
    throw InvalidArgument("CJ matrix is not Hermitian");
  }
}

Matrix ChoiMatrix::partial_transpose_input() const {
  const Dims dims{d_in_, d_out_};
  return partial_transpose(m_, dims, 0);
}

double ChoiMatrix::min_eig_t1() const {
  return min_eigenvalue(partial_transpose_input());
}

bool ChoiMatrix::is_t1_psd(double tol) const {
  const Matrix t1 = partial_transpose_input();
  return min_eigenvalue(t1) >= -psd_tolerance(t1, tol);
}

bool ChoiMatrix::is_trace_preserving(double tol) const {
  const Dims dims{d_in_, d_out_};
  const std::size_t keep[] = {0};
  const Matrix reduced = partial_trace(m_, dims, keep);
  return (reduced - identity(d_in_)).norm() <= tol;
}

UnitaryDilation::UnitaryDilation(Matrix u, std::size_t d_s, std::size_t d_e,
                                 DensityMatrix env_state)
    : u_(std::move(u)), d_s_(d_s), d_e_(d_e), env_(std::move(env_state)) {
  if (static_cast<std::size_t>(u_.rows()) != d_s * d_e) {
    throw InvalidArgument("dilation unitary does not act on S⊗E");
  }
  if (!is_unitary(u_, kUnitaryTol)) {
    throw InvalidArgument("dilation matrix is not unitary");
  }
  if (env_.dim() != d_e) {
    throw InvalidArgument("environment state dimension mismatch");
  }
}

ChoiMatrix cj_from_kraus(const KrausChannel& channel) {
  const auto din = static_cast<Eigen::Index>(channel.d_in());
  const auto dout = static_cast<Eigen::Index>(channel.d_out());
  Matrix m = Matrix::Zero(din * dout, din * dout);
  // Block (i, j) is E(|j⟩⟨i|) = Σ_k K|j⟩⟨i|K† = Σ_k K[:, j] K[:, i]†.
  for (const Matrix& k : channel.ops()) {
    for (Eigen::Index i = 0; i < din; ++i) {
      for (Eigen::Index j = 0; j < din; ++j) {
        m.block(i * dout, j * dout, dout, dout) +=
            k.col(j) * k.col(i).adjoint();
      }
    }
  }
  return ChoiMatrix(std::move(m), channel.d_in(), channel.d_out());
}

Matrix apply_via_cj(const ChoiMatrix& m, const Matrix& rho) {
  if (static_cast<std::size_t>(rho.rows()) != m.d_in() ||
      static_cast<std::size_t>(rho.cols()) != m.d_in()) {
    throw InvalidArgument("input dimension does not match CJ matrix");
  }
  // Tr₁[(ρ⊗1)M] = Σ_ij ρ_ji · M_block(i, j).
  const auto din = static_cast<Eigen::Index>(m.d_in());
  const auto dout = static_cast<Eigen::Index>(m.d_out());
  Matrix out = Matrix::Zero(dout, dout);
  for (Eigen::Index i = 0; i < din; ++i) {
    for (Eigen::Index j = 0; j < din; ++j) {
      out += rho(j, i) * m.matrix().block(i * dout, j * dout, dout, dout);
    }
  }
  return out;
}

UnitaryDilation stinespring_dilation(const KrausChannel& channel) {
  if (channel.d_in() != channel.d_out()) {
    throw InvalidArgument("dilation requires a square channel");
  }
  const auto d = static_cast<Eigen::Index>(channel.d_in());
  const auto de = static_cast<Eigen::Index>(channel.ops().size());
  const Eigen::Index total = d * de;

  Matrix u = Matrix::Zero(total, total);
  std::vector<Eigen::Index> filled;
  for (Eigen::Index j = 0; j < d; ++j) {
    const Eigen::Index col = j * de;
    for (Eigen::Index k = 0; k < de; ++k) {
      const Matrix& op = channel.ops()[static_cast<std::size_t>(k)];
      for (Eigen::Index i = 0; i < d; ++i) u(i * de + k, col) = op(i, j);
    }
    filled.push_back(col);
  }

  Eigen::Index next_candidate = 0;
  for (Eigen::Index col = 0; col < total; ++col) {
    if (col % de == 0) continue;
    bool placed = false;
    while (!placed && next_candidate < total) {
      Vector v = Vector::Zero(total);
      v(next_candidate++) = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index f : filled) {
          v -= u.col(f) * u.col(f).dot(v);
        }
      }
      const double norm = v.norm();
      if (norm > kGramSchmidtAccept) {
        u.col(col) = v / norm;
        filled.push_back(col);
        placed = true;
      }
    }
    if (!placed) throw InvalidArgument("unitary completion failed");
  }

  Matrix env = Matrix::Zero(de, de);
  env(0, 0) = 1.0;
  return UnitaryDilation(std::move(u), static_cast<std::size_t>(d),
                         static_cast<std::size_t>(de), DensityMatrix(env));
}

DensityMatrix apply_global(const UnitaryDilation& dil,
                           const DensityMatrix& rho_s) {
  if (rho_s.dim() != dil.d_s()) {
    throw InvalidArgument("system state dimension does not match dilation");
  }
  const Matrix joint = kron(rho_s.matrix(), dil.env_state().matrix());
  return DensityMatrix(dil.u() * joint * dil.u().adjoint(),
                       Dims{dil.d_s(), dil.d_e()});
}

KrausChannel induced_channel(const UnitaryDilation& dil) {
  const auto d = static_cast<Eigen::Index>(dil.d_s());
  const auto de = static_cast<Eigen::Index>(dil.d_e());
  const EigenSystem env = hermitian_eig(dil.env_state().matrix());

  // K_{k,l} = √p_l (1 ⊗ ⟨k|) U (1 ⊗ |e_l⟩).
  std::vector<Matrix> ops;
  for (Eigen::Index l = 0; l < de; ++l) {
    const double p = env.values(l);
    if (p <= 0.0) continue;
    const Vector e_l = env.vectors.col(l);
    for (Eigen::Index k = 0; k < de; ++k) {
      Matrix op = Matrix::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
          Complex acc = 0.0;
          for (Eigen::Index m = 0; m < de; ++m) {
            acc += dil.u()(i * de + k, j * de + m) * e_l(m);
          }
          op(i, j) = std::sqrt(p) * acc;
        }
      }
      ops.push_back(std::move(op));
    }
  }
  // Clamped eigenvalue dust can leave the set slightly incomplete.
  return KrausChannel(std::move(ops), 1e-7);
}

}  // namespace arrowtime
