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

#include "arrowtime/recovery.hpp"

#include <bit>
#include <cmath>

#include "arrowtime/errors.hpp"
#include "arrowtime/pdm.hpp"

namespace arrowtime {

namespace {

// CJ matrix of X ↦ W X W† without building a KrausChannel:
// M(iD+k, jD+l) = W(k,j) · conj(W(l,i)).
Matrix conjugation_cj(const Matrix& w) {
  const Eigen::Index d = w.rows();
  Matrix m(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
          m(i * d + k, j * d + l) = w(k, j) * std::conj(w(l, i));
        }
      }
    }
  }
  return m;
}

unsigned qubits_for_dim(std::size_t d) {
  if (d < 2 || !std::has_single_bit(d)) {
    throw InvalidArgument("recovery requires a qubit-register system");
  }
  return static_cast<unsigned>(std::countr_zero(d));
}

RecoveryResult finish(ChoiMatrix choi, RecoveryMethod method,
                      ExtractionMode mode, double residual, double psd_tol) {
  const double min_eig = choi.min_eig_t1();
  const bool psd = choi.is_t1_psd(psd_tol);
  return RecoveryResult{std::move(choi), std::nullopt, psd, min_eig,
                        mode,            method,       residual};
}

}  // namespace

Matrix reversed_global_pdm(const DensityMatrix& rho_s,
                           const UnitaryDilation& dil) {
  const DensityMatrix out = apply_global(dil, rho_s);
  const Eigen::Index total = dil.u().rows();
  const Matrix m_reverse = conjugation_cj(dil.u().adjoint());
  const Matrix lifted = kron(out.matrix(), Matrix::Identity(total, total));
  return 0.5 * (lifted * m_reverse + m_reverse * lifted);
}

Matrix reduced_reversed_pdm(const DensityMatrix& rho_s,
                            const UnitaryDilation& dil) {
  const Dims dims{dil.d_s(), dil.d_e(), dil.d_s(), dil.d_e()};
  const std::size_t keep[] = {0, 2};
  return partial_trace(reversed_global_pdm(rho_s, dil), dims, keep);
}

RecoveryResult unitary_dilation_recovery(const DensityMatrix& rho_s,
                                         const UnitaryDilation& dil,
                                         double psd_tol) {
  if (rho_s.dim() != dil.d_s()) {
    throw InvalidArgument("system state does not match dilation");
  }
  const unsigned n = qubits_for_dim(dil.d_s());
  const DensityMatrix joint = apply_global(dil, rho_s);
  const Dims dims{dil.d_s(), dil.d_e()};
  const std::size_t keep_s[] = {0};
  const DensityMatrix gamma(partial_trace(joint.matrix(), dims, keep_s));

  const Pdm reduced(reduced_reversed_pdm(rho_s, dil), n, Orientation::Swapped);
  ExtractionResult extracted = gamma.is_full_rank()
                                   ? extract_choi_sylvester(reduced, gamma)
                                   : extract_choi_pseudoinverse(reduced, gamma);
  RecoveryResult result =
      finish(std::move(extracted.choi), RecoveryMethod::Dilation,
             extracted.mode, extracted.residual, psd_tol);
  result.dilation_used = dil;
  return result;
}

ChoiMatrix unitary_reversal_cj(const Matrix& v) {
  if (v.rows() != v.cols() ||
      (v.adjoint() * v - Matrix::Identity(v.rows(), v.cols())).norm() > 1e-9) {
    throw InvalidArgument("reversal requires a unitary matrix");
  }
  const auto d = static_cast<std::size_t>(v.rows());
  return ChoiMatrix(conjugation_cj(v.adjoint()), d, d);
}

Matrix leifer_spekkens_state(const DensityMatrix& rho, const ChoiMatrix& m) {
  if (rho.dim() != m.d_in()) {
    throw InvalidArgument("state does not match CJ input dimension");
  }
  const Matrix root = hermitian_function(
      rho.matrix(), [](double x) { return std::sqrt(std::max(x, 0.0)); });
  const Matrix lifted = kron(root, identity(m.d_out()));
  return lifted * m.matrix() * lifted;
}

RecoveryResult petz_reversal_cj(const DensityMatrix& rho, const ChoiMatrix& m,
                                double psd_tol) {
  if (m.d_in() != m.d_out()) {
    throw InvalidArgument("Petz reversal requires a square channel");
  }
  const Matrix l = leifer_spekkens_state(rho, m);
  const Matrix s = swap_operator_dim(m.d_in());
  const Matrix l_bar = s * l * s.adjoint();

  const DensityMatrix gamma(apply_via_cj(m, rho.matrix()));
  const bool full = gamma.is_full_rank();
  const RealVector spectrum = hermitian_eigenvalues(gamma.matrix());
  const double cut = kRankTol * spectrum(spectrum.size() - 1);
  const Matrix inv_root = hermitian_function(gamma.matrix(), [cut](double x) {
    return x > cut ? 1.0 / std::sqrt(x) : 0.0;
  });
  const Matrix lifted = kron(inv_root, identity(m.d_in()));
  Matrix m_bar = lifted * l_bar * lifted;
  m_bar = 0.5 * (m_bar + m_bar.adjoint());
  return finish(ChoiMatrix(std::move(m_bar), m.d_out(), m.d_in()),
                RecoveryMethod::Petz,
                full ? ExtractionMode::Full : ExtractionMode::Projected, 0.0,
                psd_tol);
}

}  // namespace arrowtime
