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

#include "arrowtime/extraction.hpp"

#include <string>

#include "arrowtime/errors.hpp"

namespace arrowtime {

namespace {

struct LiftedSpectrum {
  Matrix vectors;      // eigenvectors of σ ⊗ 1
  RealVector values;   // matching eigenvalues
  double largest = 0;  // λ_max of σ
  double smallest = 0;
};

void check_shapes(const Pdm& p, const DensityMatrix& sigma) {
  if (sigma.dim() != p.slot_dim()) {
    throw InvalidArgument("state dimension " + std::to_string(sigma.dim()) +
                          " does not match PDM slot dimension " +
                          std::to_string(p.slot_dim()));
  }
}

LiftedSpectrum lifted_spectrum(const DensityMatrix& sigma) {
  const EigenSystem es = hermitian_eig(sigma.matrix());
  const auto d = static_cast<Eigen::Index>(sigma.dim());
  LiftedSpectrum out;
  out.vectors = kron(es.vectors, Matrix::Identity(d, d));
  out.values.resize(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    out.values.segment(i * d, d).setConstant(es.values(i));
  }
  out.largest = es.values(d - 1);
  out.smallest = es.values(0);
  return out;
}

void require_full_rank(const LiftedSpectrum& spec, const char* solver) {
  if (spec.smallest <= kRankTol * spec.largest) {
    throw PreconditionError(
        std::string(solver) +
        " requires a full-rank state (min eigenvalue " +
        std::to_string(spec.smallest) +
        "); use extract_choi_pseudoinverse for rank-deficient states");
  }
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

ChoiMatrix to_choi(const Matrix& m, std::size_t d) {
  return ChoiMatrix(hermitize(m), d, d);
}

double reproduction_residual(const DensityMatrix& sigma, const Matrix& m,
                             const Matrix& r) {
  return (half_anticommutator(sigma, m) - r).norm();
}

}  // namespace

Matrix half_anticommutator(const DensityMatrix& sigma, const Matrix& m) {
  const Matrix lifted = kron(sigma.matrix(), identity(sigma.dim()));
  if (lifted.rows() != m.rows() || m.rows() != m.cols()) {
    throw InvalidArgument("operator does not live on H₁⊗H₂");
  }
  return 0.5 * (lifted * m + m * lifted);
}

MultiplicationSuperoperator build_superoperator(const DensityMatrix& sigma) {
  const Matrix lifted = kron(sigma.matrix(), identity(sigma.dim()));
  const auto dd = lifted.rows();
  const Matrix id = Matrix::Identity(dd, dd);
  Matrix a = 0.5 * (kron(lifted, id) + kron(id, lifted.transpose()));
  return {std::move(a), sigma};
}

ExtractionResult extract_choi_sylvester(const Pdm& p,
                                        const DensityMatrix& sigma) {
  check_shapes(p, sigma);
  const LiftedSpectrum spec = lifted_spectrum(sigma);
  require_full_rank(spec, "extract_choi_sylvester");

  Matrix rotated = spec.vectors.adjoint() * p.matrix() * spec.vectors;
  for (Eigen::Index b = 0; b < rotated.cols(); ++b) {
    for (Eigen::Index a = 0; a < rotated.rows(); ++a) {
      rotated(a, b) *= 2.0 / (spec.values(a) + spec.values(b));
    }
  }
  const Matrix m = spec.vectors * rotated * spec.vectors.adjoint();
  ExtractionResult result{to_choi(m, sigma.dim()), ExtractionMode::Full,
                          std::nullopt, 0.0};
  result.residual =
      reproduction_residual(sigma, result.choi.matrix(), p.matrix());
  return result;
}

ExtractionResult extract_choi_inverse(const Pdm& p, const DensityMatrix& sigma) {
  check_shapes(p, sigma);
  const LiftedSpectrum spec = lifted_spectrum(sigma);
  require_full_rank(spec, "extract_choi_inverse");

  const MultiplicationSuperoperator op = build_superoperator(sigma);
  const Eigen::LLT<Matrix> llt(op.a);
  if (llt.info() != Eigen::Success) {
    throw PreconditionError(
        "superoperator is not positive definite; use "
        "extract_choi_pseudoinverse");
  }
  const VectorizedOperator vr = vectorize(p.matrix());
  const VectorizedOperator vm{llt.solve(vr.data), vr.rows, vr.cols};
  ExtractionResult result{to_choi(devectorize(vm), sigma.dim()),
                          ExtractionMode::Full, std::nullopt, 0.0};
  result.residual =
      reproduction_residual(sigma, result.choi.matrix(), p.matrix());
  return result;
}

ExtractionResult extract_choi_pseudoinverse(const Pdm& p,
                                            const DensityMatrix& sigma) {
  check_shapes(p, sigma);
  const LiftedSpectrum spec = lifted_spectrum(sigma);
  const double cut = kPairRankTol * spec.largest;

  const Eigen::Index n = spec.values.size();
  Matrix rotated = spec.vectors.adjoint() * p.matrix() * spec.vectors;
  RealVector mask(n * n);
  bool truncated = false;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double pair = spec.values(a) + spec.values(b);
      const bool keep = pair > cut;
      mask(a * n + b) = keep ? 1.0 : 0.0;
      rotated(a, b) = keep ? rotated(a, b) * (2.0 / pair) : Complex{0.0};
      truncated = truncated || !keep;
    }
  }
  const Matrix m = spec.vectors * rotated * spec.vectors.adjoint();

  // P = W diag(mask) W† with W = Ṽ ⊗ conj(Ṽ), since vec(ṼXṼ†) = W vec(X).
  const Matrix w = kron(spec.vectors, spec.vectors.conjugate());
  Matrix projector = w * mask.cast<Complex>().asDiagonal() * w.adjoint();

  ExtractionResult result{to_choi(m, sigma.dim()),
                          truncated ? ExtractionMode::Projected
                                    : ExtractionMode::Full,
                          std::move(projector), 0.0};
  result.residual =
      reproduction_residual(sigma, result.choi.matrix(), p.matrix());
  return result;
}

double swap_vectorization_relation_check(const Pdm& r,
                                         const DensityMatrix& sigma_fwd,
                                         const DensityMatrix& sigma_bwd) {
  check_shapes(r, sigma_fwd);
  check_shapes(r, sigma_bwd);
  const Pdm r_bar = reverse(r);
  const Marginals own = marginals(r, 1e-6);

  const ExtractionResult fwd = extract_choi_pseudoinverse(r, own.initial);
  const ExtractionResult bwd = extract_choi_pseudoinverse(r_bar, own.final);

  const Matrix a = build_superoperator(sigma_fwd).a;
  const Matrix a_bar = build_superoperator(sigma_bwd).a;
  const Matrix s = swap_operator(r.n_qubits());
  const Matrix s_lift = kron(s, s.conjugate());

  const Vector lhs = a_bar * vectorize(bwd.choi.matrix()).data;
  const Vector rhs = s_lift * (a * vectorize(fwd.choi.matrix()).data);
  return (lhs - rhs).norm();
}

}  // namespace arrowtime
