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

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace arrowtime {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;

inline constexpr double kTolHerm = 1e-9;
inline constexpr double kTolTrace = 1e-9;
inline constexpr double kTolPsd = 1e-9;
/// Relative threshold below which singular values / eigenvalues count as zero.
inline constexpr double kRankTol = 1e-8;

Matrix identity(std::size_t d);

/// (A⊗B)[(i·r_B+k),(j·c_B+l)] = A[i,j]·B[k,l].
Matrix kron(const Matrix& a, const Matrix& b);

/// Frobenius norm of H - H†, scaled so the check is relative for large inputs.
bool is_hermitian(const Matrix& h, double tol = kTolHerm);
bool all_finite(const Matrix& m);

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // unitary, columns are eigenvectors
};

/// Cyclic complex Jacobi eigensolver. The input is symmetrized as (H+H†)/2
/// after the Hermiticity check. Throws InvalidArgument when H is not
/// Hermitian within tolerance.
EigenSystem hermitian_eig(const Matrix& h, double herm_tol = kTolHerm);

/// Eigenvalues only, ascending.
RealVector hermitian_eigenvalues(const Matrix& h, double herm_tol = kTolHerm);
double min_eigenvalue(const Matrix& h, double herm_tol = kTolHerm);

/// f applied to the spectrum of a Hermitian matrix: V f(Λ) V†.
Matrix hermitian_function(const Matrix& h,
                          const std::function<double(double)>& f);

/// Largest |λ| of a Hermitian matrix.
double hermitian_spectral_norm(const Matrix& h);

/// Scale-aware PSD tolerance: tol · max(1, ‖O‖₂).
double psd_tolerance(const Matrix& h, double tol = kTolPsd);

/// Trace over every subsystem not listed in `keep`. `dims` lists subsystem
/// dimensions in tensor order and must multiply to the matrix dimension.
Matrix partial_trace(const Matrix& o, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep);

/// Transpose of the indices belonging to one subsystem.
Matrix partial_transpose(const Matrix& o, std::span<const std::size_t> dims,
                         std::size_t subsystem);

/// Row-major stacking |O⟩⟩ = Σ O_ij |i⟩⊗|j⟩. Under this convention
/// vec(BCD) = (B ⊗ Dᵀ) vec(C).
struct VectorizedOperator {
  Vector data;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
};

VectorizedOperator vectorize(const Matrix& o);
Matrix devectorize(const VectorizedOperator& v);

/// Moore–Penrose pseudoinverse; singular values below rank_tol·σ_max are
/// treated as zero. Hermitian input is decomposed directly, anything else
/// goes through A†A.
Matrix pseudoinverse(const Matrix& a, double rank_tol = kRankTol);

/// S = Σ_ij |ij⟩⟨ji| on C^d ⊗ C^d.
Matrix swap_operator_dim(std::size_t d);

/// n-qubit swap operator (4ⁿ × 4ⁿ).
Matrix swap_operator(unsigned n_qubits);

/// F(O) = Tr(√(OO†) − O) = Σ(|λ| − λ) for Hermitian O.
double negativity_functional(const Matrix& o, double herm_tol = kTolHerm);

/// Hermitian, unit-trace, positive semidefinite matrix with subsystem
/// dimension metadata.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, double psd_tol = kTolPsd);
  DensityMatrix(Matrix m, Dims dims, double psd_tol = kTolPsd);

  const Matrix& matrix() const { return m_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

  /// Number of eigenvalues above kRankTol · λ_max.
  std::size_t rank(double rel_tol = kRankTol) const;
  bool is_full_rank(double rel_tol = kRankTol) const {
    return rank(rel_tol) == dim();
  }

  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix maximally_mixed(std::size_t d);

 private:
  Matrix m_;
  Dims dims_;
};

/// −Σ λ log₂ λ with 0·log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace arrowtime
