/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_LINALG_HPP
#define QDISCORD_LINALG_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qdiscord {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Dims = std::vector<Index>;

/// Product of subsystem dimensions.
Index total_dim(const Dims& dims);

/// Tensor (Kronecker) product, first factor most significant.
Matrix kron(const Matrix& a, const Matrix& b);

/// Tensor product of a list of factors, left to right.
Matrix kron_all(const std::vector<Matrix>& factors);

/// (m + m†)/2.
Matrix hermitize(const Matrix& m);

/// max |m - m†| over entries.
double hermiticity_defect(const Matrix& m);

/// Re Tr(a b); exact Hilbert-Schmidt inner product when both are Hermitian.
double inner_real(const Matrix& a, const Matrix& b);

/// Eigenvalues of a Hermitian matrix, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);

double min_eigenvalue(const Matrix& hermitian);

/// Hermitian square root; eigenvalues in [-tol, 0] are clamped to zero,
/// anything below -tol is a domain error.
Matrix hermitian_sqrt(const Matrix& m, double tol = 1e-10);

/// Trace out all subsystems not listed in `keep` (0-based, ascending output order).
Matrix partial_trace(const Matrix& m, const Dims& dims, const std::vector<int>& keep);

/// Transpose the listed subsystems in place of the full transpose.
Matrix partial_transpose(const Matrix& m, const Dims& dims, const std::vector<int>& subsystems);

/// Reorder subsystems: output subsystem t is input subsystem order[t].
Matrix permute_subsystems(const Matrix& m, const Dims& dims, const std::vector<int>& order);

/// |i><j| in dimension d.
Matrix unit_matrix(Index d, Index i, Index j);

/// Computational basis column vector |i>.
Vector basis_vector(Index d, Index i);

/// Real-linear basis of the n x n Hermitian matrices in a fixed canonical
/// order: for p <= q ascending, E_pp, then (E_pq + E_qp) and i(E_pq - E_qp).
/// Coordinates of M in this basis are M_pp, Re M_pq, Im M_pq.
struct HermitianBasis {
  Index n;

  explicit HermitianBasis(Index order) : n(order) {}
  Index size() const { return n * n; }
  Matrix element(Index alpha) const;
  /// Squared Frobenius norm of element alpha (1 on the diagonal, 2 off it).
  double norm2(Index alpha) const;
  /// Coordinate of a Hermitian matrix along element alpha.
  double coordinate(const Matrix& m, Index alpha) const;
};

/// Mixed-radix helpers for composite-system index arithmetic (row-major,
/// first subsystem most significant, matching kron()).
struct MultiIndex {
  Dims dims;
  std::vector<Index> strides;

  explicit MultiIndex(Dims d);
  Index total() const { return strides.empty() ? 1 : strides.front() * dims.front(); }
  void decompose(Index flat, std::vector<Index>& out) const;
  Index compose(const std::vector<Index>& sub) const;
};

}  // namespace qdiscord

#endif
