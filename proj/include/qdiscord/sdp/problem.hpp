/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_SDP_PROBLEM_HPP
#define QDISCORD_SDP_PROBLEM_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdiscord/linalg.hpp"

namespace qdiscord::sdp {

/// Block-structured standard form over Hermitian PSD variable blocks Z_j:
///   maximize   sum_j <C_j, Z_j>
///   subject to sum_j <A_ij, Z_j> = b_i,   Z_j >= 0,
/// with Hilbert-Schmidt pairings and Hermitian coefficient matrices
/// (hermiticity enforced at 1e-12 on entry; b real).
class SdpProblem {
 public:
  struct Block {
    std::string name;
    Index order;
  };
  struct Constraint {
    std::vector<std::pair<int, Matrix>> terms;  // (block index, coefficient)
    double rhs;
  };

  int add_block(const std::string& name, Index order);
  void add_objective(int block, const Matrix& coeff);
  void add_constraint(std::vector<std::pair<int, Matrix>> terms, double rhs);

  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<Matrix>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  Index num_constraints() const { return static_cast<Index>(constraints_.size()); }
  Index total_order() const;
  /// Order after the complex-to-real embedding (twice the Hermitian order).
  Index real_embedded_order() const { return 2 * total_order(); }

 private:
  void check_block(int block) const;

  std::vector<Block> blocks_;
  std::vector<Matrix> objective_;
  std::vector<Constraint> constraints_;
};

/// Matrix-valued affine expression in the problem variables: a constant plus,
/// per referenced block, the images of that block's Hermitian basis elements.
class AffineMatrixExpr {
 public:
  struct Term {
    int block;
    Index block_order;
    std::vector<Matrix> images;  // one per Hermitian basis element
  };

  explicit AffineMatrixExpr(Index order) : order_(order), constant_(Matrix::Zero(order, order)) {}
  static AffineMatrixExpr constant(const Matrix& value);

  /// Adds the linear part map(Z_block); the map is materialized on the
  /// canonical Hermitian basis of the source block.
  void add_block_map(int block, Index block_order,
                     const std::function<Matrix(const Matrix&)>& map);

  Index order() const { return order_; }
  const Matrix& constant_part() const { return constant_; }
  Matrix& constant_part() { return constant_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Declares an isometry V whose range contains every achievable value of
  /// the expression (V^dag value V loses nothing). Lets the fidelity block
  /// compress its pinned windows so the program keeps a strictly feasible
  /// interior when values are rank deficient.
  void set_support(Matrix isometry);
  const Matrix& support() const { return support_; }

  /// The expression V^dag (.) V on the compressed space.
  AffineMatrixExpr conjugated(const Matrix& isometry) const;

  /// Evaluates the expression at a full assignment of block values.
  Matrix evaluate(const std::vector<Matrix>& block_values) const;

 private:
  Index order_;
  Matrix constant_;
  std::vector<Term> terms_;
  Matrix support_;  // empty when no support is declared
};

/// Isometry onto the eigenspace of eigenvalues above tol (relative to the
/// largest); identity-size input comes back empty when nothing is cut.
Matrix support_isometry(const Matrix& hermitian, double tol = 1e-12);

/// Adds one equality constraint per Hermitian functional pinning an
/// order x order window of `block` (rows/cols starting at `offset`) to expr.
void pin_block_window(SdpProblem& p, int block, Index offset, const AffineMatrixExpr& expr);

/// Fidelity program fragment: appends a Hermitian PSD block
///   G = [[rho, X], [X^dag, sigma]]
/// with both diagonal windows pinned to the given affine expressions and the
/// objective term (Tr X + Tr X^dag)/2. Returns the block index of G. When rho
/// and sigma are constant states the fragment's optimum is their fidelity.
/// Windows are compressed onto their supports (computed for constants, taken
/// from set_support() for expressions) so rank-deficient pins keep the
/// program strictly feasible; the optimum is unchanged because a PSD block
/// with a pinned singular window vanishes outside that window's support.
int add_fidelity_block(SdpProblem& p, const AffineMatrixExpr& rho, const AffineMatrixExpr& sigma,
                       const std::string& name = "fidelity");

/// Complex-to-real embedding H -> [[Re H, -Im H], [Im H, Re H]] applied to
/// every block; optimal values coincide with the Hermitian problem.
SdpProblem embed_hermitian(const SdpProblem& p);

/// Recovers the Hermitian matrix from a feasible block of the embedded
/// problem: H = (Y11 + Y22)/2 + i (Y21 - Y12)/2.
Matrix extract_hermitian(const Matrix& embedded);

/// Sparse interchange format of the real-embedded problem: header lines with
/// sizes and right-hand sides, then `constraint block row col value` entries
/// (constraint 0 is the objective), upper triangle only.
void write_sparse_sdp(std::ostream& os, const SdpProblem& p);
void write_sparse_sdp(const std::string& path, const SdpProblem& p);

}  // namespace qdiscord::sdp

#endif
