/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_SYMMETRIC_SUBSPACE_HPP
#define QDISCORD_SYMMETRIC_SUBSPACE_HPP

#include "qdiscord/linalg.hpp"

namespace qdiscord {

/// Isometry T from the abstract symmetric space Sym^k(C^d) into (C^d)^{(x)k}.
/// Columns are the normalized occupation-number vectors, ordered by the
/// lexicographic order of the sorted index tuples (i_1 <= ... <= i_k), so for
/// d=2, k=2 the columns are |00>, (|01>+|10>)/sqrt(2), |11>.
/// T^dag T = I on the symmetric space and T T^dag is the projector onto the
/// fully symmetric subspace.
struct SymmetricSubspace {
  Index local_dim = 0;
  Index copies = 0;
  Matrix isometry;  // d^k rows, C(d+k-1, k) columns

  Index sym_dim() const { return isometry.cols(); }
  Index full_dim() const { return isometry.rows(); }
  Matrix projector() const { return isometry * isometry.adjoint(); }
};

/// Number of symmetric basis states, C(d+k-1, k).
Index symmetric_dimension(Index d, Index k);

/// Builds the symmetric-subspace isometry. Guards against d^k exceeding
/// full_dim_cap (default 2^20).
SymmetricSubspace symmetric_isometry(Index d, Index k, Index full_dim_cap = Index(1) << 20);

/// Unitary permuting the k copies: the content of slot l moves to slot
/// perm[l] (0-based). perm = {1, 0} is the swap |b>|b'> -> |b'>|b>.
Matrix permutation_operator(Index d, Index k, const std::vector<int>& perm);

/// All sorted index tuples (the occupation-number basis labels) in order.
std::vector<std::vector<Index>> symmetric_tuples(Index d, Index k);

}  // namespace qdiscord

#endif
