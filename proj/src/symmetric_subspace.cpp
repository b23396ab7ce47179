/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/symmetric_subspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdiscord {

Index symmetric_dimension(Index d, Index k) {
  // C(d+k-1, k) by incremental products to stay in integer range.
  Index num = 1;
  for (Index i = 1; i <= k; ++i) num = num * (d - 1 + i) / i;
  return num;
}

std::vector<std::vector<Index>> symmetric_tuples(Index d, Index k) {
  std::vector<std::vector<Index>> tuples;
  std::vector<Index> t(k, 0);
  while (true) {
    tuples.push_back(t);
    Index pos = k;
    while (pos > 0 && t[pos - 1] == d - 1) --pos;
    if (pos == 0) break;
    ++t[pos - 1];
    for (Index u = pos; u < k; ++u) t[u] = t[pos - 1];
  }
  return tuples;
}

SymmetricSubspace symmetric_isometry(Index d, Index k, Index full_dim_cap) {
  if (d < 1 || k < 1) throw std::invalid_argument("symmetric_isometry: d and k must be >= 1");
  double full = std::pow(static_cast<double>(d), static_cast<double>(k));
  if (full > static_cast<double>(full_dim_cap))
    throw std::invalid_argument("symmetric_isometry: d^k exceeds the configured cap");

  Index nfull = 1;
  for (Index i = 0; i < k; ++i) nfull *= d;
  auto tuples = symmetric_tuples(d, k);
  Index nsym = static_cast<Index>(tuples.size());

  MultiIndex ix(Dims(k, d));
  Matrix t = Matrix::Zero(nfull, nsym);
  for (Index col = 0; col < nsym; ++col) {
    std::vector<Index> arrangement = tuples[col];
    // Count of distinct arrangements = k! / prod(occupations!).
    Index count = 0;
    std::vector<Index> probe = arrangement;
    do {
      ++count;
    } while (std::next_permutation(probe.begin(), probe.end()));
    double amp = 1.0 / std::sqrt(static_cast<double>(count));
    do {
      t(ix.compose(arrangement), col) = amp;
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  }

  SymmetricSubspace out;
  out.local_dim = d;
  out.copies = k;
  out.isometry = std::move(t);
  return out;
}

Matrix permutation_operator(Index d, Index k, const std::vector<int>& perm) {
  if (static_cast<Index>(perm.size()) != k)
    throw std::invalid_argument("permutation_operator: perm must have length k");
  std::vector<bool> seen(k, false);
  for (int p : perm) {
    if (p < 0 || p >= k || seen[p])
      throw std::invalid_argument("permutation_operator: not a permutation");
    seen[p] = true;
  }
  Index nfull = 1;
  for (Index i = 0; i < k; ++i) nfull *= d;
  MultiIndex ix(Dims(k, d));
  Matrix v = Matrix::Zero(nfull, nfull);
  std::vector<Index> in(k), out(k);
  for (Index col = 0; col < nfull; ++col) {
    ix.decompose(col, in);
    for (Index l = 0; l < k; ++l) out[perm[l]] = in[l];
    v(ix.compose(out), col) = 1.0;
  }
  return v;
}

}  // namespace qdiscord
