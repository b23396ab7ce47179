/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_TEST_HELPERS_HPP
#define QDISCORD_TEST_HELPERS_HPP

#include "qdiscord/density_matrix.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/random.hpp"
#include "qdiscord/state_families.hpp"

namespace qdiscord::test {

inline Matrix ket0_proj() { return unit_matrix(2, 0, 0); }
inline Matrix ket1_proj() { return unit_matrix(2, 1, 1); }

inline Matrix plus_proj() {
  Matrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

inline Matrix minus_proj() {
  Matrix m(2, 2);
  m << 0.5, -0.5, -0.5, 0.5;
  return m;
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline DensityMatrix qubit_state(const Matrix& m) { return DensityMatrix(m, {2}); }

/// Random bipartite state with the B marginal rotated by a seeded unitary,
/// generically far from quantum-classical.
inline DensityMatrix random_bipartite(Index da, Index db, Index rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density_matrix(da * db, rank, rng, {da, db});
}

}  // namespace qdiscord::test

#endif
