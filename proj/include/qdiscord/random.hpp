/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_RANDOM_HPP
#define QDISCORD_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qdiscord/density_matrix.hpp"

namespace qdiscord {

/// Seeded generator with a fixed Gaussian transform (polar Box-Muller over
/// mt19937_64 uniforms) so streams reproduce across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double normal();                        // standard Gaussian
  Complex complex_normal();               // independent N(0,1) real and imag parts
  int uniform_int(int lo, int hi);        // inclusive range

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Ginibre matrix with i.i.d. standard complex Gaussian entries.
Matrix ginibre(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Matrix random_unitary(Index d, Rng& rng);

/// Random pure state vector, uniform on the sphere.
Vector random_pure_state(Index d, Rng& rng);

/// Reproducible random density matrix of the requested rank (Ginibre GG^dag,
/// normalized). dims defaults to the single subsystem {d}.
DensityMatrix random_density_matrix(Index d, Index rank, std::uint64_t seed);
DensityMatrix random_density_matrix(Index d, Index rank, Rng& rng, Dims dims = {});

}  // namespace qdiscord

#endif
