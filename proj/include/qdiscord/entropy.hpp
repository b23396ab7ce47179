/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_ENTROPY_HPP
#define QDISCORD_ENTROPY_HPP

#include "qdiscord/density_matrix.hpp"

namespace qdiscord {

/// Von Neumann entropy in bits. Eigenvalues below 1e-12 contribute zero.
double von_neumann_entropy(const Matrix& rho);
double von_neumann_entropy(const DensityMatrix& rho);

/// I(A:B) = S(A) + S(B) - S(AB) for a state with exactly two subsystems.
double mutual_information(const DensityMatrix& rho_ab);

/// I(A:B|C) = S(AC) + S(BC) - S(ABC) - S(C) for exactly three subsystems.
/// Nonnegative by strong subadditivity.
double conditional_mutual_information(const DensityMatrix& rho_abc);

}  // namespace qdiscord

#endif
