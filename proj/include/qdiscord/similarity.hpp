/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_SIMILARITY_HPP
#define QDISCORD_SIMILARITY_HPP

#include "qdiscord/density_matrix.hpp"

namespace qdiscord {

/// Uhlmann fidelity F = Tr sqrt(sqrt(rho) sigma sqrt(rho)), not squared.
/// Computed as the trace norm of sqrt(sigma) sqrt(rho).
double fidelity_closed_form(const Matrix& rho, const Matrix& sigma);
double fidelity_closed_form(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Trace distance (1/2) || rho - sigma ||_1.
double trace_distance(const Matrix& rho, const Matrix& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

SimilarityReport compare_states(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qdiscord

#endif
