/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_STATE_FAMILIES_HPP
#define QDISCORD_STATE_FAMILIES_HPP

#include "qdiscord/density_matrix.hpp"

namespace qdiscord {

/// One-parameter qubit-qubit family: an even classical mixture on A of two
/// pure B states at relative angle theta,
///   rho(theta) = 1/2 |0><0| (x) |psi0><psi0| + 1/2 |1><1| (x) |psi1><psi1|,
///   |psi_a> = cos(theta/2)|0> + (-1)^a sin(theta/2)|1>,  theta in [0, pi/2].
/// Classical on the second subsystem only at the endpoints.
DensityMatrix cq_pure_pair_state(double theta);

/// sum_b p_b rho_b^A (x) |b><b|_B with an orthonormal set {|b>}; the
/// discord-free states with measurement on B.
DensityMatrix quantum_classical_state(const std::vector<double>& probs,
                                      const std::vector<Matrix>& a_states,
                                      const std::vector<Vector>& b_basis);

/// Maximally entangled two-qubit state (|00> + |11>)/sqrt(2).
DensityMatrix bell_state();

/// Pure state |v><v| with the given subsystem signature.
DensityMatrix pure_state(const Vector& v, Dims dims);

}  // namespace qdiscord

#endif
