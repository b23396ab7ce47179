/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/state_families.hpp"

#include <cmath>
#include <stdexcept>

namespace qdiscord {

DensityMatrix cq_pure_pair_state(double theta) {
  constexpr double kPi = 3.14159265358979323846;
  if (theta < -1e-12 || theta > kPi / 2 + 1e-12)
    throw std::domain_error("cq_pure_pair_state: theta must lie in [0, pi/2]");
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Vector psi0(2), psi1(2);
  psi0 << c, s;
  psi1 << c, -s;
  Matrix rho = 0.5 * kron(unit_matrix(2, 0, 0), psi0 * psi0.adjoint()) +
               0.5 * kron(unit_matrix(2, 1, 1), psi1 * psi1.adjoint());
  return DensityMatrix(hermitize(rho), {2, 2});
}

DensityMatrix quantum_classical_state(const std::vector<double>& probs,
                                      const std::vector<Matrix>& a_states,
                                      const std::vector<Vector>& b_basis) {
  if (probs.empty() || probs.size() != a_states.size() || probs.size() != b_basis.size())
    throw std::invalid_argument("quantum_classical_state: probs, a_states, b_basis must align");
  double total = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw std::domain_error("quantum_classical_state: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::domain_error("quantum_classical_state: probabilities must sum to 1");

  Index db = b_basis.front().size();
  for (std::size_t i = 0; i < b_basis.size(); ++i) {
    if (b_basis[i].size() != db)
      throw std::invalid_argument("quantum_classical_state: basis vectors of unequal dimension");
    for (std::size_t j = 0; j <= i; ++j) {
      Complex ov = b_basis[j].adjoint() * b_basis[i];
      double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(ov - target) > 1e-10)
        throw std::domain_error("quantum_classical_state: b_basis is not orthonormal");
    }
  }

  Index da = a_states.front().rows();
  Matrix rho = Matrix::Zero(da * db, da * db);
  for (std::size_t b = 0; b < probs.size(); ++b) {
    if (a_states[b].rows() != da || a_states[b].cols() != da)
      throw std::invalid_argument("quantum_classical_state: A states of unequal dimension");
    rho += probs[b] * kron(a_states[b], (b_basis[b] * b_basis[b].adjoint()).eval());
  }
  return DensityMatrix(hermitize(rho), {da, db});
}

DensityMatrix bell_state() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return pure_state(v, {2, 2});
}

DensityMatrix pure_state(const Vector& v, Dims dims) {
  Vector n = v / v.norm();
  return DensityMatrix(n * n.adjoint(), std::move(dims));
}

}  // namespace qdiscord
