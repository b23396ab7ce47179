/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace qdiscord {

double von_neumann_entropy(const Matrix& rho) {
  RealVector ev = hermitian_eigenvalues(hermitize(rho));
  double s = 0.0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) >= 1e-12) s -= ev(i) * std::log2(ev(i));
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

double mutual_information(const DensityMatrix& rho_ab) {
  if (rho_ab.subsystems() != 2)
    throw std::invalid_argument("mutual_information: state must have exactly two subsystems");
  const Matrix& m = rho_ab.matrix();
  const Dims& dims = rho_ab.dims();
  double sa = von_neumann_entropy(partial_trace(m, dims, {0}));
  double sb = von_neumann_entropy(partial_trace(m, dims, {1}));
  return sa + sb - von_neumann_entropy(m);
}

double conditional_mutual_information(const DensityMatrix& rho_abc) {
  if (rho_abc.subsystems() != 3)
    throw std::invalid_argument(
        "conditional_mutual_information: state must have exactly three subsystems");
  const Matrix& m = rho_abc.matrix();
  const Dims& dims = rho_abc.dims();
  double sac = von_neumann_entropy(partial_trace(m, dims, {0, 2}));
  double sbc = von_neumann_entropy(partial_trace(m, dims, {1, 2}));
  double sc = von_neumann_entropy(partial_trace(m, dims, {2}));
  return sac + sbc - von_neumann_entropy(m) - sc;
}

}  // namespace qdiscord
