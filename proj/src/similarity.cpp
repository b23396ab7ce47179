/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/similarity.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdiscord {

double fidelity_closed_form(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("fidelity: dimension mismatch");
  Matrix sr = hermitian_sqrt(hermitize(rho));
  Matrix ss = hermitian_sqrt(hermitize(sigma));
  Eigen::JacobiSVD<Matrix> svd(ss * sr);
  double f = svd.singularValues().sum();
  return std::clamp(f, 0.0, 1.0);
}

double fidelity_closed_form(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return fidelity_closed_form(rho.matrix(), sigma.matrix());
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  RealVector ev = hermitian_eigenvalues(hermitize(rho - sigma));
  return std::clamp(0.5 * ev.cwiseAbs().sum(), 0.0, 1.0);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

SimilarityReport compare_states(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return SimilarityReport(fidelity_closed_form(rho, sigma), trace_distance(rho, sigma));
}

}  // namespace qdiscord
