/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/density_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace qdiscord {

DensityMatrix::DensityMatrix(Matrix data, Dims dims, std::vector<std::string> labels)
    : data_(std::move(data)), dims_(std::move(dims)), labels_(std::move(labels)) {
  if (data_.rows() != data_.cols()) throw std::invalid_argument("density matrix must be square");
  if (total_dim(dims_) != data_.rows())
    throw std::invalid_argument("density matrix: dims product does not match matrix order");
  if (!labels_.empty() && labels_.size() != dims_.size())
    throw std::invalid_argument("density matrix: one label per subsystem");
  if (hermiticity_defect(data_) > kHermTol)
    throw std::invalid_argument("density matrix: not Hermitian within tolerance");
  if (min_eigenvalue(hermitize(data_)) < -kPsdTol)
    throw std::invalid_argument("density matrix: not positive semidefinite within tolerance");
  if (std::abs(data_.trace().real() - 1.0) > kTraceTol || std::abs(data_.trace().imag()) > kTraceTol)
    throw std::invalid_argument("density matrix: trace is not 1 within tolerance");
}

DensityMatrix DensityMatrix::unchecked(Matrix data, Dims dims, std::vector<std::string> labels) {
  if (data.rows() != data.cols() || total_dim(dims) != data.rows())
    throw std::invalid_argument("density matrix: dims product does not match matrix order");
  DensityMatrix out;
  out.data_ = std::move(data);
  out.dims_ = std::move(dims);
  out.labels_ = std::move(labels);
  return out;
}

DensityMatrix DensityMatrix::reduce(const std::vector<int>& keep) const {
  Matrix red = hermitize(partial_trace(data_, dims_, keep));
  Dims rdims;
  std::vector<std::string> rlabels;
  for (int t : keep) {
    rdims.push_back(dims_[t]);
    if (!labels_.empty()) rlabels.push_back(labels_[t]);
  }
  return DensityMatrix(std::move(red), std::move(rdims), std::move(rlabels));
}

SimilarityReport::SimilarityReport(double f, double d) : fidelity(f), trace_distance(d) {
  if (f < -1e-12 || f > 1.0 + 1e-12 || d < -1e-12 || d > 1.0 + 1e-12)
    throw std::invalid_argument("similarity report: values outside [0, 1]");
  if (1.0 - f > d + 1e-8 || d > std::sqrt(std::max(0.0, 1.0 - f * f)) + 1e-8)
    throw std::logic_error("similarity report: Fuchs-van de Graaf bounds violated");
}

}  // namespace qdiscord
