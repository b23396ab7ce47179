/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_DENSITY_MATRIX_HPP
#define QDISCORD_DENSITY_MATRIX_HPP

#include <string>
#include <vector>

#include "qdiscord/linalg.hpp"

namespace qdiscord {

/// A quantum state: Hermitian, positive semidefinite, unit trace, with an
/// ordered subsystem-dimension signature. Construction validates all three
/// invariants at tolerance 1e-10 and throws std::invalid_argument on failure.
class DensityMatrix {
 public:
  static constexpr double kHermTol = 1e-10;
  static constexpr double kPsdTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;

  DensityMatrix(Matrix data, Dims dims, std::vector<std::string> labels = {});

  /// Skips invariant validation; for outputs of maps that are known to be
  /// only approximately trace preserving.
  static DensityMatrix unchecked(Matrix data, Dims dims, std::vector<std::string> labels = {});

  const Matrix& matrix() const { return data_; }
  const Dims& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  Index order() const { return data_.rows(); }
  Index subsystems() const { return static_cast<Index>(dims_.size()); }

  DensityMatrix reduce(const std::vector<int>& keep) const;

 private:
  DensityMatrix() = default;

  Matrix data_;
  Dims dims_;
  std::vector<std::string> labels_;
};

/// Fidelity and trace distance of a pair of states; construction checks the
/// Fuchs-van de Graaf sandwich 1 - F <= D <= sqrt(1 - F^2) + 1e-8.
struct SimilarityReport {
  double fidelity;
  double trace_distance;

  SimilarityReport(double f, double d);
};

}  // namespace qdiscord

#endif
