/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/random.hpp"

#include <cmath>
#include <stdexcept>

namespace qdiscord {

double Rng::uniform() {
  // 53-bit mantissa from the top bits of one 64-bit draw.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  have_spare_ = true;
  return u * factor;
}

Complex Rng::complex_normal() {
  double re = normal();
  double im = normal();
  return Complex(re, im);
}

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(uniform() * (hi - lo + 1));
}

Matrix ginibre(Index rows, Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  return g;
}

Matrix random_unitary(Index d, Rng& rng) {
  Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    Complex rj = r(j, j);
    double a = std::abs(rj);
    q.col(j) *= (a > 0 ? rj / a : Complex(1.0, 0.0));
  }
  return q;
}

Vector random_pure_state(Index d, Rng& rng) {
  Vector v(d);
  for (Index i = 0; i < d; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

DensityMatrix random_density_matrix(Index d, Index rank, Rng& rng, Dims dims) {
  if (rank < 1 || rank > d)
    throw std::invalid_argument("random_density_matrix: rank must be in [1, d]");
  Matrix g = ginibre(d, rank, rng);
  Matrix m = g * g.adjoint();
  m = hermitize(m / m.trace().real());
  if (dims.empty()) dims = {d};
  return DensityMatrix(std::move(m), std::move(dims));
}

DensityMatrix random_density_matrix(Index d, Index rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density_matrix(d, rank, rng);
}

}  // namespace qdiscord
