/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qdiscord/linalg.hpp"
#include "qdiscord/random.hpp"
#include "test_helpers.hpp"

using namespace qdiscord;

TEST_CASE("kron identity and basis bookkeeping") {
  Matrix i2 = Matrix::Identity(2, 2);
  CHECK((kron(i2, i2) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  Matrix p00 = test::ket0_proj(), p11 = test::ket1_proj();
  Matrix k = kron(p00, p11);
  Matrix expect = Matrix::Zero(4, 4);
  expect(1, 1) = 1.0;
  CHECK((k - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kron of bit flips maps |00> to |11>") {
  Matrix xx = kron(test::pauli_x(), test::pauli_x());
  Vector v00 = Vector::Zero(4);
  v00(0) = 1.0;
  Vector out = xx * v00;
  CHECK(std::abs(out(3) - Complex(1, 0)) < 1e-15);
  CHECK(out.head(3).norm() < 1e-15);
}

TEST_CASE("partial trace of a product state recovers the factors") {
  Rng rng(11);
  DensityMatrix a = random_density_matrix(2, 2, rng);
  DensityMatrix b = random_density_matrix(3, 3, rng);
  Matrix ab = kron(a.matrix(), b.matrix());
  CHECK((partial_trace(ab, {2, 3}, {0}) - a.matrix()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((partial_trace(ab, {2, 3}, {1}) - b.matrix()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial trace of a maximally entangled state is maximally mixed") {
  Matrix bell = bell_state().matrix();
  Matrix red = partial_trace(bell, {2, 2}, {1});
  CHECK((red - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial trace preserves the trace and checks dims") {
  DensityMatrix rho = test::random_bipartite(2, 3, 6, 5);
  Matrix red = partial_trace(rho.matrix(), {2, 3}, {0});
  CHECK(std::abs(red.trace().real() - 1.0) < 1e-12);
  CHECK_THROWS_AS(partial_trace(rho.matrix(), {2, 2}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho.matrix(), {2, 3}, {}), std::invalid_argument);
}

TEST_CASE("angle family marginal at theta = pi/4") {
  // Direct expansion: the B marginal is diag(cos^2(pi/8), sin^2(pi/8)).
  DensityMatrix rho = cq_pure_pair_state(0.78539816339744831);
  Matrix red = partial_trace(rho.matrix(), {2, 2}, {1});
  CHECK(red(0, 0).real() == doctest::Approx(0.85355339059327376).epsilon(1e-12));
  CHECK(red(1, 1).real() == doctest::Approx(0.14644660940672624).epsilon(1e-12));
  CHECK(std::abs(red(0, 1)) < 1e-15);
}

TEST_CASE("partial transpose factorizes on product states and is an involution") {
  Rng rng(12);
  DensityMatrix a = random_density_matrix(2, 2, rng);
  DensityMatrix b = random_density_matrix(3, 3, rng);
  Matrix ab = kron(a.matrix(), b.matrix());
  Matrix pt = partial_transpose(ab, {2, 3}, {1});
  CHECK((pt - kron(a.matrix(), b.matrix().transpose().eval())).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((partial_transpose(pt, {2, 3}, {1}) - ab).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial transpose of the maximally entangled state has eigenvalue -1/2") {
  Matrix pt = partial_transpose(bell_state().matrix(), {2, 2}, {1});
  CHECK(min_eigenvalue(pt) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("permute_subsystems swaps factors of a product") {
  Rng rng(13);
  DensityMatrix a = random_density_matrix(2, 2, rng);
  DensityMatrix b = random_density_matrix(3, 3, rng);
  Matrix ab = kron(a.matrix(), b.matrix());
  Matrix ba = permute_subsystems(ab, {2, 3}, {1, 0});
  CHECK((ba - kron(b.matrix(), a.matrix())).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("hermitian basis spans with the advertised coordinates") {
  Rng rng(14);
  Index n = 4;
  Matrix m = hermitize(ginibre(n, n, rng));
  HermitianBasis basis(n);
  Matrix rebuilt = Matrix::Zero(n, n);
  for (Index a = 0; a < basis.size(); ++a)
    rebuilt += basis.coordinate(m, a) * basis.element(a);
  CHECK((rebuilt - m).cwiseAbs().maxCoeff() < 1e-14);
  for (Index a = 0; a < basis.size(); ++a) {
    CHECK(hermiticity_defect(basis.element(a)) == 0.0);
    CHECK(inner_real(basis.element(a), basis.element(a)) == doctest::Approx(basis.norm2(a)));
  }
}

TEST_CASE("hermitian_sqrt squares back and rejects indefinite input") {
  Rng rng(15);
  DensityMatrix rho = random_density_matrix(4, 4, rng);
  Matrix s = hermitian_sqrt(rho.matrix());
  CHECK((s * s - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  Matrix indef = Matrix::Identity(2, 2);
  indef(1, 1) = -0.5;
  CHECK_THROWS_AS(hermitian_sqrt(indef), std::domain_error);
}
