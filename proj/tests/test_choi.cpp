/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "qdiscord/choi.hpp"
#include "qdiscord/random.hpp"
#include "qdiscord/serialization.hpp"
#include "qdiscord/similarity.hpp"
#include "qdiscord/state_families.hpp"
#include "test_helpers.hpp"

using namespace qdiscord;

namespace {

ChoiMatrix identity_choi(Index d) {
  return choi_of_channel([](const Matrix& m) { return m; }, d, d);
}

MeasurementModel computational_measure_prepare() {
  std::vector<Matrix> povm = {test::ket0_proj(), test::ket1_proj()};
  std::vector<DensityMatrix> preps = {pure_state(basis_vector(2, 0), {2}),
                                      pure_state(basis_vector(2, 1), {2})};
  return MeasurementModel(povm, preps);
}

}  // namespace

TEST_CASE("identity channel Choi is the unnormalized maximally entangled projector") {
  ChoiMatrix j = identity_choi(2);
  CHECK(j.data.trace().real() == doctest::Approx(2.0));
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0;  // sum_x |x>|x>
  CHECK((j.data - psi * psi.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  auto flags = is_channel(j);
  CHECK(flags.cp);
  CHECK(flags.tp);
  CHECK_FALSE(is_ppt_choi(j));
  CHECK(eb_verdict(j) == EbVerdict::not_eb);
}

TEST_CASE("depolarizing channel Choi") {
  ChoiMatrix j = depolarizing_channel(2, 2);
  auto flags = is_channel(j);
  CHECK(flags.cp);
  CHECK(flags.tp);
  CHECK(is_ppt_choi(j));
  CHECK(eb_verdict(j) == EbVerdict::certified);

  ChoiMatrix built = choi_of_channel(
      [](const Matrix& m) { return (m.trace() / 2.0) * Matrix::Identity(2, 2); }, 2, 2);
  CHECK((built.data - j.data).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("measure-and-prepare Choi in the computational basis") {
  ChoiMatrix j = eb_channel(computational_measure_prepare());
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 1.0;  // |0><0| (x) |0><0|
  expect(3, 3) = 1.0;  // |1><1| (x) |1><1|
  CHECK((j.data - expect).cwiseAbs().maxCoeff() < 1e-14);
  auto flags = is_channel(j);
  CHECK(flags.cp);
  CHECK(flags.tp);
  CHECK(is_ppt_choi(j));
  CHECK(eb_verdict(j) == EbVerdict::certified);
}

TEST_CASE("choi_of_channel rejects a non-linear map") {
  auto square = [](const Matrix& m) { return (m * m).eval(); };
  CHECK_THROWS_AS(choi_of_channel(square, 2, 2), std::invalid_argument);
}

TEST_CASE("round trip through the Choi representation on a matrix basis") {
  Rng rng(91);
  Matrix u = random_unitary(3, rng);
  auto apply = [&u](const Matrix& m) { return (u * m * u.adjoint()).eval(); };
  ChoiMatrix j = choi_of_channel(apply, 3, 3);
  for (Index x = 0; x < 3; ++x)
    for (Index y = 0; y < 3; ++y) {
      Matrix exy = unit_matrix(3, x, y);
      Matrix via = apply_choi_raw(j, exy, {3}, 0);
      REQUIRE((via - apply(exy)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("apply_choi identity and depolarizing behavior on subsystems") {
  DensityMatrix rho = test::random_bipartite(2, 2, 4, 93);
  DensityMatrix same = apply_choi(identity_choi(2), rho, 1);
  CHECK((same.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  DensityMatrix depol = apply_choi(depolarizing_channel(2, 2), rho, 1);
  Matrix expect = kron(partial_trace(rho.matrix(), {2, 2}, {0}), 0.5 * Matrix::Identity(2, 2));
  CHECK((depol.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(apply_choi(identity_choi(3), rho, 1), std::invalid_argument);
}

TEST_CASE("computational measure-prepare dephases the angle-family state") {
  DensityMatrix rho = cq_pure_pair_state(1.5707963267948966);
  DensityMatrix out = apply_choi(eb_channel(computational_measure_prepare()), rho, 1);
  // Direct evaluation: B block entries keep only computational diagonals,
  // which here erases all A-B correlation.
  Matrix expect = kron(0.5 * Matrix::Identity(2, 2), 0.5 * Matrix::Identity(2, 2));
  CHECK((out.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("apply_choi preserves trace and positivity for CPTP inputs") {
  Rng rng(95);
  for (int trial = 0; trial < 20; ++trial) {
    // Random CPTP channel from a Stinespring pair of Kraus operators.
    Matrix g1 = ginibre(2, 2, rng), g2 = ginibre(2, 2, rng);
    Matrix s = g1.adjoint() * g1 + g2.adjoint() * g2;
    Matrix sinv = hermitian_sqrt(hermitize(s)).inverse();
    Matrix k1 = g1 * sinv, k2 = g2 * sinv;
    auto apply = [&](const Matrix& m) { return (k1 * m * k1.adjoint() + k2 * m * k2.adjoint()).eval(); };
    ChoiMatrix j = choi_of_channel(apply, 2, 2);
    auto flags = is_channel(j);
    REQUIRE(flags.cp);
    REQUIRE(flags.tp);
    DensityMatrix rho = test::random_bipartite(2, 2, 4, 400 + trial);
    DensityMatrix out = apply_choi(j, rho, 1);
    REQUIRE(std::abs(out.matrix().trace().real() - 1.0) <= 1e-9);
    REQUIRE(min_eigenvalue(out.matrix()) >= -1e-9);
  }
}

TEST_CASE("single-outcome POVM gives the constant channel") {
  Rng rng(97);
  Vector target = random_pure_state(2, rng);
  MeasurementModel m({Matrix::Identity(2, 2)}, {pure_state(target, {2})});
  ChoiMatrix j = eb_channel(m);
  DensityMatrix rho = test::random_bipartite(2, 2, 4, 98);
  DensityMatrix out = apply_choi(j, rho, 1);
  Matrix expect = kron(partial_trace(rho.matrix(), {2, 2}, {0}),
                       (target * target.adjoint()).eval());
  CHECK((out.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("eb_channel requires pure preparations and a resolving POVM") {
  std::vector<Matrix> povm = {test::ket0_proj(), test::ket1_proj()};
  std::vector<DensityMatrix> mixed = {test::qubit_state(0.5 * Matrix::Identity(2, 2)),
                                      pure_state(basis_vector(2, 1), {2})};
  CHECK_THROWS_AS(eb_channel(MeasurementModel(povm, mixed)), std::invalid_argument);

  std::vector<Matrix> broken = {test::ket0_proj(), 0.5 * test::ket1_proj()};
  std::vector<DensityMatrix> preps = {pure_state(basis_vector(2, 0), {2}),
                                      pure_state(basis_vector(2, 1), {2})};
  CHECK_THROWS_AS(MeasurementModel(broken, preps), std::invalid_argument);
}

TEST_CASE("EB channels applied to entangled inputs give PPT outputs") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    // Random two-outcome measure-and-prepare on B.
    Matrix g = ginibre(2, 2, rng);
    Matrix e0 = hermitize(g.adjoint() * g);
    e0 /= hermitian_eigenvalues(e0).maxCoeff() + 0.5;
    Matrix e1 = Matrix::Identity(2, 2) - e0;
    std::vector<DensityMatrix> preps = {pure_state(random_pure_state(2, rng), {2}),
                                        pure_state(random_pure_state(2, rng), {2})};
    ChoiMatrix j = eb_channel(MeasurementModel({e0, e1}, preps));
    REQUIRE(is_ppt_choi(j));

    DensityMatrix rho = test::random_bipartite(2, 2, 2, 500 + trial);
    DensityMatrix out = apply_choi(j, rho, 1);
    Matrix pt = partial_transpose(out.matrix(), {2, 2}, {1});
    REQUIRE(min_eigenvalue(pt) >= -1e-9);
  }
  // The maximally entangled input in particular.
  std::vector<DensityMatrix> preps = {pure_state(basis_vector(2, 0), {2}),
                                      pure_state(basis_vector(2, 1), {2})};
  ChoiMatrix j = eb_channel(computational_measure_prepare());
  DensityMatrix out = apply_choi(j, bell_state(), 1);
  CHECK(min_eigenvalue(partial_transpose(out.matrix(), {2, 2}, {1})) >= -1e-9);
}

TEST_CASE("non trace preserving Choi warns and skips the trace check") {
  ChoiMatrix half(0.5 * identity_choi(2).data, 2, 2);
  DensityMatrix rho = test::random_bipartite(2, 2, 4, 101);
  DensityMatrix out = apply_choi(half, rho, 1);
  CHECK(out.matrix().trace().real() == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("choi text format round trip") {
  ChoiMatrix j = eb_channel(computational_measure_prepare());
  std::stringstream ss;
  write_choi(ss, j);
  ChoiMatrix back = read_choi(ss);
  CHECK(back.din == 2);
  CHECK(back.dout == 2);
  CHECK((back.data - j.data).cwiseAbs().maxCoeff() < 1e-16);
}
