/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qdiscord/choi.hpp"
#include "qdiscord/hierarchy.hpp"
#include "qdiscord/oracles.hpp"
#include "qdiscord/serialization.hpp"
#include "qdiscord/similarity.hpp"
#include "qdiscord/state_families.hpp"
#include "test_helpers.hpp"

using namespace qdiscord;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2;

DensityMatrix rotated_qc(std::uint64_t seed) {
  Rng rng(seed);
  Matrix u = random_unitary(2, rng);
  return quantum_classical_state(
      {0.4, 0.6},
      {random_density_matrix(2, 2, rng).matrix(), random_density_matrix(2, 2, rng).matrix()},
      {u.col(0), u.col(1)});
}
}  // namespace

TEST_CASE("problem dimensions follow the symmetric-space counting") {
  DensityMatrix rho = test::random_bipartite(2, 2, 4, 301);  // full rank
  HierarchyOptions o2;
  o2.k = 2;
  HierarchyProblem built = build_problem(rho, o2);
  CHECK(built.problem.blocks()[built.w_block].order == 6);   // 2 * C(3,2)
  CHECK(built.problem.blocks()[built.g_block].order == 8);   // 2 * |AB|
  CHECK(built.problem.num_constraints() == 16 + 16 + 4);

  HierarchyOptions o5;
  o5.k = 5;
  HierarchyProblem b5 = build_problem(rho, o5);
  CHECK(b5.problem.blocks()[b5.w_block].order == 12);  // 2 * C(6,5)

  CHECK_THROWS_AS(build_problem(rho, HierarchyOptions{0}), std::invalid_argument);
  DensityMatrix mono = random_density_matrix(4, 4, 7);
  CHECK_THROWS_AS(build_problem(mono, o2), std::invalid_argument);
}

TEST_CASE("k=1 without cuts is the trivial probe with value 1") {
  HierarchyOptions k1;
  k1.k = 1;
  CHECK(max_broadcast_fidelity(bell_state(), k1) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(max_broadcast_fidelity(test::random_bipartite(2, 2, 4, 302), k1) ==
        doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("quantum-classical states broadcast perfectly at every level") {
  for (const DensityMatrix& qc :
       {cq_pure_pair_state(0.0), cq_pure_pair_state(kHalfPi), rotated_qc(303)}) {
    for (Index k : {2, 3, 5}) {
      HierarchyOptions o;
      o.k = k;
      HierarchyResult r = discord_lower_bound(qc, o);
      REQUIRE(r.optimal());
      CHECK(r.f_star >= 1.0 - 1e-6);
      CHECK(r.d_bound <= 1e-6 * 3);
    }
  }
}

TEST_CASE("maximally entangled state at k=1 with the PPT cut") {
  HierarchyResult r = surprisal_measurement_recoverability(bell_state());
  REQUIRE(r.optimal());
  CHECK(r.f_star == doctest::Approx(0.70710678118654752).epsilon(1e-7));
  CHECK(r.d_bound == doctest::Approx(1.0).epsilon(1e-6));
  // d_bound is exactly -2 log2 f_star.
  CHECK(r.d_bound == -2.0 * std::log2(r.f_star));

  // Matches the k=1 + input-cut options spelled out by hand.
  HierarchyResult manual = discord_lower_bound(bell_state(), HierarchyOptions::ppt_binding(1));
  CHECK(manual.f_star == doctest::Approx(r.f_star).epsilon(1e-10));

  DensityMatrix qutrit_b = test::random_bipartite(2, 3, 6, 304);
  CHECK_THROWS_AS(surprisal_measurement_recoverability(qutrit_b), std::invalid_argument);
}

TEST_CASE("optimizer witness: channel flags, symmetry residual, and replay") {
  DensityMatrix rho = cq_pure_pair_state(kPi / 4);
  for (HierarchyOptions o : {HierarchyOptions{2}, HierarchyOptions{3},
                             HierarchyOptions::ppt_binding(1)}) {
    HierarchyResult r = discord_lower_bound(rho, o);
    REQUIRE(r.optimal());
    auto flags = is_channel(r.optimizer);
    CHECK(flags.cp);
    CHECK(flags.tp);
    CHECK(r.bose_residual <= 1e-7);
    DensityMatrix replay = apply_choi(r.optimizer_effective, rho, 1);
    CHECK(fidelity_closed_form(rho, replay) == doctest::Approx(r.f_star).epsilon(1e-5));
  }
}

TEST_CASE("bound grows with the extension count") {
  DensityMatrix rho = cq_pure_pair_state(kPi / 4);
  double prev = -1.0;
  for (Index k = 1; k <= 5; ++k) {
    HierarchyOptions o;
    o.k = k;
    HierarchyResult r = discord_lower_bound(rho, o);
    REQUIRE(r.optimal());
    CHECK(r.d_bound >= prev - 1e-6);
    prev = r.d_bound;
  }
}

TEST_CASE("PPT cuts never decrease the bound") {
  DensityMatrix rho = test::random_bipartite(2, 2, 2, 306);
  HierarchyOptions plain;
  plain.k = 2;
  HierarchyOptions with_input_cut = plain;
  with_input_cut.ppt_cuts = {PptCut::input_cut()};
  HierarchyOptions with_both = with_input_cut;
  with_both.ppt_cuts.push_back({true, 1});  // transposes input and one copy

  double d0 = discord_lower_bound(rho, plain).d_bound;
  double d1 = discord_lower_bound(rho, with_input_cut).d_bound;
  double d2 = discord_lower_bound(rho, with_both).d_bound;
  CHECK(d1 >= d0 - 1e-6);
  CHECK(d2 >= d1 - 1e-6);
  // Both values recorded; strict improvement is not asserted.
}

TEST_CASE("cut labels and validation") {
  CHECK(PptCut::input_cut().label() == "B");
  CHECK(PptCut{true, 2}.label() == "B+2c");
  CHECK(PptCut{false, 2}.label() == "2c");
  DensityMatrix rho = test::random_bipartite(2, 2, 4, 307);
  HierarchyOptions bad;
  bad.k = 2;
  bad.ppt_cuts = {{false, 0}};
  CHECK_THROWS_AS(build_problem(rho, bad), std::invalid_argument);
  bad.ppt_cuts = {{true, 2}};
  CHECK_THROWS_AS(build_problem(rho, bad), std::invalid_argument);
  bad.ppt_cuts = {{false, 3}};
  CHECK_THROWS_AS(build_problem(rho, bad), std::invalid_argument);
}

TEST_CASE("bound never exceeds the brute-force discord") {
  MeasurementSweepConfig cfg;
  cfg.polar = 91;
  cfg.azimuthal = 181;
  for (double theta : {kPi / 8, kPi / 4, 3 * kPi / 8}) {
    DensityMatrix rho = cq_pure_pair_state(theta);
    double brute = discord_bruteforce(rho, cfg);
    for (HierarchyOptions o : {HierarchyOptions{2}, HierarchyOptions{4},
                               HierarchyOptions::ppt_binding(1)}) {
      HierarchyResult r = discord_lower_bound(rho, o);
      REQUIRE(r.optimal());
      CHECK(r.d_bound <= brute + 1e-4);
    }
  }
}

TEST_CASE("faithfulness: random non-quantum-classical states score positive at k=2") {
  HierarchyOptions o;
  o.k = 2;
  int tested = 0;
  for (std::uint64_t seed = 0; tested < 200; ++seed) {
    DensityMatrix rho = test::random_bipartite(2, 2, 1 + seed % 4, 50000 + seed);
    if (is_quantum_classical(rho)) continue;  // essentially never for random draws
    HierarchyResult r = discord_lower_bound(rho, o);
    REQUIRE(r.optimal());
    REQUIRE(r.f_star < 1.0 - 1e-6);
    REQUIRE(r.d_bound > 1e-6);
    ++tested;
  }
}

TEST_CASE("EB search values are feasible for every level") {
  for (double theta : {kPi / 4, kPi / 3}) {
    DensityMatrix rho = cq_pure_pair_state(theta);
    double eb = eb_fidelity_search(rho, 30, 5);
    for (Index k : {2, 3}) {
      HierarchyOptions o;
      o.k = k;
      CHECK(eb <= max_broadcast_fidelity(rho, o) + 1e-6);
    }
    CHECK(eb <= surprisal_measurement_recoverability(rho).f_star + 1e-6);
  }
}

TEST_CASE("recovery-bound consistency for qubit B") {
  MeasurementSweepConfig cfg;
  cfg.polar = 91;
  cfg.azimuthal = 181;
  for (auto rho : {cq_pure_pair_state(kPi / 4), bell_state(),
                   test::random_bipartite(2, 2, 4, 311)}) {
    double brute = discord_bruteforce(rho, cfg);
    double fstar = surprisal_measurement_recoverability(rho).f_star;
    CHECK(fstar >= std::exp2(-0.5 * brute) - 1e-3);
  }
}

TEST_CASE("bound is invariant under local unitaries on B") {
  DensityMatrix rho = cq_pure_pair_state(kPi / 4);
  Rng rng(313);
  Matrix u = kron(Matrix::Identity(2, 2), random_unitary(2, rng));
  DensityMatrix rotated(hermitize(u * rho.matrix() * u.adjoint()), {2, 2});
  for (HierarchyOptions o : {HierarchyOptions{2}, HierarchyOptions{4},
                             HierarchyOptions::ppt_binding(1)}) {
    double d0 = discord_lower_bound(rho, o).d_bound;
    double d1 = discord_lower_bound(rotated, o).d_bound;
    CHECK(std::abs(d0 - d1) <= 1e-6);
  }
}

TEST_CASE("bound never increases under local channels on A") {
  DensityMatrix rho = cq_pure_pair_state(kPi / 4);
  Rng rng(314);
  for (int trial = 0; trial < 5; ++trial) {
    // Random CPTP map on A from two Kraus operators.
    Matrix g1 = ginibre(2, 2, rng), g2 = ginibre(2, 2, rng);
    Matrix s = hermitize(g1.adjoint() * g1 + g2.adjoint() * g2);
    Matrix sinv = hermitian_sqrt(s).inverse();
    Matrix k1 = g1 * sinv, k2 = g2 * sinv;
    Matrix k1f = kron(k1, Matrix::Identity(2, 2));
    Matrix k2f = kron(k2, Matrix::Identity(2, 2));
    DensityMatrix mapped(hermitize(k1f * rho.matrix() * k1f.adjoint() +
                                   k2f * rho.matrix() * k2f.adjoint()),
                         {2, 2});
    for (HierarchyOptions o : {HierarchyOptions{2}, HierarchyOptions::ppt_binding(1)}) {
      double before = discord_lower_bound(rho, o).d_bound;
      double after = discord_lower_bound(mapped, o).d_bound;
      REQUIRE(after <= before + 1e-6);
    }
  }
}

TEST_CASE("plain symmetric extendibility relaxes the Bose constraint") {
  DensityMatrix rho = test::random_bipartite(2, 2, 2, 316);
  HierarchyOptions bose;
  bose.k = 2;
  HierarchyOptions plain = bose;
  plain.bose = false;
  double fb = max_broadcast_fidelity(rho, bose);
  double fp = max_broadcast_fidelity(rho, plain);
  CHECK(fp >= fb - 1e-7);
}

TEST_CASE("extendible-state fidelity: separable, entangled, and mixed inputs") {
  DensityMatrix sep = pure_state(basis_vector(4, 0), {2, 2});
  for (Index k : {2, 3, 4})
    CHECK(fidelity_with_k_extendible(sep, k) == doctest::Approx(1.0).epsilon(1e-6));

  DensityMatrix maxmix(0.25 * Matrix::Identity(4, 4), {2, 2});
  CHECK(fidelity_with_k_extendible(maxmix, 3) == doctest::Approx(1.0).epsilon(1e-6));

  double f2 = fidelity_with_k_extendible(bell_state(), 2);
  double f3 = fidelity_with_k_extendible(bell_state(), 3);
  double f4 = fidelity_with_k_extendible(bell_state(), 4);
  CHECK(f2 > 0.70710678118654752);
  CHECK(f2 < 1.0 - 1e-3);
  CHECK(f3 <= f2 + 1e-7);
  CHECK(f4 <= f3 + 1e-7);

  // Plain (non-Bose) 2-extendibility of the maximally entangled state: the
  // overlap ceiling is 3/4, so the fidelity is sqrt(3)/2.
  double fp = fidelity_with_k_extendible(bell_state(), 2, false);
  CHECK(fp == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-6));
  CHECK(fp >= f2 - 1e-7);
}

TEST_CASE("quantum-classical commutation test") {
  CHECK(is_quantum_classical(cq_pure_pair_state(0.0)));
  CHECK(is_quantum_classical(cq_pure_pair_state(kHalfPi)));
  CHECK(is_quantum_classical(rotated_qc(317)));
  CHECK_FALSE(is_quantum_classical(cq_pure_pair_state(kPi / 4)));
  CHECK_FALSE(is_quantum_classical(bell_state()));
  CHECK_FALSE(is_quantum_classical(test::random_bipartite(2, 2, 4, 318)));
}

TEST_CASE("optimizer channel serializes in the choi text format") {
  HierarchyResult r = discord_lower_bound(cq_pure_pair_state(kPi / 4), HierarchyOptions{2});
  REQUIRE(r.optimal());
  std::stringstream ss;
  write_choi(ss, r.optimizer);
  ChoiMatrix back = read_choi(ss);
  CHECK(back.din == 2);
  CHECK(back.dout == 3);
  CHECK((back.data - r.optimizer.data).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("solver diagnostics propagate through failures") {
  // An impossible symmetric-space cap forces a build error, not a bad value.
  DensityMatrix rho = test::random_bipartite(2, 2, 4, 319);
  HierarchyOptions o;
  o.k = 2;
  o.sym_cap = 1;
  CHECK_THROWS_AS(build_problem(rho, o), std::invalid_argument);
}
