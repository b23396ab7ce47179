/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "qdiscord/random.hpp"
#include "qdiscord/sdp/problem.hpp"
#include "qdiscord/sdp/solver.hpp"
#include "qdiscord/similarity.hpp"
#include "test_helpers.hpp"

using namespace qdiscord;
using sdp::SdpProblem;
using sdp::SdpSolution;

namespace {

SdpProblem fidelity_problem(const Matrix& rho, const Matrix& sigma) {
  SdpProblem p;
  sdp::add_fidelity_block(p, sdp::AffineMatrixExpr::constant(rho),
                          sdp::AffineMatrixExpr::constant(sigma));
  return p;
}

double solve_fidelity(const Matrix& rho, const Matrix& sigma, sdp::SolveOptions opts = {}) {
  SdpSolution sol = sdp::solve(fidelity_problem(rho, sigma), opts);
  REQUIRE(sol.optimal());
  return sol.value;
}

}  // namespace

TEST_CASE("diagonal-constrained trace maximization reaches 2") {
  SdpProblem p;
  int z = p.add_block("Z", 2);
  p.add_objective(z, Matrix::Identity(2, 2));
  p.add_constraint({{z, unit_matrix(2, 0, 0)}}, 1.0);
  p.add_constraint({{z, unit_matrix(2, 1, 1)}}, 1.0);
  SdpSolution sol = sdp::solve(p);
  REQUIRE(sol.optimal());
  CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(sol.primal_blocks[0](0, 0).real() == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("fidelity program on identical maximally mixed states gives 1") {
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  CHECK(solve_fidelity(half, half) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("fidelity program on |0> vs |+> gives 1/sqrt(2)") {
  CHECK(solve_fidelity(test::ket0_proj(), test::plus_proj()) ==
        doctest::Approx(0.70710678118654752).epsilon(1e-7));
}

TEST_CASE("fidelity program on orthogonal pure states gives 0") {
  CHECK(solve_fidelity(test::ket0_proj(), test::ket1_proj()) ==
        doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("fidelity program matches the closed form on random pairs") {
  int done = 0;
  for (std::uint64_t seed = 0; done < 30; ++seed) {
    Rng rng(7000 + seed);
    Index d = 2 + static_cast<Index>(seed % 5);
    Index r1 = 1 + static_cast<Index>(rng.uniform() * d);
    Index r2 = 1 + static_cast<Index>(rng.uniform() * d);
    DensityMatrix rho = random_density_matrix(d, r1, rng);
    DensityMatrix sigma = random_density_matrix(d, r2, rng);
    double via_sdp = solve_fidelity(rho.matrix(), sigma.matrix());
    double closed = fidelity_closed_form(rho, sigma);
    REQUIRE(via_sdp == doctest::Approx(closed).epsilon(1e-6));
    ++done;
  }
}

TEST_CASE("weak duality and feasibility residuals at optimum") {
  DensityMatrix rho = random_density_matrix(4, 3, 71);
  DensityMatrix sigma = random_density_matrix(4, 4, 72);
  SdpSolution sol = sdp::solve(fidelity_problem(rho.matrix(), sigma.matrix()));
  REQUIRE(sol.optimal());
  CHECK(sol.value <= sol.dual_value + 1e-7 * (1 + std::abs(sol.value)));
  CHECK(sol.gap <= 1e-7);
  CHECK(sol.primal_residual <= 1e-7);
}

TEST_CASE("scaling the objective scales the optimum") {
  DensityMatrix rho = random_density_matrix(3, 2, 73);
  DensityMatrix sigma = random_density_matrix(3, 3, 74);
  sdp::SolveOptions tight;
  tight.gap_tol = 1e-11;
  tight.feas_tol = 1e-11;

  SdpProblem p = fidelity_problem(rho.matrix(), sigma.matrix());
  SdpSolution base = sdp::solve(p, tight);
  REQUIRE(base.optimal());

  for (double c : {2.0, 1024.0, 0.125}) {
    SdpProblem scaled = fidelity_problem(rho.matrix(), sigma.matrix());
    SdpProblem copy;
    int g = copy.add_block("G", scaled.blocks()[0].order);
    copy.add_objective(g, c * scaled.objective()[0]);
    for (const auto& con : scaled.constraints()) copy.add_constraint(con.terms, con.rhs);
    SdpSolution s = sdp::solve(copy, tight);
    REQUIRE(s.optimal());
    CHECK(std::abs(s.value - c * base.value) <= 1e-9 * (1.0 + std::abs(c * base.value)));
  }
}

TEST_CASE("solver is deterministic") {
  DensityMatrix rho = random_density_matrix(4, 2, 75);
  DensityMatrix sigma = random_density_matrix(4, 3, 76);
  SdpSolution a = sdp::solve(fidelity_problem(rho.matrix(), sigma.matrix()));
  SdpSolution b = sdp::solve(fidelity_problem(rho.matrix(), sigma.matrix()));
  CHECK(a.status == b.status);
  CHECK(a.value == b.value);  // bitwise: identical input, identical arithmetic
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("infeasible diagonal pin is detected") {
  // A PSD block cannot have a negative diagonal entry; with a bounded
  // objective the only explanation is primal infeasibility.
  SdpProblem p;
  int z = p.add_block("Z", 2);
  p.add_objective(z, -Matrix::Identity(2, 2));
  p.add_constraint({{z, unit_matrix(2, 0, 0)}}, -1.0);
  p.add_constraint({{z, unit_matrix(2, 1, 1)}}, 1.0);
  SdpSolution sol = sdp::solve(p);
  CHECK(sol.status == SdpSolution::Status::infeasible);
}

TEST_CASE("unbounded objective is not reported as optimal") {
  SdpProblem p;
  int z = p.add_block("Z", 2);
  p.add_objective(z, Matrix::Identity(2, 2));
  Matrix off = Matrix::Zero(2, 2);
  off(0, 1) = off(1, 0) = 1.0;
  p.add_constraint({{z, off}}, 0.0);
  SdpSolution sol = sdp::solve(p);
  CHECK(sol.status != SdpSolution::Status::optimal);
  CHECK((sol.status == SdpSolution::Status::unbounded ||
         sol.status == SdpSolution::Status::numerical_failure));
}

TEST_CASE("hermiticity of problem data is enforced") {
  SdpProblem p;
  int z = p.add_block("Z", 2);
  Matrix nonherm = Matrix::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS(p.add_objective(z, nonherm), std::invalid_argument);
  CHECK_THROWS_AS(p.add_constraint({{z, nonherm}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(p.add_constraint({{z, Matrix::Identity(2, 2)}},
                                   std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
}

TEST_CASE("order cap is enforced") {
  SdpProblem p;
  p.add_block("Z", 300);
  p.add_constraint({{0, Matrix::Identity(300, 300)}}, 1.0);
  sdp::SolveOptions opts;
  opts.order_cap = 512;
  CHECK_THROWS_AS(sdp::solve(p, opts), std::invalid_argument);
}

TEST_CASE("complex-to-real embedding preserves optima") {
  // Real-valued problem: block doubling with identical optimum.
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  sdp::SolveOptions tight{1e-10, 1e-10, 200, 512, false};
  SdpProblem real_p = fidelity_problem(test::ket0_proj(), half);
  SdpSolution raw = sdp::solve(real_p, tight);
  SdpSolution embedded = sdp::solve(sdp::embed_hermitian(real_p), tight);
  REQUIRE(raw.optimal());
  REQUIRE(embedded.optimal());
  CHECK(raw.value == doctest::Approx(embedded.value).epsilon(1e-8));

  // The embedding of i (E01 - E10) is real symmetric.
  Matrix im = Matrix::Zero(2, 2);
  im(0, 1) = Complex(0, 1);
  im(1, 0) = Complex(0, -1);
  SdpProblem probe;
  int z = probe.add_block("Z", 2);
  probe.add_objective(z, im);
  SdpProblem emb = sdp::embed_hermitian(probe);
  CHECK(emb.blocks()[0].order == 4);
  CHECK(emb.objective()[0].imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(hermiticity_defect(emb.objective()[0]) == 0.0);
}

TEST_CASE("raw and embedded solves agree on complex data") {
  sdp::SolveOptions tight{1e-10, 1e-10, 200, 512, false};
  for (std::uint64_t seed : {81, 82, 83}) {
    Rng rng(seed);
    DensityMatrix rho = random_density_matrix(3, 2, rng);
    DensityMatrix sigma = random_density_matrix(3, 3, rng);
    SdpProblem p = fidelity_problem(rho.matrix(), sigma.matrix());
    SdpSolution raw = sdp::solve(p, tight);
    SdpSolution emb = sdp::solve(sdp::embed_hermitian(p), tight);
    REQUIRE(raw.optimal());
    REQUIRE(emb.optimal());
    CHECK(raw.value == doctest::Approx(emb.value).epsilon(1e-8));

    // Extraction recovers a Hermitian optimizer of the right order.
    Matrix back = sdp::extract_hermitian(emb.primal_blocks[0]);
    CHECK(back.rows() == p.blocks()[0].order);
    CHECK(hermiticity_defect(back) <= 1e-12);
    CHECK(min_eigenvalue(back) >= -1e-7);
  }
}

TEST_CASE("sparse text export lists sizes, rhs, and entries") {
  SdpProblem p;
  int z = p.add_block("Z", 2);
  p.add_objective(z, Matrix::Identity(2, 2));
  p.add_constraint({{z, unit_matrix(2, 0, 0)}}, 1.0);
  std::stringstream ss;
  sdp::write_sparse_sdp(ss, p);
  std::string line;
  std::getline(ss, line);  // comment
  CHECK(line.front() == '*');
  std::getline(ss, line);
  CHECK(line == "1");  // constraints
  std::getline(ss, line);
  CHECK(line == "1");  // blocks
  std::getline(ss, line);
  CHECK(line == "4");  // embedded block order
  std::getline(ss, line);
  CHECK(line == "2");  // embedded rhs = 2 b
  int entries = 0;
  while (std::getline(ss, line))
    if (!line.empty()) ++entries;
  CHECK(entries == 6);  // objective: 4 diagonal entries; constraint: 2
}

TEST_CASE("affine expression images feed pinned windows correctly") {
  // sigma = Z traced against a fixed kernel: pin a window to a block map and
  // check the optimizer satisfies it.
  Rng rng(84);
  DensityMatrix rho = random_density_matrix(2, 2, rng);
  SdpProblem p;
  int w = p.add_block("W", 2);
  p.add_constraint({{w, Matrix::Identity(2, 2)}}, 1.0);
  sdp::AffineMatrixExpr sigma(2);
  sigma.add_block_map(w, 2, [](const Matrix& h) { return h; });  // sigma = W
  sdp::add_fidelity_block(p, sdp::AffineMatrixExpr::constant(rho.matrix()), sigma);
  SdpSolution sol = sdp::solve(p);
  REQUIRE(sol.optimal());
  // Maximal fidelity over all unit-trace W is 1 at W = rho.
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK((sol.primal_blocks[0] - rho.matrix()).cwiseAbs().maxCoeff() < 1e-4);
}
