/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_SDP_SOLVER_HPP
#define QDISCORD_SDP_SOLVER_HPP

#include <string>

#include "qdiscord/sdp/problem.hpp"

namespace qdiscord::sdp {

struct SolveOptions {
  double gap_tol = 1e-7;        // relative duality gap
  double feas_tol = 1e-8;       // primal and dual residuals
  int max_iterations = 200;
  Index order_cap = 512;        // on the real-embedded total order
  bool verbose = false;
};

struct SdpSolution {
  enum class Status { optimal, infeasible, unbounded, numerical_failure };

  Status status = Status::numerical_failure;
  double value = 0.0;       // primal objective, maximize convention
  double dual_value = 0.0;  // dual bound; value <= dual_value up to gap
  std::vector<Matrix> primal_blocks;
  RealVector dual_y;
  double gap = 0.0;               // relative duality gap at exit
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::string message;

  bool optimal() const { return status == Status::optimal; }
};

const char* to_string(SdpSolution::Status s);

/// Primal-dual interior-point method (HKM search direction with a
/// predictor-corrector step) over the Hermitian blocks directly.
/// Deterministic: identical problems and options produce identical output.
SdpSolution solve(const SdpProblem& p, const SolveOptions& opts = {});

}  // namespace qdiscord::sdp

#endif
