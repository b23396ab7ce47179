/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_HIERARCHY_HPP
#define QDISCORD_HIERARCHY_HPP

#include <optional>
#include <string>

#include "qdiscord/choi.hpp"
#include "qdiscord/density_matrix.hpp"
#include "qdiscord/sdp/problem.hpp"
#include "qdiscord/sdp/solver.hpp"
#include "qdiscord/symmetric_subspace.hpp"

namespace qdiscord {

/// One positivity-under-partial-transposition cut on the broadcast Choi
/// operator, specified by which side of the bipartite split is transposed.
/// Copy permutation symmetry makes only the number of transposed output
/// copies matter. transpose_input=true, copies=0 is the distinguished
/// input : all-copies cut.
struct PptCut {
  bool transpose_input = true;
  Index copies = 0;

  static PptCut input_cut() { return {true, 0}; }
  std::string label() const;
};

struct HierarchyOptions {
  Index k = 2;
  bool bose = true;
  std::vector<PptCut> ppt_cuts;
  sdp::SolveOptions solver{1e-8, 1e-7, 200, 512, false};
  Index sym_cap = Index(1) << 20;

  /// k=1 with the input PPT cut: the measurement-recoverability program.
  static HierarchyOptions ppt_binding(Index k = 1);
};

/// Assembled broadcast-fidelity program together with the block indices and
/// symmetric-space data needed to interpret a solution.
struct HierarchyProblem {
  sdp::SdpProblem problem;
  int w_block = -1;
  int g_block = -1;
  Index dim_a = 0;
  Index dim_b = 0;
  Index k = 1;
  bool bose = true;
  Index w_output_dim = 0;  // Sym^k dimension if bose, else |B|^k
  std::optional<SymmetricSubspace> sym;
};

struct HierarchyResult {
  HierarchyOptions options;
  double f_star = 0.0;   // clamped to [0, 1]
  double d_bound = 0.0;  // -2 log2(f_star), bits
  sdp::SdpSolution::Status status = sdp::SdpSolution::Status::numerical_failure;
  double gap = 0.0;
  double primal_residual = 0.0;
  int iterations = 0;
  std::string message;
  double bose_residual = 0.0;
  ChoiMatrix optimizer;            // broadcast channel, compressed symmetric output
  ChoiMatrix optimizer_effective;  // induced single-copy channel on B

  bool optimal() const { return status == sdp::SdpSolution::Status::optimal; }
};

/// Maximal-fidelity-under-local-broadcast program: maximize F(rho_AB, sigma)
/// over sigma = (id_A (x) Lambda_B)[rho_AB] with Lambda ranging over channels
/// whose Choi admits a k-fold (Bose-)symmetric broadcast extension on the
/// output, optionally PPT on the requested cuts. The Bose constraint is
/// enforced by compression: the variable lives on B (x) Sym^k(B) and is
/// expanded through the symmetric isometry only inside the single-copy
/// reduction.
HierarchyProblem build_problem(const DensityMatrix& rho_ab, const HierarchyOptions& opts);

/// Optimal fidelity of the program above; throws on solver failure.
double max_broadcast_fidelity(const DensityMatrix& rho_ab, const HierarchyOptions& opts);

/// Full result with the discord lower bound -2 log2 F* and the optimizing
/// channel; solver failures are reported in the status field.
HierarchyResult discord_lower_bound(const DensityMatrix& rho_ab, const HierarchyOptions& opts);

/// Exact surprisal of measurement recoverability for a qubit B: the k=1
/// program with the input PPT cut, where PPT binding coincides with
/// entanglement breaking. Rejects |B| != 2.
HierarchyResult surprisal_measurement_recoverability(const DensityMatrix& rho_ab);

/// Largest fidelity of rho_AB with any state admitting a (Bose-)k-symmetric
/// extension on B; equals 1 for separable states at every k.
double fidelity_with_k_extendible(const DensityMatrix& rho_ab, Index k, bool bose = true);

/// Commutation test on the conditional B blocks <i|_A rho |j>_A: the state is
/// quantum-classical iff the family (with adjoints) commutes, i.e. is
/// simultaneously unitarily diagonalizable.
bool is_quantum_classical(const DensityMatrix& rho_ab, double tol = 1e-8);

}  // namespace qdiscord

#endif
