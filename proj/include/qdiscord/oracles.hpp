/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_ORACLES_HPP
#define QDISCORD_ORACLES_HPP

#include <cstdint>

#include "qdiscord/choi.hpp"
#include "qdiscord/density_matrix.hpp"

namespace qdiscord {

/// Sweep for the minimization over measurements on B: a polar x azimuthal
/// grid of projective qubit measurements, followed by derivative-free compass
/// refinement (step halves after 20 non-improving iterations). outcomes 3-4
/// adds seeded random extremal POVMs (rank-one elements) with refinement.
struct MeasurementSweepConfig {
  int polar = 181;
  int azimuthal = 361;
  int refine = 200;
  int outcomes = 2;
  int povm_samples = 2000;
  std::uint64_t seed = 17;

  void validate() const;
};

/// Brute-force discord with measurement on B (qubit B only): the minimum over
/// sampled measurements of I(A:B) - I(A:Y). An upper bound on the true
/// discord that the grid plus refinement makes tight for qubit B; trusted to
/// about 1e-4 after refinement.
double discord_bruteforce(const DensityMatrix& rho_ab,
                          const MeasurementSweepConfig& cfg = {});

/// Best fidelity F(rho_AB, (id (x) EB)[rho_AB]) over sampled
/// measure-and-prepare channels with locally refined pure preparations.
/// A feasible lower bound on every broadcast-hierarchy value; best-so-far is
/// monotone in `samples`. Requires |B| <= 3.
double eb_fidelity_search(const DensityMatrix& rho_ab, int samples, std::uint64_t seed);

/// Same search, also returning the best channel found.
struct EbSearchResult {
  double fidelity = 0.0;
  ChoiMatrix channel;
};
EbSearchResult eb_fidelity_search_detailed(const DensityMatrix& rho_ab, int samples,
                                           std::uint64_t seed);

/// Triangle-like fidelity perturbation bound for three states:
///   |F(rho,sigma) - F(tau,sigma)| <= sqrt(2) sqrt(1 - F(tau,rho))
///                                 <= sqrt(2) sqrt(Delta(tau,rho)).
struct Lemma1Report {
  double f_rho_sigma = 0.0;
  double f_tau_sigma = 0.0;
  double lhs = 0.0;          // |F(rho,sigma) - F(tau,sigma)|
  double fidelity_bound = 0.0;
  double distance_bound = 0.0;
  double slack_fidelity = 0.0;   // fidelity_bound - lhs
  double slack_distance = 0.0;   // distance_bound - fidelity_bound
  bool holds = false;
};
Lemma1Report check_lemma1(const DensityMatrix& rho, const DensityMatrix& sigma,
                          const DensityMatrix& tau);

/// Seeded random extremal POVM on a qubit: rank-one elements with Bloch
/// vectors summing to zero; n in {2, 3, 4}.
std::vector<Matrix> random_extremal_qubit_povm(int n, class Rng& rng);

}  // namespace qdiscord

#endif
