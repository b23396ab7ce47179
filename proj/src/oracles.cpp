/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/oracles.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "qdiscord/entropy.hpp"
#include "qdiscord/state_families.hpp"
#include "qdiscord/random.hpp"
#include "qdiscord/similarity.hpp"

namespace qdiscord {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Conditional A-blocks R[b*dB+b'] with R[a,a'] = rho[(a,b),(a',b')];
/// the unnormalized post-outcome A state for POVM element M is
/// sum_{b,b'} M(b',b) R[b,b'].
std::vector<Matrix> conditional_blocks(const Matrix& rho, Index da, Index db) {
  std::vector<Matrix> blocks(static_cast<std::size_t>(db * db));
  for (Index b = 0; b < db; ++b)
    for (Index bp = 0; bp < db; ++bp) {
      Matrix r(da, da);
      for (Index a = 0; a < da; ++a)
        for (Index ap = 0; ap < da; ++ap) r(a, ap) = rho(a * db + b, ap * db + bp);
      blocks[static_cast<std::size_t>(b * db + bp)] = std::move(r);
    }
  return blocks;
}

double entropy_of_unnormalized(const Matrix& m, double weight) {
  if (weight < 1e-14) return 0.0;
  RealVector ev = hermitian_eigenvalues(hermitize(m));
  double s = 0.0;
  for (Index i = 0; i < ev.size(); ++i) {
    double l = ev(i) / weight;
    if (l >= 1e-12) s -= l * std::log2(l);
  }
  return s;
}

/// Holevo information of the post-measurement ensemble, I(A:Y).
double measured_mutual_information(const std::vector<Matrix>& blocks, Index da, Index db,
                                   double entropy_a, const std::vector<Matrix>& povm) {
  double holevo = entropy_a;
  for (const Matrix& m : povm) {
    Matrix cond = Matrix::Zero(da, da);
    for (Index b = 0; b < db; ++b)
      for (Index bp = 0; bp < db; ++bp) cond += m(bp, b) * blocks[static_cast<std::size_t>(b * db + bp)];
    double p = cond.trace().real();
    holevo -= p * entropy_of_unnormalized(cond, p);
  }
  return holevo;
}

Matrix bloch_projector(double theta, double phi) {
  double sx = std::sin(theta) * std::cos(phi);
  double sy = std::sin(theta) * std::sin(phi);
  double sz = std::cos(theta);
  Matrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + sz);
  m(1, 1) = 0.5 * (1.0 - sz);
  m(0, 1) = 0.5 * Complex(sx, -sy);
  m(1, 0) = 0.5 * Complex(sx, sy);
  return m;
}

std::vector<Matrix> projective_qubit_povm(double theta, double phi) {
  Matrix p = bloch_projector(theta, phi);
  return {p, Matrix::Identity(2, 2) - p};
}

/// Derivative-free compass minimization: probes +/- step along each
/// coordinate, moves to the best improving probe, halves the step after 20
/// consecutive non-improving iterations.
struct CompassResult {
  std::vector<double> x;
  double value;
};

CompassResult compass_minimize(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, double step0, int iterations) {
  CompassResult best{std::move(x0), 0.0};
  best.value = f(best.x);
  double step = step0;
  int stale = 0;
  std::vector<double> probe = best.x;
  for (int it = 0; it < iterations; ++it) {
    double round_best = best.value;
    std::size_t round_coord = best.x.size();
    double round_delta = 0.0;
    for (std::size_t c = 0; c < best.x.size(); ++c) {
      for (double delta : {step, -step}) {
        probe = best.x;
        probe[c] += delta;
        double v = f(probe);
        if (v < round_best - 1e-15) {
          round_best = v;
          round_coord = c;
          round_delta = delta;
        }
      }
    }
    if (round_coord < best.x.size()) {
      best.x[round_coord] += round_delta;
      best.value = round_best;
      stale = 0;
    } else if (++stale >= 20) {
      step *= 0.5;
      stale = 0;
    }
  }
  return best;
}

/// Frame (e1, e2) orthonormal and orthogonal to the unit vector n.
void plane_frame(const double n[3], double e1[3], double e2[3]) {
  double ax = std::abs(n[0]), az = std::abs(n[2]);
  double ref[3] = {0.0, 0.0, 1.0};
  if (az > 0.9 && az >= ax) {
    ref[0] = 1.0;
    ref[2] = 0.0;
  }
  // e1 = normalize(ref x n)
  e1[0] = ref[1] * n[2] - ref[2] * n[1];
  e1[1] = ref[2] * n[0] - ref[0] * n[2];
  e1[2] = ref[0] * n[1] - ref[1] * n[0];
  double norm = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (int i = 0; i < 3; ++i) e1[i] /= norm;
  e2[0] = n[1] * e1[2] - n[2] * e1[1];
  e2[1] = n[2] * e1[0] - n[0] * e1[2];
  e2[2] = n[0] * e1[1] - n[1] * e1[0];
}

Matrix direction_projector(const double u[3]) {
  Matrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + u[2]);
  m(1, 1) = 0.5 * (1.0 - u[2]);
  m(0, 1) = 0.5 * Complex(u[0], -u[1]);
  m(1, 0) = 0.5 * Complex(u[0], u[1]);
  return m;
}

/// POVM from parameter vectors; empty result means the parameters do not give
/// valid positive weights.
std::vector<Matrix> povm_from_params(int n, const std::vector<double>& params) {
  if (n == 2) {
    return projective_qubit_povm(params[0], params[1]);
  }
  if (n == 3) {
    // Normal angles + three in-plane angles; weights from the 3x3 system
    // (in-plane balance and total weight 2).
    double nt = params[0], np = params[1];
    double nv[3] = {std::sin(nt) * std::cos(np), std::sin(nt) * std::sin(np), std::cos(nt)};
    double e1[3], e2[3];
    plane_frame(nv, e1, e2);
    Eigen::Matrix3d sys;
    for (int y = 0; y < 3; ++y) {
      sys(0, y) = std::cos(params[2 + y]);
      sys(1, y) = std::sin(params[2 + y]);
      sys(2, y) = 1.0;
    }
    Eigen::Vector3d rhs(0.0, 0.0, 2.0);
    Eigen::Vector3d c = sys.fullPivLu().solve(rhs);
    if ((sys * c - rhs).norm() > 1e-9) return {};
    std::vector<Matrix> povm;
    for (int y = 0; y < 3; ++y) {
      if (c(y) < 1e-9) return {};
      double u[3];
      for (int i = 0; i < 3; ++i)
        u[i] = std::cos(params[2 + y]) * e1[i] + std::sin(params[2 + y]) * e2[i];
      povm.push_back(c(y) * direction_projector(u));
    }
    return povm;
  }
  // n == 4: four free directions; weights from the 4x4 balance system.
  Eigen::Matrix4d sys;
  double u[4][3];
  for (int y = 0; y < 4; ++y) {
    double t = params[2 * y], p = params[2 * y + 1];
    u[y][0] = std::sin(t) * std::cos(p);
    u[y][1] = std::sin(t) * std::sin(p);
    u[y][2] = std::cos(t);
    for (int i = 0; i < 3; ++i) sys(i, y) = u[y][i];
    sys(3, y) = 1.0;
  }
  Eigen::Vector4d rhs(0.0, 0.0, 0.0, 2.0);
  Eigen::Vector4d c = sys.fullPivLu().solve(rhs);
  if ((sys * c - rhs).norm() > 1e-9) return {};
  std::vector<Matrix> povm;
  for (int y = 0; y < 4; ++y) {
    if (c(y) < 1e-9) return {};
    povm.push_back(c(y) * direction_projector(u[y]));
  }
  return povm;
}

std::vector<double> random_povm_params(int n, Rng& rng) {
  std::vector<double> params;
  if (n == 2) {
    params = {std::acos(std::clamp(2.0 * rng.uniform() - 1.0, -1.0, 1.0)),
              rng.uniform(0.0, 2.0 * kPi)};
  } else if (n == 3) {
    params = {std::acos(std::clamp(2.0 * rng.uniform() - 1.0, -1.0, 1.0)),
              rng.uniform(0.0, 2.0 * kPi)};
    for (int y = 0; y < 3; ++y) params.push_back(rng.uniform(0.0, 2.0 * kPi));
  } else {
    for (int y = 0; y < 4; ++y) {
      params.push_back(std::acos(std::clamp(2.0 * rng.uniform() - 1.0, -1.0, 1.0)));
      params.push_back(rng.uniform(0.0, 2.0 * kPi));
    }
  }
  return params;
}

}  // namespace

void MeasurementSweepConfig::validate() const {
  if (polar < 2 || azimuthal < 2)
    throw std::invalid_argument("measurement sweep: grid resolutions must be >= 2");
  if (refine < 0) throw std::invalid_argument("measurement sweep: refine must be >= 0");
  if (outcomes < 2 || outcomes > 4)
    throw std::invalid_argument("measurement sweep: outcomes must be 2, 3, or 4");
}

std::vector<Matrix> random_extremal_qubit_povm(int n, Rng& rng) {
  if (n < 2 || n > 4)
    throw std::invalid_argument("random_extremal_qubit_povm: n must be 2, 3, or 4");
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<Matrix> povm = povm_from_params(n, random_povm_params(n, rng));
    if (!povm.empty()) return povm;
  }
  throw std::runtime_error("random_extremal_qubit_povm: sampling failed");
}

double discord_bruteforce(const DensityMatrix& rho_ab, const MeasurementSweepConfig& cfg) {
  cfg.validate();
  if (rho_ab.subsystems() != 2)
    throw std::invalid_argument("discord_bruteforce: state must be bipartite");
  Index da = rho_ab.dims()[0], db = rho_ab.dims()[1];
  if (db != 2)
    throw std::invalid_argument(
        "discord_bruteforce: only qubit B is supported (projective parametrization)");

  auto blocks = conditional_blocks(rho_ab.matrix(), da, db);
  double entropy_a = von_neumann_entropy(rho_ab.reduce({0}));
  double info_ab = mutual_information(rho_ab);

  auto objective = [&](const std::vector<Matrix>& povm) {
    return info_ab - measured_mutual_information(blocks, da, db, entropy_a, povm);
  };
  auto objective_angles = [&](const std::vector<double>& x) {
    return objective(projective_qubit_povm(x[0], x[1]));
  };

  double dt = kPi / (cfg.polar - 1);
  double dp = 2.0 * kPi / (cfg.azimuthal - 1);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x{0.0, 0.0};
  for (int i = 0; i < cfg.polar; ++i) {
    for (int j = 0; j < cfg.azimuthal; ++j) {
      double v = objective_angles({i * dt, j * dp});
      if (v < best) {
        best = v;
        best_x = {i * dt, j * dp};
      }
    }
  }
  CompassResult refined = compass_minimize(objective_angles, best_x, std::max(dt, dp), cfg.refine);
  best = std::min(best, refined.value);

  if (cfg.outcomes > 2) {
    Rng rng(cfg.seed);
    std::vector<double> best_params;
    double best_povm = std::numeric_limits<double>::infinity();
    for (int s = 0; s < cfg.povm_samples; ++s) {
      std::vector<double> params = random_povm_params(cfg.outcomes, rng);
      std::vector<Matrix> povm = povm_from_params(cfg.outcomes, params);
      if (povm.empty()) continue;
      double v = objective(povm);
      if (v < best_povm) {
        best_povm = v;
        best_params = params;
      }
    }
    if (!best_params.empty()) {
      auto povm_objective = [&](const std::vector<double>& x) {
        std::vector<Matrix> povm = povm_from_params(cfg.outcomes, x);
        if (povm.empty()) return std::numeric_limits<double>::infinity();
        return objective(povm);
      };
      CompassResult r = compass_minimize(povm_objective, best_params, 0.1, cfg.refine);
      best = std::min(best, r.value);
    }
  }
  return best;
}

Lemma1Report check_lemma1(const DensityMatrix& rho, const DensityMatrix& sigma,
                          const DensityMatrix& tau) {
  Lemma1Report r;
  r.f_rho_sigma = fidelity_closed_form(rho, sigma);
  r.f_tau_sigma = fidelity_closed_form(tau, sigma);
  r.lhs = std::abs(r.f_rho_sigma - r.f_tau_sigma);
  double f_tau_rho = fidelity_closed_form(tau, rho);
  r.fidelity_bound = std::sqrt(2.0) * std::sqrt(std::max(0.0, 1.0 - f_tau_rho));
  r.distance_bound = std::sqrt(2.0) * std::sqrt(trace_distance(tau, rho));
  r.slack_fidelity = r.fidelity_bound - r.lhs;
  r.slack_distance = r.distance_bound - r.fidelity_bound;
  r.holds = r.slack_fidelity >= -1e-9 && r.slack_distance >= -1e-9;
  return r;
}

namespace {

struct EbCandidate {
  std::vector<Matrix> povm;
  std::vector<Vector> preps;
  // For qubit B the POVM is parametrized (projective angles or extremal
  // rank-one parameters) so refinement can move the measurement too.
  int povm_outcomes = 0;  // 0 when the POVM is not parametrized
  std::vector<double> povm_params;
};

/// sigma = sum_y rho_A^y (x) |beta_y><beta_y| for the measure-and-prepare
/// channel acting on B.
Matrix eb_output(const std::vector<Matrix>& blocks, Index da, Index db,
                 const std::vector<Matrix>& povm, const std::vector<Vector>& preps) {
  Matrix out = Matrix::Zero(da * db, da * db);
  for (std::size_t y = 0; y < povm.size(); ++y) {
    Matrix cond = Matrix::Zero(da, da);
    for (Index b = 0; b < db; ++b)
      for (Index bp = 0; bp < db; ++bp)
        cond += povm[y](bp, b) * blocks[static_cast<std::size_t>(b * db + bp)];
    out += kron(cond, (preps[y] * preps[y].adjoint()).eval());
  }
  return hermitize(out);
}

Vector max_eigenvector(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
  return es.eigenvectors().col(m.rows() - 1);
}

}  // namespace

EbSearchResult eb_fidelity_search_detailed(const DensityMatrix& rho_ab, int samples,
                                           std::uint64_t seed) {
  if (rho_ab.subsystems() != 2)
    throw std::invalid_argument("eb_fidelity_search: state must be bipartite");
  Index da = rho_ab.dims()[0], db = rho_ab.dims()[1];
  if (db > 3) throw std::invalid_argument("eb_fidelity_search: |B| must be <= 3");

  auto blocks = conditional_blocks(rho_ab.matrix(), da, db);
  const Matrix& rho = rho_ab.matrix();

  auto fidelity_of = [&](const std::vector<Matrix>& povm, const std::vector<Vector>& preps) {
    return fidelity_closed_form(rho, eb_output(blocks, da, db, povm, preps));
  };

  EbCandidate best;
  double best_f = -1.0;
  auto consider = [&](const std::vector<Matrix>& povm, const std::vector<Vector>& preps,
                      int outcomes = 0, std::vector<double> params = {}) {
    double f = fidelity_of(povm, preps);
    if (f > best_f) {
      best_f = f;
      best = {povm, preps, outcomes, std::move(params)};
    }
  };
  auto bloch_angles = [](const Vector& v) {
    double nx = 2.0 * (std::conj(v(0)) * v(1)).real();
    double ny = 2.0 * (std::conj(v(0)) * v(1)).imag();
    double nz = std::norm(v(0)) - std::norm(v(1));
    return std::vector<double>{std::acos(std::clamp(nz, -1.0, 1.0)), std::atan2(ny, nx)};
  };

  // Deterministic seeds: measure and re-prepare the computational basis and
  // the eigenbasis of rho_B.
  {
    std::vector<Matrix> povm;
    std::vector<Vector> preps;
    for (Index b = 0; b < db; ++b) {
      Vector v = basis_vector(db, b);
      povm.push_back(v * v.adjoint());
      preps.push_back(v);
    }
    if (db == 2)
      consider(povm, preps, 2, bloch_angles(preps[0]));
    else
      consider(povm, preps);
    Matrix rho_b = partial_trace(rho, rho_ab.dims(), {1});
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho_b));
    povm.clear();
    preps.clear();
    for (Index b = 0; b < db; ++b) {
      Vector v = es.eigenvectors().col(b);
      povm.push_back(v * v.adjoint());
      preps.push_back(v);
    }
    if (db == 2)
      consider(povm, preps, 2, bloch_angles(preps[0]));
    else
      consider(povm, preps);
  }

  auto refine = [&](EbCandidate cand, int steps) {
    // Coordinate ascent over the measurement parameters (when available)
    // together with the real/imaginary preparation components.
    std::size_t np = cand.povm_params.size();
    std::vector<double> x = cand.povm_params;
    for (const Vector& v : cand.preps)
      for (Index i = 0; i < v.size(); ++i) {
        x.push_back(v(i).real());
        x.push_back(v(i).imag());
      }
    auto decode_preps = [&](const std::vector<double>& z) {
      std::vector<Vector> preps(cand.preps.size(), Vector(db));
      std::size_t idx = np;
      for (Vector& v : preps) {
        for (Index i = 0; i < db; ++i) {
          v(i) = Complex(z[idx], z[idx + 1]);
          idx += 2;
        }
        double n = v.norm();
        if (n < 1e-12) return std::vector<Vector>{};
        v /= n;
      }
      return preps;
    };
    auto decode_povm = [&](const std::vector<double>& z) {
      if (cand.povm_outcomes == 0) return cand.povm;
      return povm_from_params(cand.povm_outcomes,
                              std::vector<double>(z.begin(), z.begin() + np));
    };
    auto objective = [&](const std::vector<double>& z) {
      std::vector<Vector> preps = decode_preps(z);
      std::vector<Matrix> povm = decode_povm(z);
      if (preps.empty() || povm.empty()) return 1.0;  // minimizing -F
      return -fidelity_of(povm, preps);
    };
    CompassResult r = compass_minimize(objective, x, 0.25, steps);
    std::vector<Vector> preps = decode_preps(r.x);
    std::vector<Matrix> povm = decode_povm(r.x);
    if (!preps.empty() && !povm.empty())
      consider(povm, preps, cand.povm_outcomes,
               std::vector<double>(r.x.begin(), r.x.begin() + np));
  };

  refine(best, 60);

  for (int s = 0; s < samples; ++s) {
    Rng rng(seed + 1000003ull * static_cast<std::uint64_t>(s));
    EbCandidate cand;
    if (db == 2) {
      int n = (s % 4 < 2) ? 2 : (s % 4 == 2 ? 3 : 4);
      for (int attempt = 0; attempt < 256 && cand.povm.empty(); ++attempt) {
        std::vector<double> params = random_povm_params(n, rng);
        cand.povm = povm_from_params(n, params);
        if (!cand.povm.empty()) {
          cand.povm_outcomes = n;
          cand.povm_params = std::move(params);
        }
      }
      if (cand.povm.empty()) continue;
    } else {
      Matrix u = random_unitary(db, rng);
      for (Index b = 0; b < db; ++b) {
        Vector v = u.col(b);
        cand.povm.push_back(v * v.adjoint());
      }
    }
    for (const Matrix& m : cand.povm) cand.preps.push_back(max_eigenvector(m));
    consider(cand.povm, cand.preps, cand.povm_outcomes, cand.povm_params);
    refine(cand, 40);
  }

  // Final polish of the overall best preparations.
  refine(best, 80);

  EbSearchResult out;
  out.fidelity = best_f;
  std::vector<DensityMatrix> preps;
  for (const Vector& v : best.preps) preps.push_back(pure_state(v, {db}));
  out.channel = eb_channel(MeasurementModel(best.povm, preps));
  return out;
}

double eb_fidelity_search(const DensityMatrix& rho_ab, int samples, std::uint64_t seed) {
  return eb_fidelity_search_detailed(rho_ab, samples, seed).fidelity;
}

}  // namespace qdiscord
