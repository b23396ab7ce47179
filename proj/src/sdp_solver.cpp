/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/sdp/solver.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace qdiscord::sdp {

namespace {

struct BlockTerm {
  Index constraint;
  const Matrix* coeff;
};

double trace_product_real(const Matrix& a, const Matrix& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

/// Largest alpha with X + alpha D > 0, estimated from lambda_min of
/// L^-1 D L^-dag for the Cholesky factor L of X.
double max_step(const Matrix& x, const Matrix& d) {
  Eigen::LLT<Matrix> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  Matrix l = llt.matrixL();
  Matrix y1 = l.triangularView<Eigen::Lower>().solve(d);
  Matrix w = l.triangularView<Eigen::Lower>().solve(y1.adjoint()).adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(w), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return 0.0;
  double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-300) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

bool positive_definite(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  return llt.info() == Eigen::Success;
}

}  // namespace

const char* to_string(SdpSolution::Status s) {
  switch (s) {
    case SdpSolution::Status::optimal: return "optimal";
    case SdpSolution::Status::infeasible: return "infeasible";
    case SdpSolution::Status::unbounded: return "unbounded";
    case SdpSolution::Status::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

SdpSolution solve(const SdpProblem& p, const SolveOptions& opts) {
  const auto& blocks = p.blocks();
  const auto& constraints = p.constraints();
  const std::size_t nblocks = blocks.size();
  const Index m = p.num_constraints();
  if (nblocks == 0) throw std::invalid_argument("sdp solve: problem has no blocks");
  if (p.real_embedded_order() > opts.order_cap)
    throw std::invalid_argument("sdp solve: real-embedded order exceeds the cap");

  // Internally minimize <Cmin, X> with Cmin = -C.
  std::vector<Matrix> cmin(nblocks);
  Index ntot = 0;
  double cnorm = 0.0;
  for (std::size_t j = 0; j < nblocks; ++j) {
    cmin[j] = -p.objective()[j];
    ntot += blocks[j].order;
    cnorm += cmin[j].squaredNorm();
  }
  cnorm = std::sqrt(cnorm);

  RealVector b(m);
  std::vector<std::vector<BlockTerm>> touching(nblocks);
  std::vector<double> anorm(static_cast<std::size_t>(m), 0.0);
  for (Index i = 0; i < m; ++i) {
    b(i) = constraints[static_cast<std::size_t>(i)].rhs;
    for (const auto& [bl, coeff] : constraints[static_cast<std::size_t>(i)].terms) {
      touching[static_cast<std::size_t>(bl)].push_back({i, &coeff});
      anorm[static_cast<std::size_t>(i)] += coeff.squaredNorm();
    }
    anorm[static_cast<std::size_t>(i)] = std::sqrt(anorm[static_cast<std::size_t>(i)]);
  }
  double bnorm = b.norm();
  double amax = 0.0;
  for (double an : anorm) amax = std::max(amax, an);

  // Starting point: scaled identities (y = 0).
  double xi_p = 0.0;
  for (Index i = 0; i < m; ++i)
    xi_p = std::max(xi_p, std::abs(b(i)) / (1.0 + anorm[static_cast<std::size_t>(i)]));
  double sn = std::sqrt(static_cast<double>(ntot));
  double kappa_p = std::max({10.0, sn, static_cast<double>(ntot) * xi_p});
  double kappa_d = std::max({10.0, sn, cnorm, amax});

  std::vector<Matrix> X(nblocks), Z(nblocks), Zinv(nblocks), Rd(nblocks);
  std::vector<Matrix> dXp(nblocks), dZp(nblocks), dX(nblocks), dZ(nblocks);
  for (std::size_t j = 0; j < nblocks; ++j) {
    X[j] = kappa_p * Matrix::Identity(blocks[j].order, blocks[j].order);
    Z[j] = kappa_d * Matrix::Identity(blocks[j].order, blocks[j].order);
  }
  RealVector y = RealVector::Zero(m);

  SdpSolution sol;
  RealMatrix M(m, m);
  RealVector rp(m), rhs(m), dy(m), a_of(m);

  auto apply_A = [&](const std::vector<Matrix>& v, RealVector& out) {
    out.setZero();
    for (std::size_t j = 0; j < nblocks; ++j)
      for (const BlockTerm& t : touching[j]) out(t.constraint) += trace_product_real(*t.coeff, v[j]);
  };
  auto add_AT = [&](const RealVector& w, std::vector<Matrix>& out, double sign) {
    for (std::size_t j = 0; j < nblocks; ++j)
      for (const BlockTerm& t : touching[j]) out[j] += (sign * w(t.constraint)) * (*t.coeff);
  };

  const double tau = 0.98;
  double pobj = 0.0, dobj = 0.0, relgap = 1.0, pres = 1.0, dres = 1.0;
  int iter = 0;

  for (iter = 0; iter < opts.max_iterations; ++iter) {
    // Residuals and convergence metrics.
    apply_A(X, a_of);
    rp = b - a_of;
    for (std::size_t j = 0; j < nblocks; ++j) {
      Rd[j] = cmin[j] - Z[j];
    }
    add_AT(y, Rd, -1.0);

    pobj = 0.0;
    double mu_num = 0.0;
    dres = 0.0;
    for (std::size_t j = 0; j < nblocks; ++j) {
      pobj += trace_product_real(cmin[j], X[j]);
      mu_num += X[j].cwiseProduct(Z[j].conjugate()).sum().real();
      dres = std::max(dres, Rd[j].norm() / (1.0 + cnorm));
    }
    dobj = b.dot(y);
    relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    pres = rp.norm() / (1.0 + bnorm);
    double mu = mu_num / static_cast<double>(ntot);

    if (opts.verbose) {
      std::cerr << "iter " << iter << " pobj " << -pobj << " dobj " << -dobj << " gap " << relgap
                << " pres " << pres << " dres " << dres << " mu " << mu << "\n";
    }

    if (relgap <= opts.gap_tol && pres <= opts.feas_tol && dres <= opts.feas_tol) {
      sol.status = SdpSolution::Status::optimal;
      break;
    }

    // Primal infeasibility: a dual improving ray with b^T y -> +inf and
    // -A^T(y) essentially PSD is a Farkas certificate.
    double bty = dobj;
    if (bty > 1e8 * (1.0 + cnorm)) {
      double viol = 0.0, scale = 0.0;
      std::vector<Matrix> s(nblocks);
      for (std::size_t j = 0; j < nblocks; ++j)
        s[j] = Matrix::Zero(blocks[j].order, blocks[j].order);
      add_AT(y, s, -1.0 / bty);
      for (std::size_t j = 0; j < nblocks; ++j) {
        viol = std::min(viol, min_eigenvalue(hermitize(s[j])));
        scale = std::max(scale, s[j].cwiseAbs().maxCoeff());
      }
      if (viol >= -1e-7 * (1.0 + scale)) {
        sol.status = SdpSolution::Status::infeasible;
        sol.message = "dual objective diverges along a Farkas ray";
        break;
      }
    }
    // Dual infeasibility (primal objective unbounded below in min form).
    double xnorm = 0.0;
    for (std::size_t j = 0; j < nblocks; ++j) xnorm += X[j].squaredNorm();
    xnorm = std::sqrt(xnorm);
    if (pobj < -1e8 * (1.0 + bnorm) && a_of.norm() <= 1e-6 * xnorm) {
      sol.status = SdpSolution::Status::unbounded;
      sol.message = "primal objective diverges along a feasible ray";
      break;
    }

    // Factor Z and form the Schur complement M_il = Re Tr(A_i X A_l Z^-1).
    bool factor_ok = true;
    for (std::size_t j = 0; j < nblocks; ++j) {
      Eigen::LLT<Matrix> llt(Z[j]);
      if (llt.info() != Eigen::Success) {
        factor_ok = false;
        break;
      }
      Zinv[j] = llt.solve(Matrix::Identity(blocks[j].order, blocks[j].order));
      Zinv[j] = hermitize(Zinv[j]);
    }
    if (!factor_ok) {
      sol.status = SdpSolution::Status::numerical_failure;
      sol.message = "dual iterate lost positive definiteness";
      break;
    }

    M.setZero();
    for (std::size_t j = 0; j < nblocks; ++j) {
      for (const BlockTerm& tl : touching[j]) {
        Matrix t = X[j] * (*tl.coeff) * Zinv[j];
        for (const BlockTerm& ti : touching[j])
          M(ti.constraint, tl.constraint) += trace_product_real(*ti.coeff, t);
      }
    }
    M = 0.5 * (M + M.transpose()).eval();

    Eigen::LDLT<RealMatrix> mldlt(M);
    if (mldlt.info() != Eigen::Success || !mldlt.isPositive()) {
      RealMatrix Mr = M + 1e-12 * (1.0 + M.diagonal().maxCoeff()) *
                              RealMatrix::Identity(m, m);
      mldlt.compute(Mr);
      if (mldlt.info() != Eigen::Success) {
        sol.status = SdpSolution::Status::numerical_failure;
        sol.message = "Schur complement factorization failed";
        break;
      }
    }
    auto solve_schur = [&](const RealVector& r) {
      RealVector s = mldlt.solve(r);
      s += mldlt.solve(r - M * s);  // one step of iterative refinement
      return s;
    };

    // Predictor (affine scaling direction).
    std::vector<Matrix> xrz(nblocks);
    rhs = b;
    for (std::size_t j = 0; j < nblocks; ++j) {
      xrz[j] = X[j] * Rd[j] * Zinv[j];
      for (const BlockTerm& t : touching[j]) rhs(t.constraint) += trace_product_real(*t.coeff, xrz[j]);
    }
    dy = solve_schur(rhs);
    for (std::size_t j = 0; j < nblocks; ++j) dZp[j] = Rd[j];
    add_AT(dy, dZp, -1.0);
    for (std::size_t j = 0; j < nblocks; ++j)
      dXp[j] = hermitize(-X[j] - X[j] * dZp[j] * Zinv[j]);

    double ap = 1.0, ad = 1.0;
    for (std::size_t j = 0; j < nblocks; ++j) {
      ap = std::min(ap, tau * max_step(X[j], dXp[j]));
      ad = std::min(ad, tau * max_step(Z[j], dZp[j]));
    }

    double mu_aff = 0.0;
    for (std::size_t j = 0; j < nblocks; ++j)
      mu_aff += (X[j] + ap * dXp[j]).cwiseProduct((Z[j] + ad * dZp[j]).conjugate()).sum().real();
    mu_aff /= static_cast<double>(ntot);
    double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 1e-10, 1.0);

    // Corrector.
    rhs = b;
    for (std::size_t j = 0; j < nblocks; ++j) {
      Matrix extra = xrz[j] + dXp[j] * dZp[j] * Zinv[j] - (sigma * mu) * Zinv[j];
      for (const BlockTerm& t : touching[j]) rhs(t.constraint) += trace_product_real(*t.coeff, extra);
    }
    dy = solve_schur(rhs);
    for (std::size_t j = 0; j < nblocks; ++j) dZ[j] = Rd[j];
    add_AT(dy, dZ, -1.0);
    for (std::size_t j = 0; j < nblocks; ++j)
      dX[j] = hermitize((sigma * mu) * Zinv[j] - X[j] - dXp[j] * dZp[j] * Zinv[j] -
                        X[j] * dZ[j] * Zinv[j]);

    ap = 1.0;
    ad = 1.0;
    for (std::size_t j = 0; j < nblocks; ++j) {
      ap = std::min(ap, tau * max_step(X[j], dX[j]));
      ad = std::min(ad, tau * max_step(Z[j], dZ[j]));
    }

    // Keep iterates strictly inside the cone.
    for (int guard = 0; guard < 20; ++guard) {
      bool ok = true;
      for (std::size_t j = 0; j < nblocks && ok; ++j)
        ok = positive_definite(hermitize(X[j] + ap * dX[j]));
      if (ok) break;
      ap *= 0.8;
    }
    for (int guard = 0; guard < 20; ++guard) {
      bool ok = true;
      for (std::size_t j = 0; j < nblocks && ok; ++j)
        ok = positive_definite(hermitize(Z[j] + ad * dZ[j]));
      if (ok) break;
      ad *= 0.8;
    }

    if (ap < 1e-10 && ad < 1e-10) {
      sol.status = SdpSolution::Status::numerical_failure;
      sol.message = "step lengths collapsed";
      break;
    }

    for (std::size_t j = 0; j < nblocks; ++j) {
      X[j] = hermitize(X[j] + ap * dX[j]);
      Z[j] = hermitize(Z[j] + ad * dZ[j]);
    }
    y += ad * dy;
  }

  if (iter == opts.max_iterations) {
    sol.status = SdpSolution::Status::numerical_failure;
    sol.message = "iteration limit reached";
  }

  sol.value = -pobj;
  sol.dual_value = -dobj;
  sol.gap = relgap;
  sol.primal_residual = pres;
  sol.dual_residual = dres;
  sol.iterations = iter;
  sol.primal_blocks = std::move(X);
  sol.dual_y = std::move(y);
  return sol;
}

}  // namespace qdiscord::sdp
