/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qdiscord {

namespace {

constexpr Index kExpandedCap = 32;  // order cap for cuts needing the full B^(k+1) space

/// Single-copy reduction kernels K[s][s'] = Tr_{copies 2..k}(t_s t_s'^dag)
/// for the isometry columns t_s; the reduced Choi of a compressed variable is
/// W_red[(b,i),(b',i')] = sum_{s,s'} W[(b,s),(b',s')] K[s][s'](i,i').
std::vector<std::vector<Matrix>> reduction_kernels(const SymmetricSubspace& sym) {
  Index d = sym.local_dim, k = sym.copies, ns = sym.sym_dim();
  Index rest = 1;
  for (Index i = 1; i < k; ++i) rest *= d;
  std::vector<Matrix> reshaped(static_cast<std::size_t>(ns));
  for (Index s = 0; s < ns; ++s) {
    Matrix r(d, rest);
    for (Index i = 0; i < d; ++i)
      for (Index t = 0; t < rest; ++t) r(i, t) = sym.isometry(i * rest + t, s);
    reshaped[static_cast<std::size_t>(s)] = std::move(r);
  }
  std::vector<std::vector<Matrix>> kernels(static_cast<std::size_t>(ns));
  for (Index s = 0; s < ns; ++s) {
    kernels[static_cast<std::size_t>(s)].resize(static_cast<std::size_t>(ns));
    for (Index t = 0; t < ns; ++t)
      kernels[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] =
          reshaped[static_cast<std::size_t>(s)] * reshaped[static_cast<std::size_t>(t)].adjoint();
  }
  return kernels;
}

/// Reduced single-copy Choi of a compressed-variable matrix: contracts the
/// symmetric index pair through the reduction kernels.
Matrix reduce_compressed(const Matrix& w, Index db, const std::vector<std::vector<Matrix>>& kernels) {
  Index ns = static_cast<Index>(kernels.size());
  Matrix out = Matrix::Zero(db * db, db * db);
  for (Index b = 0; b < db; ++b)
    for (Index bp = 0; bp < db; ++bp)
      for (Index s = 0; s < ns; ++s)
        for (Index sp = 0; sp < ns; ++sp) {
          Complex v = w(b * ns + s, bp * ns + sp);
          if (v == Complex(0.0, 0.0)) continue;
          const Matrix& kb = kernels[static_cast<std::size_t>(s)][static_cast<std::size_t>(sp)];
          for (Index i = 0; i < db; ++i)
            for (Index ip = 0; ip < db; ++ip)
              out(b * db + i, bp * db + ip) += v * kb(i, ip);
        }
  return out;
}

/// Expands a compressed variable to the full input (x) copies space.
Matrix expand_compressed(const Matrix& w, Index db, const SymmetricSubspace& sym) {
  Matrix lift = kron(Matrix::Identity(db, db), sym.isometry);
  return lift * w * lift.adjoint();
}

/// Emits equality constraints target = map(source block), deduplicating
/// linearly dependent rows (needed for permutation-invariance constraints).
void add_equality_map_constraints(sdp::SdpProblem& p, int block, Index order,
                                  const std::function<Matrix(const Matrix&)>& residual_map) {
  HermitianBasis basis(order);
  HermitianBasis src(order);
  std::vector<RealVector> kept;
  for (Index beta = 0; beta < basis.size(); ++beta) {
    Matrix k = basis.element(beta);
    // Adjoint of the residual map at the functional k.
    Matrix d = Matrix::Zero(order, order);
    for (Index alpha = 0; alpha < src.size(); ++alpha) {
      double w = inner_real(k, residual_map(src.element(alpha))) / src.norm2(alpha);
      if (w != 0.0) d += w * src.element(alpha);
    }
    d = hermitize(d);
    if (d.cwiseAbs().maxCoeff() < 1e-14) continue;

    // Gram-Schmidt dedup on the real coordinates.
    RealVector v(src.size());
    for (Index alpha = 0; alpha < src.size(); ++alpha)
      v(alpha) = src.coordinate(d, alpha) * std::sqrt(src.norm2(alpha));
    for (const RealVector& u : kept) v -= u.dot(v) * u;
    if (v.norm() < 1e-10) continue;
    kept.push_back(v / v.norm());

    p.add_constraint({{block, d}}, 0.0);
  }
}

HierarchyResult make_failed(const HierarchyOptions& opts, const sdp::SdpSolution& sol) {
  HierarchyResult r;
  r.options = opts;
  r.status = sol.status;
  r.gap = sol.gap;
  r.primal_residual = sol.primal_residual;
  r.iterations = sol.iterations;
  r.message = sol.message.empty() ? std::string(sdp::to_string(sol.status)) : sol.message;
  r.f_star = std::numeric_limits<double>::quiet_NaN();
  r.d_bound = std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace

std::string PptCut::label() const {
  if (transpose_input && copies == 0) return "B";
  std::string s = transpose_input ? "B" : "";
  if (copies > 0) s += (s.empty() ? "" : "+") + std::to_string(copies) + "c";
  return s;
}

HierarchyOptions HierarchyOptions::ppt_binding(Index k) {
  HierarchyOptions o;
  o.k = k;
  o.ppt_cuts = {PptCut::input_cut()};
  return o;
}

HierarchyProblem build_problem(const DensityMatrix& rho_ab, const HierarchyOptions& opts) {
  if (rho_ab.subsystems() != 2)
    throw std::invalid_argument("hierarchy: state must have exactly two subsystems");
  if (opts.k < 1) throw std::invalid_argument("hierarchy: k must be >= 1");
  Index da = rho_ab.dims()[0], db = rho_ab.dims()[1];
  Index dab = da * db;

  HierarchyProblem built;
  built.dim_a = da;
  built.dim_b = db;
  built.k = opts.k;
  built.bose = opts.bose;

  sdp::SdpProblem& p = built.problem;
  const Matrix& rho = rho_ab.matrix();

  if (opts.bose) {
    SymmetricSubspace sym = symmetric_isometry(db, opts.k, opts.sym_cap);
    auto kernels = reduction_kernels(sym);
    Index ns = sym.sym_dim();
    Index nw = db * ns;
    built.w_output_dim = ns;

    built.w_block = p.add_block("W", nw);

    // Trace over all output copies equals the identity on the input.
    HermitianBasis bbasis(db);
    for (Index beta = 0; beta < bbasis.size(); ++beta) {
      Matrix kb = bbasis.element(beta);
      p.add_constraint({{built.w_block, kron(kb, Matrix::Identity(ns, ns))}},
                       kb.trace().real());
    }

    // sigma = (id_A (x) reduced channel)(rho) as an affine map of W.
    sdp::AffineMatrixExpr sigma(dab);
    sigma.add_block_map(built.w_block, nw, [&](const Matrix& h) {
      ChoiMatrix red(reduce_compressed(h, db, kernels), db, db);
      return apply_choi_raw(red, rho, rho_ab.dims(), 1);
    });
    // Every sigma is supported inside supp(rho_A) (x) B.
    Matrix va = sdp::support_isometry(partial_trace(rho, rho_ab.dims(), {0}));
    if (va.size() > 0) sigma.set_support(kron(va, Matrix::Identity(db, db)));

    built.g_block =
        sdp::add_fidelity_block(p, sdp::AffineMatrixExpr::constant(rho), sigma, "G");

    for (const PptCut& cut : opts.ppt_cuts) {
      if (cut.copies < 0 || cut.copies > opts.k)
        throw std::invalid_argument("hierarchy: PPT cut transposes more copies than exist");
      if (!cut.transpose_input && cut.copies == 0)
        throw std::invalid_argument("hierarchy: PPT cut transposes nothing");
      if (cut.transpose_input && cut.copies == opts.k)
        throw std::invalid_argument("hierarchy: PPT cut must split the systems");
      bool input_only = cut.transpose_input && cut.copies == 0;
      bool all_but_input = !cut.transpose_input && cut.copies == opts.k;
      if (input_only || all_but_input) {
        // Transposition of the input factor acts directly on the compressed
        // variable (the complementary all-copies transpose has the same
        // positivity condition).
        int y = p.add_block("Y_" + cut.label(), nw);
        sdp::AffineMatrixExpr expr(nw);
        expr.add_block_map(built.w_block, nw, [&](const Matrix& h) {
          return partial_transpose(h, {db, ns}, {0});
        });
        sdp::pin_block_window(p, y, 0, expr);
      } else {
        // Cuts through the copies need the expanded operator.
        Index nfull = db;
        for (Index i = 0; i < opts.k; ++i) nfull *= db;
        if (nfull > kExpandedCap)
          throw std::invalid_argument(
              "hierarchy: PPT cut through the copies needs the expanded space; |B|^(k+1) "
              "exceeds the cap");
        Dims full_dims(static_cast<std::size_t>(opts.k) + 1, db);
        std::vector<int> subs;
        if (cut.transpose_input) subs.push_back(0);
        for (Index c = 0; c < cut.copies; ++c) subs.push_back(static_cast<int>(c) + 1);
        int y = p.add_block("Y_" + cut.label(), nfull);
        sdp::AffineMatrixExpr expr(nfull);
        expr.add_block_map(built.w_block, nw, [&](const Matrix& h) {
          return partial_transpose(expand_compressed(h, db, sym), full_dims, subs);
        });
        sdp::pin_block_window(p, y, 0, expr);
      }
    }

    built.sym = std::move(sym);
  } else {
    // Plain symmetric extendibility: the full variable on input (x) copies
    // with permutation-invariance constraints.
    Index nfull = db;
    for (Index i = 0; i < opts.k; ++i) nfull *= db;
    if (nfull > kExpandedCap)
      throw std::invalid_argument("hierarchy: non-Bose variable order |B|^(k+1) exceeds the cap");
    built.w_output_dim = nfull / db;
    built.w_block = p.add_block("W", nfull);
    Dims full_dims(static_cast<std::size_t>(opts.k) + 1, db);

    HermitianBasis bbasis(db);
    Index ncopies = nfull / db;
    for (Index beta = 0; beta < bbasis.size(); ++beta) {
      Matrix kb = bbasis.element(beta);
      p.add_constraint({{built.w_block, kron(kb, Matrix::Identity(ncopies, ncopies))}},
                       kb.trace().real());
    }

    for (Index g = 0; g + 1 < opts.k; ++g) {
      std::vector<int> perm(static_cast<std::size_t>(opts.k));
      for (Index i = 0; i < opts.k; ++i) perm[static_cast<std::size_t>(i)] = static_cast<int>(i);
      std::swap(perm[static_cast<std::size_t>(g)], perm[static_cast<std::size_t>(g + 1)]);
      Matrix v = kron(Matrix::Identity(db, db), permutation_operator(db, opts.k, perm));
      add_equality_map_constraints(p, built.w_block, nfull, [&](const Matrix& h) {
        return (v * h * v.adjoint() - h).eval();
      });
    }

    sdp::AffineMatrixExpr sigma(dab);
    sigma.add_block_map(built.w_block, nfull, [&](const Matrix& h) {
      ChoiMatrix red(partial_trace(h, full_dims, {0, 1}), db, db);
      return apply_choi_raw(red, rho, rho_ab.dims(), 1);
    });
    Matrix va = sdp::support_isometry(partial_trace(rho, rho_ab.dims(), {0}));
    if (va.size() > 0) sigma.set_support(kron(va, Matrix::Identity(db, db)));
    built.g_block =
        sdp::add_fidelity_block(p, sdp::AffineMatrixExpr::constant(rho), sigma, "G");

    for (const PptCut& cut : opts.ppt_cuts) {
      if (cut.copies < 0 || cut.copies > opts.k)
        throw std::invalid_argument("hierarchy: PPT cut transposes more copies than exist");
      std::vector<int> subs;
      if (cut.transpose_input) subs.push_back(0);
      for (Index c = 0; c < cut.copies; ++c) subs.push_back(static_cast<int>(c) + 1);
      if (subs.empty() || subs.size() == full_dims.size())
        throw std::invalid_argument("hierarchy: PPT cut must split the systems");
      int y = p.add_block("Y_" + cut.label(), nfull);
      sdp::AffineMatrixExpr expr(nfull);
      expr.add_block_map(built.w_block, nfull, [&](const Matrix& h) {
        return partial_transpose(h, full_dims, subs);
      });
      sdp::pin_block_window(p, y, 0, expr);
    }
  }

  return built;
}

HierarchyResult discord_lower_bound(const DensityMatrix& rho_ab, const HierarchyOptions& opts) {
  HierarchyProblem built = build_problem(rho_ab, opts);
  sdp::SdpSolution sol = sdp::solve(built.problem, opts.solver);
  if (!sol.optimal()) return make_failed(opts, sol);

  HierarchyResult r;
  r.options = opts;
  r.status = sol.status;
  r.gap = sol.gap;
  r.primal_residual = sol.primal_residual;
  r.iterations = sol.iterations;
  r.f_star = std::clamp(sol.value, 0.0, 1.0);
  r.d_bound = -2.0 * std::log2(r.f_star);

  Index db = built.dim_b, nout = built.w_output_dim;
  Matrix w = hermitize(sol.primal_blocks[static_cast<std::size_t>(built.w_block)]);
  // Exact trace-preservation shift; the solver residual is ~feas_tol.
  Matrix marg = partial_trace(w, {db, nout}, {0});
  w += kron((Matrix::Identity(db, db) - marg).eval(),
            Matrix::Identity(nout, nout) / static_cast<double>(nout));
  double wmin = min_eigenvalue(w);
  if (wmin < 0) {
    // Mix toward the trace-preserving maximally mixed point to restore PSD.
    double viol = -wmin * static_cast<double>(nout);
    double eps = std::min(1.0, 2.0 * viol / (1.0 + viol));
    w = (1.0 - eps) * w +
        eps * kron(Matrix::Identity(db, db),
                   Matrix::Identity(nout, nout) / static_cast<double>(nout));
  }
  r.optimizer = ChoiMatrix(w, db, nout);

  if (built.bose) {
    auto kernels = reduction_kernels(*built.sym);
    r.optimizer_effective = ChoiMatrix(hermitize(reduce_compressed(w, db, kernels)), db, db);
    if (built.sym->full_dim() <= 256) {
      Matrix full = expand_compressed(w, db, *built.sym);
      Matrix proj = kron(Matrix::Identity(db, db), built.sym->projector());
      r.bose_residual = (proj * full * proj - full).cwiseAbs().maxCoeff();
    }
  } else {
    Dims full_dims(static_cast<std::size_t>(built.k) + 1, db);
    r.optimizer_effective =
        ChoiMatrix(hermitize(partial_trace(w, full_dims, {0, 1})), db, db);
    r.bose_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

double max_broadcast_fidelity(const DensityMatrix& rho_ab, const HierarchyOptions& opts) {
  HierarchyResult r = discord_lower_bound(rho_ab, opts);
  if (!r.optimal())
    throw std::runtime_error("hierarchy solve failed: " + r.message +
                             " (gap " + std::to_string(r.gap) + ", iterations " +
                             std::to_string(r.iterations) + ")");
  return r.f_star;
}

HierarchyResult surprisal_measurement_recoverability(const DensityMatrix& rho_ab) {
  if (rho_ab.subsystems() != 2 || rho_ab.dims()[1] != 2)
    throw std::invalid_argument(
        "surprisal_measurement_recoverability is exact only for |B| = 2; use "
        "discord_lower_bound with finite k (and PPT cuts) for larger B");
  return discord_lower_bound(rho_ab, HierarchyOptions::ppt_binding(1));
}

double fidelity_with_k_extendible(const DensityMatrix& rho_ab, Index k, bool bose) {
  if (rho_ab.subsystems() != 2)
    throw std::invalid_argument("fidelity_with_k_extendible: state must be bipartite");
  if (k < 1) throw std::invalid_argument("fidelity_with_k_extendible: k must be >= 1");
  Index da = rho_ab.dims()[0], db = rho_ab.dims()[1];
  Index dab = da * db;
  const Matrix& rho = rho_ab.matrix();

  sdp::SdpProblem p;
  int omega;
  sdp::AffineMatrixExpr sigma(dab);

  if (bose) {
    SymmetricSubspace sym = symmetric_isometry(db, k);
    auto kernels = reduction_kernels(sym);
    Index ns = sym.sym_dim();
    Index no = da * ns;
    omega = p.add_block("omega", no);
    sigma.add_block_map(omega, no, [&](const Matrix& h) {
      Matrix out = Matrix::Zero(dab, dab);
      for (Index a = 0; a < da; ++a)
        for (Index ap = 0; ap < da; ++ap)
          for (Index s = 0; s < ns; ++s)
            for (Index sp = 0; sp < ns; ++sp) {
              Complex v = h(a * ns + s, ap * ns + sp);
              if (v == Complex(0.0, 0.0)) continue;
              const Matrix& kb =
                  kernels[static_cast<std::size_t>(s)][static_cast<std::size_t>(sp)];
              for (Index i = 0; i < db; ++i)
                for (Index ip = 0; ip < db; ++ip)
                  out(a * db + i, ap * db + ip) += v * kb(i, ip);
            }
      return out;
    });
    p.add_constraint({{omega, Matrix::Identity(no, no)}}, 1.0);
  } else {
    Index nbk = 1;
    for (Index i = 0; i < k; ++i) nbk *= db;
    Index no = da * nbk;
    if (no > kExpandedCap)
      throw std::invalid_argument("fidelity_with_k_extendible: non-Bose order exceeds the cap");
    omega = p.add_block("omega", no);
    Dims full_dims;
    full_dims.push_back(da);
    for (Index i = 0; i < k; ++i) full_dims.push_back(db);
    sigma.add_block_map(omega, no, [&](const Matrix& h) {
      return partial_trace(h, full_dims, {0, 1});
    });
    p.add_constraint({{omega, Matrix::Identity(no, no)}}, 1.0);
    for (Index g = 0; g + 1 < k; ++g) {
      std::vector<int> perm(static_cast<std::size_t>(k));
      for (Index i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = static_cast<int>(i);
      std::swap(perm[static_cast<std::size_t>(g)], perm[static_cast<std::size_t>(g + 1)]);
      Matrix v = kron(Matrix::Identity(da, da), permutation_operator(db, k, perm));
      add_equality_map_constraints(p, omega, no, [&](const Matrix& h) {
        return (v * h * v.adjoint() - h).eval();
      });
    }
  }

  sdp::add_fidelity_block(p, sdp::AffineMatrixExpr::constant(rho), sigma, "G");
  sdp::SolveOptions sopts{1e-8, 1e-7, 200, 512, false};
  sdp::SdpSolution sol = sdp::solve(p, sopts);
  if (!sol.optimal())
    throw std::runtime_error(std::string("fidelity_with_k_extendible: solver failed: ") +
                             sdp::to_string(sol.status));
  return std::clamp(sol.value, 0.0, 1.0);
}

bool is_quantum_classical(const DensityMatrix& rho_ab, double tol) {
  if (rho_ab.subsystems() != 2)
    throw std::invalid_argument("is_quantum_classical: state must be bipartite");
  Index da = rho_ab.dims()[0], db = rho_ab.dims()[1];
  const Matrix& rho = rho_ab.matrix();

  std::vector<Matrix> family;
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j) {
      Matrix blk(db, db);
      for (Index b = 0; b < db; ++b)
        for (Index bp = 0; bp < db; ++bp) blk(b, bp) = rho(i * db + b, j * db + bp);
      family.push_back(blk);
      family.push_back(blk.adjoint());
    }
  for (std::size_t u = 0; u < family.size(); ++u)
    for (std::size_t v = u + 1; v < family.size(); ++v) {
      Matrix comm = family[u] * family[v] - family[v] * family[u];
      if (comm.cwiseAbs().maxCoeff() > tol) return false;
    }
  return true;
}

}  // namespace qdiscord
