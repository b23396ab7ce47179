/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/linalg.hpp"

#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace qdiscord {

Index total_dim(const Dims& dims) {
  Index n = 1;
  for (Index d : dims) {
    if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
    n *= d;
  }
  return n;
}

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b); }

Matrix kron_all(const std::vector<Matrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("kron_all: empty factor list");
  Matrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

double inner_real(const Matrix& a, const Matrix& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation failed");
  return es.eigenvalues();
}

double min_eigenvalue(const Matrix& hermitian) {
  return hermitian_eigenvalues(hermitian).minCoeff();
}

Matrix hermitian_sqrt(const Matrix& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation failed");
  RealVector ev = es.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol) throw std::domain_error("hermitian_sqrt: matrix is not positive semidefinite");
    ev(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

MultiIndex::MultiIndex(Dims d) : dims(std::move(d)), strides(dims.size()) {
  Index s = 1;
  for (std::size_t t = dims.size(); t-- > 0;) {
    strides[t] = s;
    s *= dims[t];
  }
}

void MultiIndex::decompose(Index flat, std::vector<Index>& out) const {
  out.resize(dims.size());
  for (std::size_t t = 0; t < dims.size(); ++t) {
    out[t] = flat / strides[t];
    flat -= out[t] * strides[t];
  }
}

Index MultiIndex::compose(const std::vector<Index>& sub) const {
  Index flat = 0;
  for (std::size_t t = 0; t < dims.size(); ++t) flat += sub[t] * strides[t];
  return flat;
}

namespace {

void check_dims(const Matrix& m, const Dims& dims) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (total_dim(dims) != m.rows())
    throw std::invalid_argument("subsystem dimensions do not match matrix order");
}

}  // namespace

Matrix partial_trace(const Matrix& m, const Dims& dims, const std::vector<int>& keep) {
  check_dims(m, dims);
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  std::vector<bool> kept(dims.size(), false);
  for (int t : keep) {
    if (t < 0 || t >= static_cast<int>(dims.size()))
      throw std::invalid_argument("partial_trace: subsystem index out of range");
    if (kept[t]) throw std::invalid_argument("partial_trace: duplicate subsystem index");
    kept[t] = true;
  }

  Dims kdims, tdims;
  std::vector<int> kpos, tpos;
  for (std::size_t t = 0; t < dims.size(); ++t) {
    if (kept[t]) {
      kdims.push_back(dims[t]);
      kpos.push_back(static_cast<int>(t));
    } else {
      tdims.push_back(dims[t]);
      tpos.push_back(static_cast<int>(t));
    }
  }
  MultiIndex full(dims), kix(kdims), tix(tdims.empty() ? Dims{1} : tdims);
  Index nk = total_dim(kdims);
  Index nt = tdims.empty() ? 1 : total_dim(tdims);

  Matrix out = Matrix::Zero(nk, nk);
  std::vector<Index> sub(dims.size(), 0), r(kdims.size()), c(kdims.size()), tr(tdims.size());
  for (Index row = 0; row < nk; ++row) {
    kix.decompose(row, r);
    for (Index col = 0; col < nk; ++col) {
      kix.decompose(col, c);
      Complex acc = 0.0;
      for (Index t = 0; t < nt; ++t) {
        if (!tdims.empty()) tix.decompose(t, tr);
        for (std::size_t u = 0; u < kpos.size(); ++u) sub[kpos[u]] = r[u];
        for (std::size_t u = 0; u < tpos.size(); ++u) sub[tpos[u]] = tr[u];
        Index fr = full.compose(sub);
        for (std::size_t u = 0; u < kpos.size(); ++u) sub[kpos[u]] = c[u];
        Index fc = full.compose(sub);
        acc += m(fr, fc);
      }
      out(row, col) = acc;
    }
  }
  return out;
}

Matrix partial_transpose(const Matrix& m, const Dims& dims, const std::vector<int>& subsystems) {
  check_dims(m, dims);
  std::vector<bool> flip(dims.size(), false);
  for (int t : subsystems) {
    if (t < 0 || t >= static_cast<int>(dims.size()))
      throw std::invalid_argument("partial_transpose: subsystem index out of range");
    flip[t] = true;
  }
  MultiIndex full(dims);
  Index n = m.rows();
  Matrix out(n, n);
  std::vector<Index> r(dims.size()), c(dims.size()), rr(dims.size()), cc(dims.size());
  for (Index row = 0; row < n; ++row) {
    full.decompose(row, r);
    for (Index col = 0; col < n; ++col) {
      full.decompose(col, c);
      for (std::size_t t = 0; t < dims.size(); ++t) {
        rr[t] = flip[t] ? c[t] : r[t];
        cc[t] = flip[t] ? r[t] : c[t];
      }
      out(row, col) = m(full.compose(rr), full.compose(cc));
    }
  }
  return out;
}

Matrix permute_subsystems(const Matrix& m, const Dims& dims, const std::vector<int>& order) {
  check_dims(m, dims);
  if (order.size() != dims.size())
    throw std::invalid_argument("permute_subsystems: order has wrong length");
  std::vector<bool> seen(dims.size(), false);
  Dims ndims(dims.size());
  for (std::size_t t = 0; t < order.size(); ++t) {
    int s = order[t];
    if (s < 0 || s >= static_cast<int>(dims.size()) || seen[s])
      throw std::invalid_argument("permute_subsystems: order is not a permutation");
    seen[s] = true;
    ndims[t] = dims[s];
  }
  MultiIndex full(dims), out_ix(ndims);
  Index n = m.rows();
  Matrix out(n, n);
  std::vector<Index> r(dims.size()), c(dims.size()), rr(dims.size()), cc(dims.size());
  for (Index row = 0; row < n; ++row) {
    out_ix.decompose(row, r);
    for (Index col = 0; col < n; ++col) {
      out_ix.decompose(col, c);
      for (std::size_t t = 0; t < order.size(); ++t) {
        rr[order[t]] = r[t];
        cc[order[t]] = c[t];
      }
      out(row, col) = m(full.compose(rr), full.compose(cc));
    }
  }
  return out;
}

Matrix unit_matrix(Index d, Index i, Index j) {
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

Vector basis_vector(Index d, Index i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

Matrix HermitianBasis::element(Index alpha) const {
  Index a = alpha;
  for (Index p = 0; p < n; ++p) {
    if (a == 0) return unit_matrix(n, p, p);
    --a;
    for (Index q = p + 1; q < n; ++q) {
      if (a == 0) {
        Matrix m = Matrix::Zero(n, n);
        m(p, q) = 1.0;
        m(q, p) = 1.0;
        return m;
      }
      --a;
      if (a == 0) {
        Matrix m = Matrix::Zero(n, n);
        m(p, q) = Complex(0.0, 1.0);
        m(q, p) = Complex(0.0, -1.0);
        return m;
      }
      --a;
    }
  }
  throw std::out_of_range("HermitianBasis::element: index out of range");
}

double HermitianBasis::norm2(Index alpha) const {
  Index a = alpha;
  for (Index p = 0; p < n; ++p) {
    if (a == 0) return 1.0;
    --a;
    for (Index q = p + 1; q < n; ++q) {
      if (a == 0 || a == 1) return 2.0;
      a -= 2;
    }
  }
  throw std::out_of_range("HermitianBasis::norm2: index out of range");
}

double HermitianBasis::coordinate(const Matrix& m, Index alpha) const {
  Index a = alpha;
  for (Index p = 0; p < n; ++p) {
    if (a == 0) return m(p, p).real();
    --a;
    for (Index q = p + 1; q < n; ++q) {
      if (a == 0) return m(p, q).real();
      --a;
      if (a == 0) return m(p, q).imag();
      --a;
    }
  }
  throw std::out_of_range("HermitianBasis::coordinate: index out of range");
}

}  // namespace qdiscord
