/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/choi.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "qdiscord/random.hpp"

namespace qdiscord {

ChoiMatrix::ChoiMatrix(Matrix m, Index in, Index out) : data(std::move(m)), din(in), dout(out) {
  if (data.rows() != data.cols() || data.rows() != din * dout)
    throw std::invalid_argument("choi matrix: order must equal din * dout");
}

MeasurementModel::MeasurementModel(std::vector<Matrix> m, std::vector<DensityMatrix> prep)
    : povm(std::move(m)), preparations(std::move(prep)) {
  if (povm.empty() || povm.size() != preparations.size())
    throw std::invalid_argument("measurement model: one preparation per POVM element");
  Index d = povm.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& e : povm) {
    if (e.rows() != d || e.cols() != d)
      throw std::invalid_argument("measurement model: POVM elements of unequal dimension");
    if (hermiticity_defect(e) > 1e-10 || min_eigenvalue(hermitize(e)) < -1e-10)
      throw std::invalid_argument("measurement model: POVM element not PSD");
    sum += e;
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("measurement model: POVM does not resolve the identity");
  Index dout = preparations.front().order();
  for (const DensityMatrix& p : preparations) {
    if (p.order() != dout)
      throw std::invalid_argument("measurement model: preparations of unequal dimension");
  }
}

ChoiMatrix choi_of_channel(const std::function<Matrix(const Matrix&)>& apply, Index din,
                           Index dout) {
  Matrix j = Matrix::Zero(din * dout, din * dout);
  std::vector<Matrix> images(static_cast<std::size_t>(din * din));
  for (Index x = 0; x < din; ++x) {
    for (Index y = 0; y < din; ++y) {
      Matrix img = apply(unit_matrix(din, x, y));
      if (img.rows() != dout || img.cols() != dout)
        throw std::invalid_argument("choi_of_channel: map output has wrong dimension");
      images[static_cast<std::size_t>(x * din + y)] = img;
      j += kron(unit_matrix(din, x, y), img);
    }
  }

  // Linearity spot check: the action on a random matrix must match the
  // combination of basis images.
  Rng rng(0x5eed);
  Matrix r = ginibre(din, din, rng);
  Matrix expect = Matrix::Zero(dout, dout);
  for (Index x = 0; x < din; ++x)
    for (Index y = 0; y < din; ++y)
      expect += r(x, y) * images[static_cast<std::size_t>(x * din + y)];
  Matrix got = apply(r);
  double scale = 1.0 + expect.cwiseAbs().maxCoeff();
  if ((got - expect).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::invalid_argument("choi_of_channel: map is not linear on the matrix basis");

  return ChoiMatrix(std::move(j), din, dout);
}

Matrix apply_choi_raw(const ChoiMatrix& w, const Matrix& m, const Dims& dims, int acting_on) {
  if (acting_on < 0 || acting_on >= static_cast<int>(dims.size()))
    throw std::invalid_argument("apply_choi: subsystem index out of range");
  if (dims[acting_on] != w.din)
    throw std::invalid_argument("apply_choi: subsystem dimension does not match Choi input");
  if (total_dim(dims) != m.rows() || m.rows() != m.cols())
    throw std::invalid_argument("apply_choi: dims do not match matrix order");

  Dims odims = dims;
  odims[acting_on] = w.dout;
  MultiIndex in_ix(dims), out_ix(odims);
  Matrix out = Matrix::Zero(total_dim(odims), total_dim(odims));
  std::vector<Index> r(dims.size()), c(dims.size()), rr(dims.size()), cc(dims.size());
  for (Index row = 0; row < out.rows(); ++row) {
    out_ix.decompose(row, r);
    for (Index col = 0; col < out.cols(); ++col) {
      out_ix.decompose(col, c);
      Index o = r[acting_on], op = c[acting_on];
      Complex acc = 0.0;
      rr = r;
      cc = c;
      for (Index x = 0; x < w.din; ++x) {
        rr[acting_on] = x;
        Index mrow = in_ix.compose(rr);
        for (Index y = 0; y < w.din; ++y) {
          cc[acting_on] = y;
          acc += w.data(x * w.dout + o, y * w.dout + op) * m(mrow, in_ix.compose(cc));
        }
      }
      out(row, col) = acc;
    }
  }
  return out;
}

DensityMatrix apply_choi(const ChoiMatrix& w, const DensityMatrix& rho, int acting_on) {
  ChannelFlags flags = is_channel(w);
  Matrix out = hermitize(apply_choi_raw(w, rho.matrix(), rho.dims(), acting_on));
  Dims odims = rho.dims();
  odims[acting_on] = w.dout;
  if (!flags.tp) {
    std::cerr << "apply_choi: warning: Choi operator is not trace preserving"
              << " (output trace " << out.trace().real() << ")\n";
    return DensityMatrix::unchecked(std::move(out), std::move(odims));
  }
  return DensityMatrix(std::move(out), std::move(odims));
}

ChannelFlags is_channel(const ChoiMatrix& w) {
  ChannelFlags flags;
  flags.cp = hermiticity_defect(w.data) <= 1e-9 &&
             min_eigenvalue(hermitize(w.data)) >= -1e-9;
  Matrix marginal = partial_trace(w.data, {w.din, w.dout}, {0});
  flags.tp = (marginal - Matrix::Identity(w.din, w.din)).cwiseAbs().maxCoeff() <= 1e-9;
  return flags;
}

bool is_ppt_choi(const ChoiMatrix& w) {
  Matrix pt = partial_transpose(w.data, {w.din, w.dout}, {0});
  return min_eigenvalue(hermitize(pt)) >= -1e-9;
}

EbVerdict eb_verdict(const ChoiMatrix& w) {
  if (!is_ppt_choi(w)) return EbVerdict::not_eb;
  return (w.din * w.dout <= 6) ? EbVerdict::certified : EbVerdict::ppt_candidate;
}

ChoiMatrix eb_channel(const MeasurementModel& m) {
  Index din = m.input_dim(), dout = m.output_dim();
  for (const DensityMatrix& p : m.preparations) {
    double purity = (p.matrix() * p.matrix()).trace().real();
    if (purity < 1.0 - 1e-8)
      throw std::invalid_argument("eb_channel: preparations must be pure");
  }
  Matrix j = Matrix::Zero(din * dout, din * dout);
  for (std::size_t y = 0; y < m.povm.size(); ++y)
    j += kron(m.povm[y].transpose().eval(), m.preparations[y].matrix());
  return ChoiMatrix(hermitize(j), din, dout);
}

ChoiMatrix unitary_channel(const Matrix& u) {
  Index d = u.rows();
  Matrix j = Matrix::Zero(d * d, d * d);
  for (Index x = 0; x < d; ++x)
    for (Index y = 0; y < d; ++y)
      j += kron(unit_matrix(d, x, y), (u.col(x) * u.col(y).adjoint()).eval());
  return ChoiMatrix(std::move(j), d, d);
}

ChoiMatrix depolarizing_channel(Index din, Index dout) {
  Matrix j = kron(Matrix::Identity(din, din),
                  Matrix::Identity(dout, dout) / static_cast<double>(dout));
  return ChoiMatrix(std::move(j), din, dout);
}

}  // namespace qdiscord
