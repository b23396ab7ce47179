/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/sdp/problem.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace qdiscord::sdp {

namespace {
constexpr double kHermTol = 1e-12;

void require_hermitian(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": must be square");
  if (hermiticity_defect(m) > kHermTol)
    throw std::invalid_argument(std::string(what) + ": must be Hermitian within 1e-12");
}
}  // namespace

int SdpProblem::add_block(const std::string& name, Index order) {
  if (order < 1) throw std::invalid_argument("sdp block: order must be >= 1");
  blocks_.push_back({name, order});
  objective_.push_back(Matrix::Zero(order, order));
  return static_cast<int>(blocks_.size()) - 1;
}

void SdpProblem::check_block(int block) const {
  if (block < 0 || block >= static_cast<int>(blocks_.size()))
    throw std::invalid_argument("sdp: block index out of range");
}

void SdpProblem::add_objective(int block, const Matrix& coeff) {
  check_block(block);
  require_hermitian(coeff, "sdp objective");
  if (coeff.rows() != blocks_[block].order)
    throw std::invalid_argument("sdp objective: order mismatch");
  objective_[block] += coeff;
}

void SdpProblem::add_constraint(std::vector<std::pair<int, Matrix>> terms, double rhs) {
  if (!std::isfinite(rhs)) throw std::invalid_argument("sdp constraint: rhs must be finite");
  for (auto& [block, coeff] : terms) {
    check_block(block);
    require_hermitian(coeff, "sdp constraint");
    if (coeff.rows() != blocks_[block].order)
      throw std::invalid_argument("sdp constraint: order mismatch");
  }
  constraints_.push_back({std::move(terms), rhs});
}

Index SdpProblem::total_order() const {
  Index n = 0;
  for (const Block& b : blocks_) n += b.order;
  return n;
}

AffineMatrixExpr AffineMatrixExpr::constant(const Matrix& value) {
  if (value.rows() != value.cols())
    throw std::invalid_argument("affine expression: constant must be square");
  AffineMatrixExpr e(value.rows());
  e.constant_ = value;
  return e;
}

void AffineMatrixExpr::add_block_map(int block, Index block_order,
                                     const std::function<Matrix(const Matrix&)>& map) {
  HermitianBasis basis(block_order);
  Term term{block, block_order, {}};
  term.images.reserve(static_cast<std::size_t>(basis.size()));
  for (Index alpha = 0; alpha < basis.size(); ++alpha) {
    Matrix img = map(basis.element(alpha));
    if (img.rows() != order_ || img.cols() != order_)
      throw std::invalid_argument("affine expression: map image has wrong order");
    term.images.push_back(hermitize(img));
  }
  terms_.push_back(std::move(term));
}

void AffineMatrixExpr::set_support(Matrix isometry) {
  if (isometry.rows() != order_)
    throw std::invalid_argument("affine expression: support isometry has wrong row count");
  if ((isometry.adjoint() * isometry - Matrix::Identity(isometry.cols(), isometry.cols()))
          .cwiseAbs()
          .maxCoeff() > 1e-10)
    throw std::invalid_argument("affine expression: support must be an isometry");
  support_ = std::move(isometry);
}

AffineMatrixExpr AffineMatrixExpr::conjugated(const Matrix& isometry) const {
  AffineMatrixExpr out(isometry.cols());
  out.constant_ = isometry.adjoint() * constant_ * isometry;
  for (const Term& t : terms_) {
    Term nt{t.block, t.block_order, {}};
    nt.images.reserve(t.images.size());
    for (const Matrix& img : t.images)
      nt.images.push_back(hermitize(isometry.adjoint() * img * isometry));
    out.terms_.push_back(std::move(nt));
  }
  return out;
}

Matrix support_isometry(const Matrix& hermitian, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(hermitian));
  RealVector ev = es.eigenvalues();
  double cut = tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  Index r = 0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cut) ++r;
  if (r == ev.size()) return Matrix();  // full support, nothing to compress
  Matrix v(hermitian.rows(), r);
  Index col = 0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cut) v.col(col++) = es.eigenvectors().col(i);
  return v;
}

Matrix AffineMatrixExpr::evaluate(const std::vector<Matrix>& block_values) const {
  Matrix out = constant_;
  for (const Term& t : terms_) {
    const Matrix& z = block_values.at(static_cast<std::size_t>(t.block));
    HermitianBasis basis(t.block_order);
    for (Index alpha = 0; alpha < basis.size(); ++alpha)
      out += basis.coordinate(z, alpha) * t.images[static_cast<std::size_t>(alpha)];
  }
  return out;
}

void pin_block_window(SdpProblem& p, int block, Index offset, const AffineMatrixExpr& expr) {
  Index n = expr.order();
  Index big = p.blocks()[static_cast<std::size_t>(block)].order;
  if (offset < 0 || offset + n > big)
    throw std::invalid_argument("pin_block_window: window out of range");

  HermitianBasis window_basis(n);
  for (Index beta = 0; beta < window_basis.size(); ++beta) {
    Matrix k = window_basis.element(beta);

    Matrix placed = Matrix::Zero(big, big);
    placed.block(offset, offset, n, n) = k;

    std::vector<std::pair<int, Matrix>> terms;
    terms.emplace_back(block, std::move(placed));
    for (const AffineMatrixExpr::Term& t : expr.terms()) {
      HermitianBasis src(t.block_order);
      Matrix d = Matrix::Zero(t.block_order, t.block_order);
      for (Index alpha = 0; alpha < src.size(); ++alpha) {
        double w = inner_real(k, t.images[static_cast<std::size_t>(alpha)]) / src.norm2(alpha);
        if (w != 0.0) d += w * src.element(alpha);
      }
      terms.emplace_back(t.block, -hermitize(d));
    }
    double rhs = inner_real(k, expr.constant_part());
    p.add_constraint(std::move(terms), rhs);
  }
}

namespace {

/// Window support: declared for expressions, computed for constants, empty
/// when no compression applies.
Matrix window_support(const AffineMatrixExpr& expr) {
  if (expr.support().size() > 0) return expr.support();
  if (expr.terms().empty()) {
    Matrix v = support_isometry(expr.constant_part());
    if (v.size() > 0 && v.cols() == 0)
      throw std::invalid_argument("fidelity block: pinned window is the zero matrix");
    return v;
  }
  return Matrix();
}

}  // namespace

int add_fidelity_block(SdpProblem& p, const AffineMatrixExpr& rho, const AffineMatrixExpr& sigma,
                       const std::string& name) {
  if (rho.order() != sigma.order())
    throw std::invalid_argument("fidelity block: rho and sigma orders differ");
  Index n = rho.order();

  Matrix v1 = window_support(rho);
  Matrix v2 = window_support(sigma);
  AffineMatrixExpr top = v1.size() > 0 ? rho.conjugated(v1) : rho;
  AffineMatrixExpr bottom = v2.size() > 0 ? sigma.conjugated(v2) : sigma;
  Index r1 = top.order(), r2 = bottom.order();

  int g = p.add_block(name, r1 + r2);

  // Objective Re Tr(X) in the original coordinates becomes
  // Re Tr(X_compressed V2^dag V1) on the compressed block.
  Matrix overlap;  // V1^dag V2
  if (v1.size() > 0 && v2.size() > 0)
    overlap = v1.adjoint() * v2;
  else if (v1.size() > 0)
    overlap = v1.adjoint();
  else if (v2.size() > 0)
    overlap = v2;
  else
    overlap = Matrix::Identity(n, n);
  Matrix c = Matrix::Zero(r1 + r2, r1 + r2);
  c.block(0, r1, r1, r2) = 0.5 * overlap;
  c.block(r1, 0, r2, r1) = 0.5 * overlap.adjoint();
  p.add_objective(g, hermitize(c));

  pin_block_window(p, g, 0, top);
  pin_block_window(p, g, r1, bottom);
  return g;
}

namespace {

RealMatrix embed_real(const Matrix& h) {
  Index n = h.rows();
  RealMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

}  // namespace

SdpProblem embed_hermitian(const SdpProblem& p) {
  SdpProblem out;
  for (std::size_t j = 0; j < p.blocks().size(); ++j) {
    const auto& b = p.blocks()[j];
    int nb = out.add_block(b.name + "_re", 2 * b.order);
    out.add_objective(nb, 0.5 * embed_real(p.objective()[j]).cast<Complex>());
  }
  for (const auto& c : p.constraints()) {
    std::vector<std::pair<int, Matrix>> terms;
    for (const auto& [block, coeff] : c.terms)
      terms.emplace_back(block, embed_real(coeff).cast<Complex>());
    out.add_constraint(std::move(terms), 2.0 * c.rhs);
  }
  return out;
}

Matrix extract_hermitian(const Matrix& embedded) {
  Index n2 = embedded.rows();
  if (n2 % 2 != 0) throw std::invalid_argument("extract_hermitian: order must be even");
  Index n = n2 / 2;
  Matrix re = 0.5 * (embedded.topLeftCorner(n, n) + embedded.bottomRightCorner(n, n));
  Matrix im = 0.5 * (embedded.bottomLeftCorner(n, n) - embedded.topRightCorner(n, n));
  return hermitize(re + Complex(0, 1) * im);
}

void write_sparse_sdp(std::ostream& os, const SdpProblem& p) {
  SdpProblem e = embed_hermitian(p);
  os.precision(17);
  os << "* block SDP, real symmetric form; maximize <C,Z> s.t. <A_i,Z>=b_i, Z psd\n";
  os << e.constraints().size() << '\n';
  os << e.blocks().size() << '\n';
  for (std::size_t j = 0; j < e.blocks().size(); ++j)
    os << e.blocks()[j].order << (j + 1 < e.blocks().size() ? ' ' : '\n');
  for (std::size_t i = 0; i < e.constraints().size(); ++i)
    os << e.constraints()[i].rhs << (i + 1 < e.constraints().size() ? ' ' : '\n');

  auto emit = [&os](Index matno, std::size_t block, const Matrix& m) {
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = r; c < m.cols(); ++c)
        if (m(r, c).real() != 0.0)
          os << matno << ' ' << block + 1 << ' ' << r + 1 << ' ' << c + 1 << ' ' << m(r, c).real()
             << '\n';
  };
  for (std::size_t j = 0; j < e.blocks().size(); ++j) emit(0, j, e.objective()[j]);
  for (std::size_t i = 0; i < e.constraints().size(); ++i)
    for (const auto& [block, coeff] : e.constraints()[i].terms)
      emit(static_cast<Index>(i) + 1, static_cast<std::size_t>(block), coeff);
}

void write_sparse_sdp(const std::string& path, const SdpProblem& p) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_sparse_sdp(os, p);
}

}  // namespace qdiscord::sdp
