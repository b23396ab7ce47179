/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/serialization.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdiscord {

namespace {

void write_matrix_rows(std::ostream& os, const Matrix& m) {
  os.precision(17);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m(r, c).real() << ' ' << m(r, c).imag();
    }
    os << '\n';
  }
}

Matrix read_matrix_rows(std::istream& is, Index n) {
  Matrix m(n, n);
  for (Index r = 0; r < n; ++r) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("matrix format: unexpected end of input");
    std::istringstream row(line);
    for (Index c = 0; c < n; ++c) {
      double re, im;
      if (!(row >> re >> im))
        throw std::runtime_error("matrix format: malformed row " + std::to_string(r));
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return is;
}

}  // namespace

void write_state(std::ostream& os, const DensityMatrix& state) {
  os << "dims:";
  for (Index d : state.dims()) os << ' ' << d;
  os << '\n';
  write_matrix_rows(os, state.matrix());
}

void write_state(const std::string& path, const DensityMatrix& state) {
  auto os = open_out(path);
  write_state(os, state);
}

DensityMatrix read_state(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("matrix format: missing header");
  std::istringstream hs(header);
  std::string tag;
  hs >> tag;
  if (tag != "dims:") throw std::runtime_error("matrix format: expected `dims:` header");
  Dims dims;
  Index d;
  while (hs >> d) dims.push_back(d);
  if (dims.empty()) throw std::runtime_error("matrix format: empty dims header");
  return DensityMatrix(read_matrix_rows(is, total_dim(dims)), dims);
}

DensityMatrix read_state(const std::string& path) {
  auto is = open_in(path);
  return read_state(is);
}

void write_choi(std::ostream& os, const ChoiMatrix& choi) {
  os << "choi: " << choi.din << ' ' << choi.dout << '\n';
  write_matrix_rows(os, choi.data);
}

void write_choi(const std::string& path, const ChoiMatrix& choi) {
  auto os = open_out(path);
  write_choi(os, choi);
}

ChoiMatrix read_choi(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("matrix format: missing header");
  std::istringstream hs(header);
  std::string tag;
  Index din, dout;
  hs >> tag >> din >> dout;
  if (tag != "choi:" || !hs) throw std::runtime_error("matrix format: expected `choi: din dout`");
  return ChoiMatrix(read_matrix_rows(is, din * dout), din, dout);
}

ChoiMatrix read_choi(const std::string& path) {
  auto is = open_in(path);
  return read_choi(is);
}

}  // namespace qdiscord
