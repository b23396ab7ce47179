/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_CHOI_HPP
#define QDISCORD_CHOI_HPP

#include <functional>

#include "qdiscord/density_matrix.hpp"

namespace qdiscord {

/// Choi operator of a channel on input (x) output, built from the
/// unnormalized maximally entangled vector sum_x |x>|x>; the identity
/// channel's Choi has trace din, not 1.
struct ChoiMatrix {
  Matrix data;
  Index din = 0;
  Index dout = 0;

  ChoiMatrix() = default;
  ChoiMatrix(Matrix m, Index in, Index out);
};

struct ChannelFlags {
  bool cp = false;
  bool tp = false;
};

enum class EbVerdict {
  certified,       // PPT and din*dout <= 6, where PPT is equivalent to separable
  ppt_candidate,   // PPT but dimensions too large to certify separability
  not_eb,          // not PPT, hence not entanglement breaking
};

/// POVM on the input together with the states prepared per outcome.
struct MeasurementModel {
  std::vector<Matrix> povm;
  std::vector<DensityMatrix> preparations;

  MeasurementModel(std::vector<Matrix> m, std::vector<DensityMatrix> prep);
  Index input_dim() const { return povm.front().rows(); }
  Index output_dim() const { return preparations.front().order(); }
};

/// Choi operator of a linear map given as a function on din x din matrices.
/// Linearity is spot-checked against the reconstructed action; a mismatch
/// beyond 1e-8 is a contract error.
ChoiMatrix choi_of_channel(const std::function<Matrix(const Matrix&)>& apply, Index din,
                           Index dout);

/// Action of the channel on one subsystem of a multipartite matrix:
/// out[(..o..),(..o'..)] = sum_{x,y} w[(x,o),(y,o')] m[(..x..),(..y..)].
Matrix apply_choi_raw(const ChoiMatrix& w, const Matrix& m, const Dims& dims, int acting_on);

/// Same, on a state; warns on stderr if the Choi is not trace preserving and
/// then skips the unit-trace check on the output.
DensityMatrix apply_choi(const ChoiMatrix& w, const DensityMatrix& rho, int acting_on);

/// CP iff data >= -1e-9; TP iff Tr_out(data) = I within 1e-9.
ChannelFlags is_channel(const ChoiMatrix& w);

/// Positivity under partial transposition of the input factor, tol 1e-9.
bool is_ppt_choi(const ChoiMatrix& w);

EbVerdict eb_verdict(const ChoiMatrix& w);

/// Measure-and-prepare channel sum_y Tr(M_y .) |beta_y><beta_y|; requires
/// pure preparations so the k-fold symmetric broadcast of each outcome exists.
ChoiMatrix eb_channel(const MeasurementModel& m);

/// Choi of the channel rho -> U rho U^dag.
ChoiMatrix unitary_channel(const Matrix& u);

/// Choi of the completely depolarizing channel to dimension dout.
ChoiMatrix depolarizing_channel(Index din, Index dout);

}  // namespace qdiscord

#endif
