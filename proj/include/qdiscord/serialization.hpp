/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QDISCORD_SERIALIZATION_HPP
#define QDISCORD_SERIALIZATION_HPP

#include <iosfwd>
#include <string>

#include "qdiscord/choi.hpp"
#include "qdiscord/density_matrix.hpp"

namespace qdiscord {

/// Plain-text matrix format: a header line `dims: d1 d2 ...`, then one line
/// per matrix row with a `re im` pair per entry, 17 significant digits.
/// Choi matrices use the header `choi: din dout`.
void write_state(std::ostream& os, const DensityMatrix& state);
void write_state(const std::string& path, const DensityMatrix& state);
DensityMatrix read_state(std::istream& is);
DensityMatrix read_state(const std::string& path);

void write_choi(std::ostream& os, const ChoiMatrix& choi);
void write_choi(const std::string& path, const ChoiMatrix& choi);
ChoiMatrix read_choi(std::istream& is);
ChoiMatrix read_choi(const std::string& path);

}  // namespace qdiscord

#endif
