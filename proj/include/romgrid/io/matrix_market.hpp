// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_IO_MATRIX_MARKET_HPP
#define ROMGRID_IO_MATRIX_MARKET_HPP

#include <istream>
#include <string>
#include "romgrid/linalg.hpp"

namespace romgrid::io
{

// Reads a Matrix Market file into a dense matrix. Supports coordinate and array storage;
// real, complex, integer and pattern fields; general, symmetric, skew-symmetric and
// hermitian symmetry (the mirrored half is filled in). Duplicate coordinate entries are
// summed. Throws IoError if the file cannot be opened, ParseError with the offending line.
ComplexMatrix ReadMatrixMarket(const std::string &path);

// Same, from a stream; `name` is used in error messages.
ComplexMatrix ParseMatrixMarket(std::istream &in, const std::string &name);

// Coordinate general storage with 17 significant digits; the field is real when every
// entry has zero imaginary part. Zero entries are omitted. Throws IoError.
void WriteMatrixMarket(const std::string &path, const ComplexMatrix &M);

}  // namespace romgrid::io

#endif  // ROMGRID_IO_MATRIX_MARKET_HPP
