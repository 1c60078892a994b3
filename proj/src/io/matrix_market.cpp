// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "romgrid/io/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>
#include "romgrid/errors.hpp"

namespace romgrid::io
{

namespace
{

std::string Lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool IsBlank(const std::string &line)
{
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

enum class Field
{
  Real,
  Complex,
  Integer,
  Pattern
};

enum class Symmetry
{
  General,
  Symmetric,
  SkewSymmetric,
  Hermitian
};

}  // namespace

ComplexMatrix ReadMatrixMarket(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot open Matrix Market file '" + path + "'");
  }
  return ParseMatrixMarket(in, path);
}

ComplexMatrix ParseMatrixMarket(std::istream &in, const std::string &name)
{
  long lineno = 0;
  std::string line;
  const auto fail = [&](const std::string &what) { throw ParseError(name, lineno, what); };

  if (!std::getline(in, line))
  {
    fail("empty file");
  }
  lineno++;
  std::istringstream header(line);
  std::string banner, object, format, field_s, symmetry_s;
  header >> banner >> object >> format >> field_s >> symmetry_s;
  if (banner != "%%MatrixMarket")
  {
    fail("missing %%MatrixMarket banner");
  }
  if (Lower(object) != "matrix")
  {
    fail("unsupported object '" + object + "'");
  }
  format = Lower(format);
  if (format != "coordinate" && format != "array")
  {
    fail("unsupported format '" + format + "'");
  }
  Field field;
  field_s = Lower(field_s);
  if (field_s == "real" || field_s == "double")
  {
    field = Field::Real;
  }
  else if (field_s == "complex")
  {
    field = Field::Complex;
  }
  else if (field_s == "integer")
  {
    field = Field::Integer;
  }
  else if (field_s == "pattern")
  {
    field = Field::Pattern;
  }
  else
  {
    fail("unsupported field '" + field_s + "'");
  }
  Symmetry sym;
  symmetry_s = Lower(symmetry_s);
  if (symmetry_s == "general")
  {
    sym = Symmetry::General;
  }
  else if (symmetry_s == "symmetric")
  {
    sym = Symmetry::Symmetric;
  }
  else if (symmetry_s == "skew-symmetric")
  {
    sym = Symmetry::SkewSymmetric;
  }
  else if (symmetry_s == "hermitian")
  {
    sym = Symmetry::Hermitian;
  }
  else
  {
    fail("unsupported symmetry '" + symmetry_s + "'");
  }
  const bool coordinate = format == "coordinate";
  if (!coordinate && field == Field::Pattern)
  {
    fail("array format cannot have pattern field");
  }
  if (sym == Symmetry::Hermitian && field != Field::Complex)
  {
    fail("hermitian symmetry requires a complex field");
  }

  // Skip comments to the size line.
  const auto next_data_line = [&]() -> bool
  {
    while (std::getline(in, line))
    {
      lineno++;
      if (!line.empty() && line[0] == '%')
      {
        continue;
      }
      if (IsBlank(line))
      {
        continue;
      }
      return true;
    }
    return false;
  };

  if (!next_data_line())
  {
    fail("missing size line");
  }
  long rows = -1, cols = -1, nnz = -1;
  {
    std::istringstream ss(line);
    if (coordinate)
    {
      if (!(ss >> rows >> cols >> nnz))
      {
        fail("malformed size line");
      }
    }
    else if (!(ss >> rows >> cols))
    {
      fail("malformed size line");
    }
  }
  if (rows < 0 || cols < 0 || (coordinate && nnz < 0))
  {
    fail("negative dimensions");
  }
  if (sym != Symmetry::General && rows != cols)
  {
    fail("symmetric storage requires a square matrix");
  }

  ComplexMatrix M = ComplexMatrix::Zero(rows, cols);
  const auto read_value = [&](std::istringstream &ss) -> Complex
  {
    double re = 1.0, im = 0.0;
    switch (field)
    {
      case Field::Pattern:
        return 1.0;
      case Field::Complex:
        if (!(ss >> re >> im))
        {
          fail("expected real and imaginary parts");
        }
        return {re, im};
      case Field::Real:
      case Field::Integer:
        if (!(ss >> re))
        {
          fail("expected a numeric value");
        }
        return re;
    }
    return 0.0;
  };
  const auto mirror = [&](long i, long j, Complex v)
  {
    if (i == j)
    {
      return;
    }
    switch (sym)
    {
      case Symmetry::General:
        break;
      case Symmetry::Symmetric:
        M(j, i) += v;
        break;
      case Symmetry::SkewSymmetric:
        M(j, i) -= v;
        break;
      case Symmetry::Hermitian:
        M(j, i) += std::conj(v);
        break;
    }
  };

  if (coordinate)
  {
    for (long k = 0; k < nnz; k++)
    {
      if (!next_data_line())
      {
        fail("expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
      }
      std::istringstream ss(line);
      long i = 0, j = 0;
      if (!(ss >> i >> j))
      {
        fail("malformed entry");
      }
      if (i < 1 || i > rows || j < 1 || j > cols)
      {
        fail("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
      }
      if (sym != Symmetry::General && i < j)
      {
        fail("symmetric storage expects lower-triangular entries");
      }
      if (sym == Symmetry::SkewSymmetric && i == j)
      {
        fail("skew-symmetric storage has no diagonal entries");
      }
      const Complex v = read_value(ss);
      M(i - 1, j - 1) += v;
      mirror(i - 1, j - 1, v);
    }
  }
  else
  {
    // Column-major; symmetric variants list only the lower triangle.
    for (long j = 0; j < cols; j++)
    {
      const long i0 = sym == Symmetry::General ? 0 : (sym == Symmetry::SkewSymmetric ? j + 1 : j);
      for (long i = i0; i < rows; i++)
      {
        if (!next_data_line())
        {
          fail("array data ended early");
        }
        std::istringstream ss(line);
        const Complex v = read_value(ss);
        M(i, j) = v;
        mirror(i, j, v);
      }
    }
  }
  return M;
}

void WriteMatrixMarket(const std::string &path, const ComplexMatrix &M)
{
  std::ofstream out(path);
  if (!out)
  {
    throw IoError("cannot write Matrix Market file '" + path + "'");
  }
  const bool complex = M.size() > 0 && M.imag().cwiseAbs().maxCoeff() > 0.0;
  long nnz = 0;
  for (Eigen::Index j = 0; j < M.cols(); j++)
  {
    for (Eigen::Index i = 0; i < M.rows(); i++)
    {
      nnz += M(i, j) != Complex(0.0) ? 1 : 0;
    }
  }
  out << "%%MatrixMarket matrix coordinate " << (complex ? "complex" : "real") << " general\n";
  out << M.rows() << " " << M.cols() << " " << nnz << "\n";
  char buf[96];
  for (Eigen::Index j = 0; j < M.cols(); j++)
  {
    for (Eigen::Index i = 0; i < M.rows(); i++)
    {
      const Complex v = M(i, j);
      if (v == Complex(0.0))
      {
        continue;
      }
      if (complex)
      {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g", v.real(), v.imag());
      }
      else
      {
        std::snprintf(buf, sizeof(buf), "%.17g", v.real());
      }
      out << i + 1 << " " << j + 1 << " " << buf << "\n";
    }
  }
  if (!out)
  {
    throw IoError("write failed for '" + path + "'");
  }
}

}  // namespace romgrid::io
