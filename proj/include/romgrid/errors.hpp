// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_ERRORS_HPP
#define ROMGRID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace romgrid
{

// Base of every error thrown by the library. The CLI maps any of these to a nonzero exit.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// A pivot fell below dim * eps * max|A| during LU factorization.
class SingularMatrixError : public Error
{
public:
  using Error::Error;
};

// The full-order operator Q is singular at a sample point (resonance).
class SingularAtSampleError : public SingularMatrixError
{
public:
  using SingularMatrixError::SingularMatrixError;
};

// A projected r x r operator is singular at a sample point.
class SingularReducedSystemError : public SingularMatrixError
{
public:
  using SingularMatrixError::SingularMatrixError;
};

class DimensionMismatchError : public Error
{
public:
  using Error::Error;
};

class MissingParameterError : public Error
{
public:
  using Error::Error;
};

class ZeroToNegativePowerError : public Error
{
public:
  using Error::Error;
};

class MissingWorkspaceRomError : public Error
{
public:
  using Error::Error;
};

class InvalidConfigError : public Error
{
public:
  using Error::Error;
};

class AllSamplesSingularError : public Error
{
public:
  using Error::Error;
};

class UnknownParameterError : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

class ParseError : public Error
{
public:
  ParseError(const std::string &file, long line, const std::string &what)
    : Error(file + ":" + std::to_string(line) + ": " + what), file_(file), line_(line)
  {
  }

  const std::string &File() const { return file_; }
  long Line() const { return line_; }

private:
  std::string file_;
  long line_;
};

}  // namespace romgrid

#endif  // ROMGRID_ERRORS_HPP
