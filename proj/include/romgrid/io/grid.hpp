// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_IO_GRID_HPP
#define ROMGRID_IO_GRID_HPP

#include <string>
#include <vector>
#include "romgrid/system.hpp"

namespace romgrid::io
{

// Values of one axis. Accepted forms:
//   f:START:STOP:COUNT:log|lin   frequencies in Hz, mapped to s = 2πi f
//   START:STOP:COUNT:log|lin     real values
//   v1,v2,...                    explicit values, each real or complex ("1+2i")
// Throws InvalidConfigError.
std::vector<Complex> ParseAxis(const std::string &spec);

// Cross product of axes. Each spec is NAME=AXIS; a bare frequency axis ("f:...") names "s".
// The last axis varies fastest. Throws InvalidConfigError.
std::vector<SamplePoint> ParseGrid(const std::vector<std::string> &specs);

// START..STOP with COUNT points, logarithmically or linearly spaced.
std::vector<double> Spaced(double start, double stop, int count, bool log);

// s = 2πi f over a log-spaced frequency range.
std::vector<SamplePoint> LogFrequencyGrid(double f_start, double f_stop, int count);

}  // namespace romgrid::io

#endif  // ROMGRID_IO_GRID_HPP
