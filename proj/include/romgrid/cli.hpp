// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROMGRID_CLI_HPP
#define ROMGRID_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace romgrid
{

// Subcommands: reduce, validate, compare, demo. Returns the process exit code; any library
// error is reported on `err` with a nonzero code.
int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

// Convenience overload; args excludes the program name.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace romgrid

#endif  // ROMGRID_CLI_HPP
