// Copyright romgrid authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include "romgrid/cli.hpp"

int main(int argc, char **argv)
{
  return romgrid::RunCli(argc, argv, std::cout, std::cerr);
}
