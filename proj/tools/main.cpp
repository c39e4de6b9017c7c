// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return nrep::cli::run(args, std::cout, std::cerr);
}
