// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nrep::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,    ///< unreadable file, malformed JSON, bad arguments
  kViolation = 2,     ///< sample: a cataloged constraint failed on a random state
  kInadmissible = 3,  ///< check: spectrum violates the catalog
  kProjection = 4,    ///< project: infeasible or unbounded system
};

inline constexpr double kEqualityViolationTolerance = 1e-9;
inline constexpr double kInequalityViolationTolerance = 1e-10;
inline constexpr double kBerylliumReductionTolerance = 1e-6;
inline constexpr double kIronEdgeTolerance = 0.05;

/// Parses `args` (without the program name), runs the command and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nrep::cli
