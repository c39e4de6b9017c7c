// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace nrep {

/// Invalid call arguments: out-of-range indices, bad (n, r), mismatched shapes.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but violates an operation's precondition
/// (unnormalized state, non-Hermitian matrix, unpinned spectrum, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed external data (state / spectrum / system files).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constraint that cannot be turned into a determinant selection rule.
class UnsupportedRuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structured-state reconstruction produced contradictory amplitudes.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Projection whose image is not bounded.
class UnboundedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nrep
