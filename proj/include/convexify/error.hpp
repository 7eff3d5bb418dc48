// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace convexify {

/// Invalid caller input: malformed polygons, mismatched sizes, bad documents.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter outside the domain of a curve or operation.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// A computation that could not reach a trustworthy answer, e.g. an LP basis
/// whose witness fails independent validation.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative correction that did not reach its tolerance within budget.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace convexify
