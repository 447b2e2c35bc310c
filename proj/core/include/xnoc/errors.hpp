// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xnoc {

/// Root of all errors raised by the simulator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidNodeError : public Error {
 public:
  using Error::Error;
};

class DegenerateSpanError : public Error {
 public:
  using Error::Error;
};

class InfeasibleSpanError : public Error {
 public:
  using Error::Error;
};

/// Invalid SimConfig or sub-config, detected before cycle 0.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a semantic rule (range, ordering).
class TraceValidationError : public Error {
 public:
  using Error::Error;
};

/// Reconfiguration protocol violation, e.g. two reports from one node.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant broke. Always a simulator bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Misuse of the comparison harness.
class HarnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace xnoc
