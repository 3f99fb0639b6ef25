// SPDX-License-Identifier: Apache-2.0
//
// Exception types thrown by the fdecanc library.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdecanc {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A response value was zero where phase information is required.
class DegenerateResponse : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InsufficientGrid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The BPF cascade has M_C == 0 at some frequency.
class SingularNetwork : public std::domain_error {
 public:
  SingularNetwork(const std::string& what, double freq_hz)
      : std::domain_error(what), freq_hz_(freq_hz) {}
  double freq_hz() const noexcept { return freq_hz_; }

 private:
  double freq_hz_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LatticeTooLarge : public std::invalid_argument {
 public:
  LatticeTooLarge(const std::string& what, double size)
      : std::invalid_argument(what), size_(size) {}
  double size() const noexcept { return size_; }

 private:
  double size_;
};

/// Throughput gain or fairness index has a zero denominator.
class UndefinedGain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace fdecanc
