#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fons {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or unreadable input data. The CLI maps these to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

// Round-off or divergence inside a learner. The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Givens target (0, 0): the rotation angle is undefined.
class DegeneratePair : public NumericalError {
 public:
  DegeneratePair() : NumericalError("degenerate pair (0, 0) for Givens rotation") {}
};

// |a| <= |b| for a hyperbolic rotation, up to the breakdown tolerance.
class HyperbolicBreakdown : public NumericalError {
 public:
  HyperbolicBreakdown(double a, double b)
      : NumericalError("hyperbolic breakdown: |a| <= |b| (a=" + std::to_string(a) +
                       ", b=" + std::to_string(b) + ")"),
        a_(a),
        b_(b) {}

  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_;
  double b_;
};

// eta <= 0 in the regular ONS update: A^{-1} lost positive definiteness.
class NumericalDivergence : public NumericalError {
 public:
  explicit NumericalDivergence(double eta)
      : NumericalError("numerical divergence: eta=" + std::to_string(eta)), eta_(eta) {}

  double eta() const { return eta_; }

 private:
  double eta_;
};

// A learner error re-thrown by the harness with the step index attached.
class StepFailure : public NumericalError {
 public:
  StepFailure(std::size_t step, const std::string& what)
      : NumericalError("step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class FileNotFound : public DataError {
 public:
  explicit FileNotFound(const std::string& path)
      : DataError("file not found: " + path), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t row, const std::string& detail)
      : DataError("parse error at row " + std::to_string(row) + ": " + detail), row_(row) {}

  // 1-based line number in the source file.
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class UnsupportedFormat : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateRange : public DataError {
 public:
  DegenerateRange() : DataError("degenerate range: max == min, cannot scale") {}
};

class UnstableProcess : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace fons
