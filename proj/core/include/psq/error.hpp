#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace psq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exact integer computation would not fit in 64 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A requested precision or memory budget cannot be met.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line` is 1-based, 0 when not attributable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The c_theta table cannot supply a constant for some modulus at the
/// requested argument (no entry at all, or every threshold above it).
class MissingDataError : public Error {
 public:
  MissingDataError(const std::string& what, std::vector<std::uint64_t> moduli)
      : Error(what), moduli_(std::move(moduli)) {}
  const std::vector<std::uint64_t>& moduli() const noexcept { return moduli_; }

 private:
  std::vector<std::uint64_t> moduli_;
};

/// A checkpoint journal failed its integrity or compatibility checks.
class CheckpointError : public Error {
 public:
  using Error::Error;
};

}  // namespace psq
