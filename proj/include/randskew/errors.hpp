#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace randskew {

/// Broad failure classes. The CLI maps each class onto a process exit code.
enum class ErrorClass { Io, Numerical, Config };

/// Base of every error raised by the library. `name()` is the stable
/// identifier printed by the CLI (e.g. "SketchTooSmall").
class Error : public std::runtime_error {
 public:
  Error(std::string name, ErrorClass cls, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)), class_(cls) {}

  const std::string& name() const noexcept { return name_; }
  ErrorClass error_class() const noexcept { return class_; }

 private:
  std::string name_;
  ErrorClass class_;
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(std::size_t pivot)
      : Error("NotPositiveDefinite", ErrorClass::Numerical,
              "matrix is not positive definite (pivot " + std::to_string(pivot) + ")"),
        pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

class NoConvergence : public Error {
 public:
  NoConvergence(std::size_t iterations, const std::string& detail)
      : Error("NoConvergence", ErrorClass::Numerical,
              "no convergence after " + std::to_string(iterations) + " iterations: " + detail),
        iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

/// Raised when a debias constructor would need m <= d_eff (or m*pi_i <= l_i).
class SketchTooSmall : public Error {
 public:
  explicit SketchTooSmall(const std::string& detail)
      : Error("SketchTooSmall", ErrorClass::Numerical, "sketch too small: " + detail) {}
};

class NumericalError : public Error {
 public:
  NumericalError(std::string name, const std::string& what)
      : Error(std::move(name), ErrorClass::Numerical, what) {}
};

class InvalidArgument : public Error {
 public:
  InvalidArgument(std::string name, const std::string& what)
      : Error(std::move(name), ErrorClass::Config, what) {}
  explicit InvalidArgument(const std::string& what) : InvalidArgument("InvalidArgument", what) {}
};

class IoError : public Error {
 public:
  IoError(std::string name, const std::string& what) : Error(std::move(name), ErrorClass::Io, what) {}
};

}  // namespace randskew
