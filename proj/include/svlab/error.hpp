#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace svlab {

/// Base class for domain failures (degenerate geometry, singular systems).
/// The CLI maps these to exit status 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public DomainError {
 public:
  using DomainError::DomainError;
};

class MeshError : public DomainError {
 public:
  using DomainError::DomainError;
};

class SolverError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public DomainError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DomainError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace svlab
