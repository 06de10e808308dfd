#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cga {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (bad grade index, non-unit rotor
// plane, non-positive radius, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// |m|^2 < 0: the element has no real magnitude.
class IndefiniteMagnitudeError : public Error {
 public:
  explicit IndefiniteMagnitudeError(double squared)
      : Error("indefinite magnitude: |m|^2 = " + std::to_string(squared)),
        squared_(squared) {}
  double squared() const noexcept { return squared_; }

 private:
  double squared_;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class InverseError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Coincident, collinear or coplanar inputs where distinct ones are required.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// A flat entity was passed where a round one is required, or vice versa:
// point at infinity, line instead of circle, plane instead of sphere.
class FlatnessError : public Error {
 public:
  using Error::Error;
};

// A scene construction failed; carries the node ids involved.
class ConstructionError : public Error {
 public:
  ConstructionError(const std::string& what, std::vector<int> ids)
      : Error(what), ids_(std::move(ids)) {}
  const std::vector<int>& ids() const noexcept { return ids_; }

 private:
  std::vector<int> ids_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cga
