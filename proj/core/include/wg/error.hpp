#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid mesh input or a generated cell that is not a simple CCW polygon.
class MeshError : public Error {
public:
  using Error::Error;
};

/// A mass matrix failed to factor (degenerate cell or insufficient quadrature).
class NotSpdError : public Error {
public:
  using Error::Error;
};

/// Requested quadrature degree is above the implemented cap.
class QuadratureError : public Error {
public:
  using Error::Error;
};

/// Problem data violates a stated assumption (bounds, derivative consistency).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Nonlinear or linear solve failed.
class SolverError : public Error {
public:
  using Error::Error;
};

/// a(x, u) <= 0 at a quadrature point.
class CoefficientError : public SolverError {
public:
  CoefficientError(const std::string& what, std::size_t cell, double x, double y, double u)
      : SolverError(what), cell_(cell), x_(x), y_(y), u_(u) {}

  std::size_t cell() const noexcept { return cell_; }
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double u() const noexcept { return u_; }

private:
  std::size_t cell_;
  double x_, y_, u_;
};

/// Expression syntax error; offset is the byte position in the source text.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Expression evaluated outside its domain (negative sqrt, division by zero, ...).
class EvalError : public Error {
public:
  using Error::Error;
};

}  // namespace wg
