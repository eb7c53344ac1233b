#pragma once

#include "wg/problem.hpp"
#include "wg/space.hpp"

#include <span>
#include <string>

namespace wg {

/// |||v|||^2 = sum_K ||grad_w v||_K^2 + h_K^{-1} ||v0 - vb||_{dK}^2, where h_K is
/// Cell::size as in the stabilizer.
double energy_norm(const WGFunction& v, const WgSpace& space);

/// ||u - u_h||_{1,h}: per cell ||grad u - grad u0||_K^2 + h_K^{-1} ||u0 - ub||_{dK}^2,
/// h_K = Cell::size.
double h1_like_error(const ScalarField& u_exact, const VectorField& grad_u_exact,
                     const WGFunction& u_h, const WgSpace& space);

/// |||Q_h u - u_h|||, the error reported in the err_h1 columns of the CSV output.
double discrete_error(const ScalarField& u_exact, const WGFunction& u_h, const WgSpace& space);

/// ||u - u0||_{L2}
double l2_error(const ScalarField& u_exact, const WGFunction& u_h, const WgSpace& space);

/// Least-squares slope of log(error) against log(h).
double fit_rate(std::span<const double> h, std::span<const double> errors);

struct ErrorRecord {
  std::string mesh;  // label such as "rect:16"
  int n = 0;
  double h = 0.0;
  double err_h1 = 0.0;         // |||Q_h u - u_h|||
  double err_l2 = 0.0;
  double err_broken_h1 = 0.0;  // ||u - u_h||_{1,h}
  int newton_iterations = 0;
  double seconds = 0.0;
};

/// Fills the error columns of a record (h, n, timing left to the caller).
void measure_errors(const ProblemSpec& problem, const WGFunction& u_h, const WgSpace& space,
                    ErrorRecord& record);

}  // namespace wg
