#pragma once

#include "wg/projection.hpp"

#include <array>
#include <functional>
#include <string>

namespace wg {

using CoefficientFn = std::function<double(const Vec2&, double)>;

/// -div(a(x, u) grad u) = f in (0,1)^2, u = g on the boundary.
struct ProblemSpec {
  std::string name;
  CoefficientFn a;
  CoefficientFn a_u;  // partial derivative of a in u
  ScalarField f;
  ScalarField g;
  ScalarField u_exact;       // optional (empty when unknown)
  VectorField grad_u_exact;  // optional

  /// Bounds alpha0 <= a <= alpha1 over the admissible range of u.
  double alpha0 = 1.0;
  double alpha1 = 1.0;
  std::array<double, 2> u_range{-5.0, 5.0};
  /// max{|a|, |a_u|, |a_uu|} over the admissible range.
  double m_a = 1.0;

  bool has_exact() const { return static_cast<bool>(u_exact) && static_cast<bool>(grad_u_exact); }
};

/// "ex1": a = 1 + u, u = sin(pi x) sin(pi y).
/// "ex2": a = 1 + sin(u) / 2, u = phi(x) phi(y), phi(t) = t (1 - t) e^{2t}.
ProblemSpec builtin_problem(const std::string& name);

/// Problem from a JSON config whose fields are expressions in x, y, u:
/// {"a", "a_u", "f", "g", "u_exact"?, "grad_u_exact"?: [.,.], "alpha0", "alpha1",
///  "u_range"?: [lo, hi]}.
ProblemSpec problem_from_config(const std::string& json_text);

/// Built-in name or path to a config file.
ProblemSpec load_problem(const std::string& name_or_path);

/// Samples a on a 100 x 100 grid of (0,1)^2 times 21 values of u in u_range:
/// a must lie in [alpha0, alpha1] and a_u must match central differences of
/// a to relative 1e-6. Throws ValidationError.
void validate_problem(const ProblemSpec& problem);

/// Linear diffusion (a == 1) with a polynomial exact solution of degree `degree`,
/// used for patch tests.
ProblemSpec polynomial_patch_problem(int degree);

}  // namespace wg
