#pragma once

#include "wg/problem.hpp"
#include "wg/space.hpp"

#include <Eigen/SparseCore>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace wg {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Matrix and right-hand side over the free DoFs.
struct SparseSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
};

/// Collects (row, col, value) triplets; duplicates are summed after a stable
/// sort by (row, col) so the result does not depend on insertion order.
class TripletAssembler {
public:
  explicit TripletAssembler(Index n) : n_(n) {}

  void add(Index row, Index col, double value) { triplets_.emplace_back(row, col, value); }
  void reserve(Index n) { triplets_.reserve(n); }
  SparseMatrix build();

private:
  Index n_;
  std::vector<Eigen::Triplet<double, Eigen::Index>> triplets_;
};

struct NewtonConfig {
  double tolerance = 1e-12;         // on |||increment|||
  int max_iterations = 50;
  double linear_tolerance = 1e-13;  // normwise backward error of each linear solve
};

struct SolveReport {
  /// Newton updates applied before the increment fell below tolerance; the
  /// final, confirming solve is not counted (a linear problem takes 1).
  int iterations = 0;
  int linear_solves = 0;
  bool converged = false;
  std::vector<double> increments;  // |||delta||| for every solve
  double final_residual = 0.0;     // Euclidean norm of the free residual
  std::map<std::string, double> seconds;
  std::vector<std::string> warnings;
};

/// Zero function except on boundary edges, which carry Q_b g.
WGFunction apply_dirichlet(const ProblemSpec& problem, const WgSpace& space);

/// Free-DoF entries of A_h(u; u, v) - (f, v0).
Eigen::VectorXd assemble_residual(const WGFunction& u, const ProblemSpec& problem,
                                  const WgSpace& space);

/// D_h(u; ., .) on free DoFs: derivative of assemble_residual.
SparseMatrix assemble_jacobian(const WGFunction& u, const ProblemSpec& problem,
                               const WgSpace& space);

/// Value of the linearization point w0 at a point x inside cell `cell`.
using CoefficientSampler = std::function<double(Index cell, const Vec2& x)>;

/// A_h(w; ., .) with a(x, w0(x)) frozen, plus rhs = (f, v0) - A_h(w; lift, v)
/// where `lift` holds the Dirichlet values. Symmetric positive definite.
SparseSystem assemble_frozen(const CoefficientSampler& w, const WGFunction& lift,
                             const ProblemSpec& problem, const WgSpace& space);
/// Same-mesh convenience: w0 taken from w's interior polynomials.
SparseSystem assemble_frozen(const WGFunction& w, const WGFunction& lift,
                             const ProblemSpec& problem, const WgSpace& space);

/// Direct solve (sparse Cholesky when the matrix is exactly symmetric, sparse
/// LU otherwise) followed by up to 4 steps of iterative refinement. Throws
/// SolverError when the matrix is singular or the backward error
/// ||b - Ax|| / (||A|| ||x|| + ||b||) exceeds tol after refinement.
Eigen::VectorXd solve_linear(const SparseMatrix& matrix, const Eigen::VectorXd& rhs,
                             double tol = 1e-13);

struct NewtonResult {
  WGFunction solution;
  SolveReport report;
};

/// Plain Newton from u = 0 (with Dirichlet values imposed):
/// D_h(u; delta, v) = -(A_h(u; u, v) - (f, v0)), stopping at |||delta||| < tol.
NewtonResult newton_solve(const ProblemSpec& problem, const WgSpace& space,
                          const NewtonConfig& config = {});

/// Free part of a global vector and the reverse scatter.
Eigen::VectorXd free_part(const WGFunction& u);
void add_free(WGFunction& u, const Eigen::VectorXd& free_values);

}  // namespace wg
