#include "wg/system.hpp"

#include "wg/element.hpp"
#include "wg/error.hpp"
#include "wg/projection.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cstdio>

namespace wg {

SparseMatrix TripletAssembler::build() {
  std::stable_sort(triplets_.begin(), triplets_.end(), [](const auto& l, const auto& r) {
    return l.row() != r.row() ? l.row() < r.row() : l.col() < r.col();
  });
  SparseMatrix m(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  m.setFromTriplets(triplets_.begin(), triplets_.end());
  m.makeCompressed();
  return m;
}

WGFunction apply_dirichlet(const ProblemSpec& problem, const WgSpace& space) {
  WGFunction lift = WGFunction::zero(space);
  const Mesh& mesh = space.mesh();
  const DofMap& dofs = space.dofs();
  for (Index e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.edge(e).boundary) continue;
    lift.coeffs.segment(dofs.edge_offset(e), dofs.edge_dofs()) =
        project_Qb(problem.g, mesh, e, space.degree());
  }
  return lift;
}

Eigen::VectorXd free_part(const WGFunction& u) {
  const auto map = u.dofs->free_to_global();
  Eigen::VectorXd out(static_cast<Eigen::Index>(map.size()));
  for (Index i = 0; i < map.size(); ++i) out[i] = u.coeffs[map[i]];
  return out;
}

void add_free(WGFunction& u, const Eigen::VectorXd& free_values) {
  const auto map = u.dofs->free_to_global();
  for (Index i = 0; i < map.size(); ++i) u.coeffs[map[i]] += free_values[i];
}

namespace {

struct CellSamples {
  Eigen::VectorXd u0;
  Eigen::VectorXd a;
};

CellSamples sample_coefficient(const ProblemSpec& problem, const LocalOperators& ops, Index c,
                               Eigen::VectorXd u0) {
  CellSamples s{std::move(u0), Eigen::VectorXd(ops.rule.size())};
  for (Index q = 0; q < ops.rule.size(); ++q) s.a[q] = problem.a(ops.rule.points[q], s.u0[q]);
  require_positive(ops, c, s.a, s.u0);
  return s;
}

Eigen::VectorXd local_load(const ProblemSpec& problem, const LocalOperators& ops) {
  Eigen::VectorXd wf(ops.rule.size());
  for (Index q = 0; q < ops.rule.size(); ++q)
    wf[q] = ops.rule.weights[q] * problem.f(ops.rule.points[q]);
  return ops.basis_at_qp.transpose() * wf;
}

}  // namespace

Eigen::VectorXd assemble_residual(const WGFunction& u, const ProblemSpec& problem,
                                  const WgSpace& space) {
  const DofMap& dofs = space.dofs();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.n_free()));
  for (Index c = 0; c < space.mesh().num_cells(); ++c) {
    const LocalOperators& ops = space.local(c);
    const auto ldofs = space.local_dofs(c);
    const Eigen::VectorXd ul = u.gather(ldofs);
    const CellSamples s = sample_coefficient(problem, ops, c, ops.interior_at_qp(ul));
    Eigen::VectorXd rl = local_form_A(ops, s.a) * ul;
    rl.head(ops.basis.size()) -= local_load(problem, ops);
    for (Index i = 0; i < ldofs.size(); ++i) {
      const Index row = dofs.free_index(ldofs[i]);
      if (row != kNotFree) out[row] += rl[i];
    }
  }
  return out;
}

SparseMatrix assemble_jacobian(const WGFunction& u, const ProblemSpec& problem,
                               const WgSpace& space) {
  const DofMap& dofs = space.dofs();
  TripletAssembler tri(dofs.n_free());
  for (Index c = 0; c < space.mesh().num_cells(); ++c) {
    const LocalOperators& ops = space.local(c);
    const auto ldofs = space.local_dofs(c);
    const Eigen::VectorXd ul = u.gather(ldofs);
    const CellSamples s = sample_coefficient(problem, ops, c, ops.interior_at_qp(ul));
    Eigen::VectorXd au(ops.rule.size());
    for (Index q = 0; q < ops.rule.size(); ++q) au[q] = problem.a_u(ops.rule.points[q], s.u0[q]);
    const Eigen::MatrixXd dl = local_form_D(ops, s.a, au, ops.weak_gradient_at_qp(ul));
    for (Index i = 0; i < ldofs.size(); ++i) {
      const Index row = dofs.free_index(ldofs[i]);
      if (row == kNotFree) continue;
      for (Index j = 0; j < ldofs.size(); ++j) {
        const Index col = dofs.free_index(ldofs[j]);
        if (col != kNotFree) tri.add(row, col, dl(i, j));
      }
    }
  }
  return tri.build();
}

SparseSystem assemble_frozen(const CoefficientSampler& w, const WGFunction& lift,
                             const ProblemSpec& problem, const WgSpace& space) {
  const DofMap& dofs = space.dofs();
  TripletAssembler tri(dofs.n_free());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.n_free()));
  for (Index c = 0; c < space.mesh().num_cells(); ++c) {
    const LocalOperators& ops = space.local(c);
    const auto ldofs = space.local_dofs(c);
    Eigen::VectorXd w0(ops.rule.size());
    for (Index q = 0; q < ops.rule.size(); ++q) w0[q] = w(c, ops.rule.points[q]);
    const CellSamples s = sample_coefficient(problem, ops, c, std::move(w0));
    const Eigen::MatrixXd al = local_form_A(ops, s.a);
    const Eigen::VectorXd load = local_load(problem, ops);
    for (Index i = 0; i < ldofs.size(); ++i) {
      const Index row = dofs.free_index(ldofs[i]);
      if (row == kNotFree) continue;
      if (i < ops.basis.size()) rhs[row] += load[i];
      for (Index j = 0; j < ldofs.size(); ++j) {
        const Index col = dofs.free_index(ldofs[j]);
        if (col != kNotFree)
          tri.add(row, col, al(i, j));
        else
          rhs[row] -= al(i, j) * lift.coeffs[ldofs[j]];
      }
    }
  }
  return {tri.build(), std::move(rhs)};
}

SparseSystem assemble_frozen(const WGFunction& w, const WGFunction& lift,
                             const ProblemSpec& problem, const WgSpace& space) {
  return assemble_frozen(
      [&](Index c, const Vec2& x) { return w.interior_value(space, c, x); }, lift, problem,
      space);
}

namespace {

bool exactly_symmetric(const SparseMatrix& m) {
  const SparseMatrix t = m.transpose();
  return SparseMatrix(m - t).norm() == 0.0;
}

// Normwise backward error |b - Ax| / (|A| |x| + |b|).
double backward_error(const SparseMatrix& a, double a_norm, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& b) {
  return (b - a * x).norm() / (a_norm * x.norm() + b.norm());
}

template <class Solver>
Eigen::VectorXd refine(const Solver& solver, const SparseMatrix& a, const Eigen::VectorXd& b,
                       double tol) {
  const double a_norm = a.norm();
  Eigen::VectorXd x = solver.solve(b);
  double err = backward_error(a, a_norm, x, b);
  for (int it = 0; it < 4 && err > tol; ++it) {
    const Eigen::VectorXd candidate = x + solver.solve(Eigen::VectorXd(b - a * x));
    const double next = backward_error(a, a_norm, candidate, b);
    if (!(next < err)) break;
    x = candidate;
    err = next;
  }
  if (!(err <= tol)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "linear solve backward error %.3e above tolerance %.3e", err,
                  tol);
    throw SolverError(msg);
  }
  return x;
}

}  // namespace

Eigen::VectorXd solve_linear(const SparseMatrix& matrix, const Eigen::VectorXd& rhs, double tol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != rhs.size())
    throw SolverError("linear system dimensions do not match");
  if (rhs.size() == 0) return rhs;
  if (rhs.norm() == 0.0) return Eigen::VectorXd::Zero(rhs.size());

  if (exactly_symmetric(matrix)) {
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(matrix);
    if (ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 0.0).all())
      return refine(ldlt, matrix, rhs, tol);
  }
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(matrix);
  lu.factorize(matrix);
  if (lu.info() != Eigen::Success) throw SolverError("sparse LU failed: " + lu.lastErrorMessage());
  return refine(lu, matrix, rhs, tol);
}

}  // namespace wg
