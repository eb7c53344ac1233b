#include "wg/element.hpp"

#include "wg/error.hpp"

#include <Eigen/Cholesky>

#include <sstream>

namespace wg {

LocalOperators build_local_operators(const Mesh& mesh, Index c, int k) {
  if (k < 1) throw Error("weak gradient needs k >= 1");
  const Cell& cell = mesh.cell(c);
  const auto deg = QuadratureDegrees::for_degree(k);

  LocalOperators ops{cell_basis(mesh, c, k), cell_basis(mesh, c, k - 1)};
  const Index nk = ops.basis.size();
  const Index m = ops.grad_basis.size();
  const EdgeBasis edge_basis(k);
  const Index ne = edge_basis.size();
  ops.n_local = nk + cell.edges.size() * ne;

  ops.rule = cell_quadrature(mesh, c, deg.cell);
  const Index nq = ops.rule.size();
  ops.basis_at_qp.resize(nq, nk);
  ops.grad_basis_at_qp.resize(nq, m);
  for (Index q = 0; q < nq; ++q) {
    ops.basis_at_qp.row(q) = ops.basis.values(ops.rule.points[q]).transpose();
    ops.grad_basis_at_qp.row(q) = ops.grad_basis.values(ops.rule.points[q]).transpose();
  }
  ops.grad_mass = mass_matrix(ops.grad_basis, ops.rule);

  // Right side of (grad_w v, phi)_K = -(v0, div phi)_K + <vb, phi.n>_dK for
  // phi = (psi_i, 0) (rows [0, m)) and phi = (0, psi_i) (rows [m, 2m)).
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(2 * m, ops.n_local);
  for (Index q = 0; q < nq; ++q) {
    const Eigen::MatrixX2d dpsi = ops.grad_basis.gradients(ops.rule.points[q]);
    const double w = ops.rule.weights[q];
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < nk; ++j) {
        rhs(i, j) -= w * dpsi(i, 0) * ops.basis_at_qp(q, j);
        rhs(m + i, j) -= w * dpsi(i, 1) * ops.basis_at_qp(q, j);
      }
  }

  ops.stabilizer = Eigen::MatrixXd::Zero(ops.n_local, ops.n_local);
  const double inv_h = 1.0 / cell.size;
  for (Index l = 0; l < cell.edges.size(); ++l) {
    const CellEdge& ce = cell.edges[l];
    const QuadRule er = edge_quadrature(mesh, ce.edge, deg.edge);
    const Index col = nk + l * ne;
    Eigen::VectorXd r = Eigen::VectorXd::Zero(ops.n_local);
    for (Index q = 0; q < er.size(); ++q) {
      const Eigen::VectorXd psi = ops.grad_basis.values(er.points[q]);
      const Eigen::VectorXd lb = edge_basis.values(er.params[q]);
      const double w = er.weights[q];
      for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < ne; ++j) {
          rhs(i, col + j) += w * psi[i] * ce.normal.x() * lb[j];
          rhs(m + i, col + j) += w * psi[i] * ce.normal.y() * lb[j];
        }
      r.setZero();
      r.head(nk) = ops.basis.values(er.points[q]);
      r.segment(col, ne) = -lb;
      ops.stabilizer.noalias() += (w * inv_h) * r * r.transpose();
    }
  }
  ops.stabilizer = 0.5 * (ops.stabilizer + ops.stabilizer.transpose()).eval();

  const Eigen::LLT<Eigen::MatrixXd> llt(ops.grad_mass);
  ops.weak_gradient.resize(2 * m, ops.n_local);
  ops.weak_gradient.topRows(m) = llt.solve(rhs.topRows(m));
  ops.weak_gradient.bottomRows(m) = llt.solve(rhs.bottomRows(m));
  return ops;
}

Eigen::MatrixX2d LocalOperators::weak_gradient_at_qp(const Eigen::VectorXd& local) const {
  const Index m = grad_dim();
  const Eigen::VectorXd g = weak_gradient * local;
  Eigen::MatrixX2d out(rule.size(), 2);
  out.col(0) = grad_basis_at_qp * g.head(m);
  out.col(1) = grad_basis_at_qp * g.tail(m);
  return out;
}

Eigen::VectorXd LocalOperators::interior_at_qp(const Eigen::VectorXd& local) const {
  return basis_at_qp * local.head(basis.size());
}

Eigen::MatrixXd weighted_vector_mass(const LocalOperators& ops, const Eigen::VectorXd& weights) {
  const Index m = ops.grad_dim();
  Eigen::VectorXd wq(ops.rule.size());
  for (Index q = 0; q < ops.rule.size(); ++q) wq[q] = ops.rule.weights[q] * weights[q];
  const Eigen::MatrixXd block =
      ops.grad_basis_at_qp.transpose() * wq.asDiagonal() * ops.grad_basis_at_qp;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  out.topLeftCorner(m, m) = block;
  out.bottomRightCorner(m, m) = block;
  return out;
}

Eigen::MatrixXd local_form_A(const LocalOperators& ops, const Eigen::VectorXd& a_values) {
  for (Index q = 0; q < ops.rule.size(); ++q) {
    if (a_values[q] > 0.0) continue;
    const Vec2& p = ops.rule.points[q];
    throw CoefficientError("non-positive coefficient sample", kNoCell, p.x(), p.y(), 0.0);
  }
  const Eigen::MatrixXd& g = ops.weak_gradient;
  Eigen::MatrixXd out = g.transpose() * weighted_vector_mass(ops, a_values) * g;
  out = 0.5 * (out + out.transpose()).eval();
  out += ops.stabilizer;
  return out;
}

Eigen::MatrixXd local_form_D(const LocalOperators& ops, const Eigen::VectorXd& a_values,
                             const Eigen::VectorXd& au_values, const Eigen::MatrixX2d& grad_w) {
  Eigen::MatrixXd out = local_form_A(ops, a_values);
  const Index m = ops.grad_dim();
  const Index nk = ops.basis.size();
  const Index nq = ops.rule.size();
  // Test-side weak gradients at the rule points, contracted with grad w.
  const Eigen::MatrixXd gx = ops.grad_basis_at_qp * ops.weak_gradient.topRows(m);
  const Eigen::MatrixXd gy = ops.grad_basis_at_qp * ops.weak_gradient.bottomRows(m);
  Eigen::VectorXd s(nq);
  for (Index q = 0; q < nq; ++q) s[q] = ops.rule.weights[q] * au_values[q];
  const Eigen::MatrixXd contracted =
      (grad_w.col(0).asDiagonal() * gx + grad_w.col(1).asDiagonal() * gy);  // nq x n_local
  out.leftCols(nk).noalias() += contracted.transpose() * s.asDiagonal() * ops.basis_at_qp;
  return out;
}

void require_positive(const LocalOperators& ops, Index cell, const Eigen::VectorXd& a_values,
                      const Eigen::VectorXd& u_values) {
  for (Index q = 0; q < ops.rule.size(); ++q) {
    if (a_values[q] > 0.0) continue;
    const Vec2& p = ops.rule.points[q];
    std::ostringstream msg;
    msg << "coefficient a = " << a_values[q] << " is not positive in cell " << cell << " at ("
        << p.x() << ", " << p.y() << ") with u = " << u_values[q];
    throw CoefficientError(msg.str(), cell, p.x(), p.y(), u_values[q]);
  }
}

}  // namespace wg
