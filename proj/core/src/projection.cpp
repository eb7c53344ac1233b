#include "wg/projection.hpp"

#include <Eigen/Cholesky>

namespace wg {

Eigen::VectorXd project_Q0(const ScalarField& f, const Mesh& mesh, Index c, int k) {
  const CellBasis basis = cell_basis(mesh, c, k);
  const QuadRule rule = cell_quadrature(mesh, c, QuadratureDegrees::for_degree(k).error);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.size());
  for (Index q = 0; q < rule.size(); ++q)
    rhs += rule.weights[q] * f(rule.points[q]) * basis.values(rule.points[q]);
  return mass_matrix(basis, rule).llt().solve(rhs);
}

Eigen::VectorXd project_Qb(const ScalarField& f, const Mesh& mesh, Index e, int k) {
  const EdgeBasis basis(k);
  const QuadRule rule = edge_quadrature(mesh, e, QuadratureDegrees::for_degree(k).error);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.size());
  for (Index q = 0; q < rule.size(); ++q)
    rhs += rule.weights[q] * f(rule.points[q]) * basis.values(rule.params[q]);
  // Legendre polynomials are orthogonal: the edge Gram matrix is diagonal.
  const Eigen::MatrixXd mass = mass_matrix(basis, rule);
  return rhs.cwiseQuotient(mass.diagonal());
}

WGFunction project_Qh(const ScalarField& f, const WgSpace& space) {
  WGFunction out = WGFunction::zero(space);
  const Mesh& mesh = space.mesh();
  const DofMap& dofs = space.dofs();
  const int k = space.degree();
  for (Index c = 0; c < mesh.num_cells(); ++c)
    out.coeffs.segment(dofs.cell_offset(c), dofs.cell_dofs()) = project_Q0(f, mesh, c, k);
  for (Index e = 0; e < mesh.num_edges(); ++e)
    out.coeffs.segment(dofs.edge_offset(e), dofs.edge_dofs()) = project_Qb(f, mesh, e, k);
  return out;
}

Eigen::VectorXd project_Pih(const VectorField& f, const Mesh& mesh, Index c, int k) {
  const CellBasis basis = cell_basis(mesh, c, k - 1);
  const QuadRule rule = cell_quadrature(mesh, c, QuadratureDegrees::for_degree(k).error);
  const Index m = basis.size();
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 2);
  for (Index q = 0; q < rule.size(); ++q) {
    const Vec2 v = f(rule.points[q]);
    const Eigen::VectorXd psi = basis.values(rule.points[q]);
    rhs.col(0) += rule.weights[q] * v.x() * psi;
    rhs.col(1) += rule.weights[q] * v.y() * psi;
  }
  const Eigen::MatrixXd sol = mass_matrix(basis, rule).llt().solve(rhs);
  Eigen::VectorXd out(2 * m);
  out.head(m) = sol.col(0);
  out.tail(m) = sol.col(1);
  return out;
}

}  // namespace wg
