#include "wg/analysis.hpp"

#include "wg/error.hpp"
#include "wg/projection.hpp"

#include <cmath>

namespace wg {

double energy_norm(const WGFunction& v, const WgSpace& space) {
  double sum = 0.0;
  for (Index c = 0; c < space.mesh().num_cells(); ++c) {
    const LocalOperators& ops = space.local(c);
    const Eigen::VectorXd vl = v.gather(space.local_dofs(c));
    const Index m = ops.grad_dim();
    const Eigen::VectorXd g = ops.weak_gradient * vl;
    sum += g.head(m).dot(ops.grad_mass * g.head(m)) + g.tail(m).dot(ops.grad_mass * g.tail(m));
    sum += vl.dot(ops.stabilizer * vl);
  }
  return std::sqrt(std::max(sum, 0.0));
}

double h1_like_error(const ScalarField& u_exact, const VectorField& grad_u_exact,
                     const WGFunction& u_h, const WgSpace& space) {
  const Mesh& mesh = space.mesh();
  const DofMap& dofs = space.dofs();
  const int k = space.degree();
  const int degree = QuadratureDegrees::for_degree(k).error;
  const EdgeBasis edge_basis(k);
  (void)u_exact;  // the trace of u cancels in u0 - ub
  double sum = 0.0;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const Cell& cell = mesh.cell(c);
    const CellBasis& basis = space.local(c).basis;
    const Eigen::VectorXd u0 = u_h.coeffs.segment(dofs.cell_offset(c), basis.size());
    const QuadRule rule = cell_quadrature(mesh, c, degree);
    for (Index q = 0; q < rule.size(); ++q) {
      const Vec2 grad_h = basis.gradients(rule.points[q]).transpose() * u0;
      sum += rule.weights[q] * (grad_u_exact(rule.points[q]) - grad_h).squaredNorm();
    }
    double boundary = 0.0;
    for (const CellEdge& ce : cell.edges) {
      const QuadRule er = edge_quadrature(mesh, ce.edge, degree);
      const Eigen::VectorXd ub = u_h.coeffs.segment(dofs.edge_offset(ce.edge), dofs.edge_dofs());
      for (Index q = 0; q < er.size(); ++q) {
        const double d = basis.values(er.points[q]).dot(u0) - edge_basis.values(er.params[q]).dot(ub);
        boundary += er.weights[q] * d * d;
      }
    }
    sum += boundary / cell.size;
  }
  return std::sqrt(sum);
}

double discrete_error(const ScalarField& u_exact, const WGFunction& u_h, const WgSpace& space) {
  WGFunction diff = project_Qh(u_exact, space);
  diff.coeffs -= u_h.coeffs;
  return energy_norm(diff, space);
}

double l2_error(const ScalarField& u_exact, const WGFunction& u_h, const WgSpace& space) {
  const Mesh& mesh = space.mesh();
  const DofMap& dofs = space.dofs();
  const int degree = QuadratureDegrees::for_degree(space.degree()).error;
  double sum = 0.0;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const CellBasis& basis = space.local(c).basis;
    const Eigen::VectorXd u0 = u_h.coeffs.segment(dofs.cell_offset(c), basis.size());
    const QuadRule rule = cell_quadrature(mesh, c, degree);
    for (Index q = 0; q < rule.size(); ++q) {
      const double d = u_exact(rule.points[q]) - basis.values(rule.points[q]).dot(u0);
      sum += rule.weights[q] * d * d;
    }
  }
  return std::sqrt(sum);
}

double fit_rate(std::span<const double> h, std::span<const double> errors) {
  if (h.size() != errors.size()) throw Error("rate fit needs as many errors as mesh sizes");
  if (h.size() < 2) throw Error("rate fit needs at least two levels");
  double sx = 0.0, sy = 0.0;
  for (Index i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(errors[i] > 0.0)) throw Error("rate fit needs positive inputs");
    sx += std::log(h[i]);
    sy += std::log(errors[i]);
  }
  const double n = static_cast<double>(h.size());
  const double mx = sx / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (Index i = 0; i < h.size(); ++i) {
    const double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(errors[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw Error("rate fit needs distinct mesh sizes");
  return sxy / sxx;
}

void measure_errors(const ProblemSpec& problem, const WGFunction& u_h, const WgSpace& space,
                    ErrorRecord& record) {
  if (!problem.has_exact()) throw Error("problem '" + problem.name + "' has no exact solution");
  record.err_h1 = discrete_error(problem.u_exact, u_h, space);
  record.err_l2 = l2_error(problem.u_exact, u_h, space);
  record.err_broken_h1 = h1_like_error(problem.u_exact, problem.grad_u_exact, u_h, space);
}

}  // namespace wg
