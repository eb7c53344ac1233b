#include "wg/poly.hpp"

#include "wg/error.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <numbers>

namespace wg {

CellBasis::CellBasis(int degree, const Vec2& origin, double scale)
    : degree_(degree), origin_(origin), scale_(scale) {
  if (degree < 0) throw Error("negative polynomial degree");
  for (int d = 0; d <= degree; ++d)
    for (int b = 0; b <= d; ++b) exponents_.push_back({d - b, b});
}

Eigen::VectorXd CellBasis::values(const Vec2& p) const {
  const double sx = (p.x() - origin_.x()) / scale_;
  const double sy = (p.y() - origin_.y()) / scale_;
  Eigen::VectorXd px(degree_ + 1), py(degree_ + 1);
  px[0] = py[0] = 1.0;
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * sx;
    py[i] = py[i - 1] * sy;
  }
  Eigen::VectorXd out(size());
  for (Index i = 0; i < size(); ++i) out[i] = px[exponents_[i][0]] * py[exponents_[i][1]];
  return out;
}

Eigen::MatrixX2d CellBasis::gradients(const Vec2& p) const {
  const double sx = (p.x() - origin_.x()) / scale_;
  const double sy = (p.y() - origin_.y()) / scale_;
  Eigen::VectorXd px(degree_ + 1), py(degree_ + 1);
  px[0] = py[0] = 1.0;
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * sx;
    py[i] = py[i - 1] * sy;
  }
  Eigen::MatrixX2d out(size(), 2);
  for (Index i = 0; i < size(); ++i) {
    const auto [a, b] = exponents_[i];
    out(i, 0) = a > 0 ? a * px[a - 1] * py[b] / scale_ : 0.0;
    out(i, 1) = b > 0 ? b * px[a] * py[b - 1] / scale_ : 0.0;
  }
  return out;
}

double CellBasis::evaluate(std::span<const double> coeffs, const Vec2& p) const {
  const Eigen::VectorXd v = values(p);
  double s = 0.0;
  for (Index i = 0; i < size(); ++i) s += coeffs[i] * v[i];
  return s;
}

CellBasis cell_basis(const Mesh& mesh, Index c, int degree) {
  const Cell& cell = mesh.cell(c);
  return CellBasis(degree, cell.centroid, cell.diameter);
}

Eigen::VectorXd EdgeBasis::values(double t) const {
  Eigen::VectorXd out(size());
  out[0] = 1.0;
  if (degree_ >= 1) out[1] = t;
  for (int j = 2; j <= degree_; ++j)
    out[j] = ((2.0 * j - 1.0) * t * out[j - 1] - (j - 1.0) * out[j - 2]) / j;
  return out;
}

double EdgeBasis::evaluate(std::span<const double> coeffs, double t) const {
  const Eigen::VectorXd v = values(t);
  double s = 0.0;
  for (Index i = 0; i < size(); ++i) s += coeffs[i] * v[i];
  return s;
}

namespace {

GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    gl.nodes[n - 1 - i] = x;
    gl.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return gl;
}

int points_for_degree(int degree) { return degree / 2 + 1; }

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree)
    throw QuadratureError("quadrature degree " + std::to_string(degree) +
                          " outside [0, " + std::to_string(kMaxQuadratureDegree) + "]");
}

}  // namespace

const GaussLegendre& gauss_legendre(int npoints) {
  static const std::vector<GaussLegendre> table = [] {
    std::vector<GaussLegendre> t(kMaxQuadratureDegree / 2 + 3);
    for (int n = 1; n < static_cast<int>(t.size()); ++n) t[n] = compute_gauss_legendre(n);
    return t;
  }();
  if (npoints < 1 || npoints >= static_cast<int>(table.size()))
    throw QuadratureError("unsupported Gauss-Legendre size " + std::to_string(npoints));
  return table[npoints];
}

QuadRule cell_quadrature(std::span<const Vec2> polygon, const Vec2& center, int degree) {
  check_degree(degree);
  // Collapsing the unit square onto a triangle adds a linear Jacobian factor
  // in the collapsed direction.
  const GaussLegendre& gu = gauss_legendre(points_for_degree(degree + 1));
  const GaussLegendre& gv = gauss_legendre(points_for_degree(degree));

  QuadRule rule;
  rule.degree = degree;
  const Index n = polygon.size();
  rule.points.reserve(n * gu.nodes.size() * gv.nodes.size());
  rule.weights.reserve(rule.points.capacity());
  for (Index i = 0; i < n; ++i) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[(i + 1) % n];
    const Vec2 e1 = a - center;
    const Vec2 e2 = b - center;
    const double jac = e1.x() * e2.y() - e1.y() * e2.x();  // 2 * triangle area
    for (Index p = 0; p < gu.nodes.size(); ++p) {
      const double u = 0.5 * (gu.nodes[p] + 1.0);
      for (Index q = 0; q < gv.nodes.size(); ++q) {
        const double v = 0.5 * (gv.nodes[q] + 1.0);
        const double xi = u;
        const double eta = (1.0 - u) * v;
        rule.points.push_back(center + xi * e1 + eta * e2);
        rule.weights.push_back(0.25 * gu.weights[p] * gv.weights[q] * (1.0 - u) * jac);
      }
    }
  }
  return rule;
}

QuadRule cell_quadrature(const Mesh& mesh, Index c, int degree) {
  const Cell& cell = mesh.cell(c);
  std::vector<Vec2> poly;
  poly.reserve(cell.vertices.size());
  for (Index v : cell.vertices) poly.push_back(mesh.vertex(v));
  return cell_quadrature(poly, cell.centroid, degree);
}

QuadRule edge_quadrature(const Vec2& from, const Vec2& to, int degree) {
  check_degree(degree);
  const GaussLegendre& gl = gauss_legendre((degree + 2) / 2);
  const double half = 0.5 * (to - from).norm();
  QuadRule rule;
  rule.degree = degree;
  for (Index i = 0; i < gl.nodes.size(); ++i) {
    const double t = gl.nodes[i];
    rule.params.push_back(t);
    rule.points.push_back(0.5 * (1.0 - t) * from + 0.5 * (1.0 + t) * to);
    rule.weights.push_back(half * gl.weights[i]);
  }
  return rule;
}

QuadRule edge_quadrature(const Mesh& mesh, Index e, int degree) {
  const Edge& edge = mesh.edge(e);
  return edge_quadrature(mesh.vertex(edge.vertices[0]), mesh.vertex(edge.vertices[1]), degree);
}

namespace {

template <class Eval>
Eigen::MatrixXd gram(Index n, const QuadRule& rule, Eval&& eval) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Index q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd phi = eval(q);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i <= j; ++i) m(i, j) += rule.weights[q] * phi[i] * phi[j];
  }
  m.triangularView<Eigen::StrictlyLower>() = m.transpose();
  if (Eigen::LLT<Eigen::MatrixXd>(m).info() != Eigen::Success)
    throw NotSpdError("mass matrix is not symmetric positive definite");
  return m;
}

}  // namespace

Eigen::MatrixXd mass_matrix(const CellBasis& basis, const QuadRule& rule) {
  if (rule.degree < 2 * basis.degree())
    throw QuadratureError("mass matrix needs a rule exact to twice the basis degree");
  return gram(basis.size(), rule, [&](Index q) { return basis.values(rule.points[q]); });
}

Eigen::MatrixXd mass_matrix(const EdgeBasis& basis, const QuadRule& rule) {
  if (rule.degree < 2 * basis.degree())
    throw QuadratureError("mass matrix needs a rule exact to twice the basis degree");
  if (rule.params.size() != rule.size()) throw QuadratureError("edge mass matrix needs an edge rule");
  return gram(basis.size(), rule, [&](Index q) { return basis.values(rule.params[q]); });
}

}  // namespace wg
