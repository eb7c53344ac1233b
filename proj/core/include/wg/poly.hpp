#pragma once

#include "wg/mesh.hpp"

#include <Eigen/Core>

#include <array>
#include <span>
#include <vector>

namespace wg {

/// Highest polynomial degree the cell and edge rules are built for.
inline constexpr int kMaxQuadratureDegree = 40;

/// Scaled monomials ((x - xc) / h)^a ((y - yc) / h)^b, a + b <= k, in graded
/// lexicographic order: 1, x, y, x^2, xy, y^2, ... The ordering is part of the
/// on-disk solution layout and must not change.
class CellBasis {
public:
  CellBasis(int degree, const Vec2& origin, double scale);

  int degree() const { return degree_; }
  Index size() const { return exponents_.size(); }
  const Vec2& origin() const { return origin_; }
  double scale() const { return scale_; }
  std::span<const std::array<int, 2>> exponents() const { return exponents_; }

  Eigen::VectorXd values(const Vec2& p) const;
  /// Row i holds the gradient of basis function i.
  Eigen::MatrixX2d gradients(const Vec2& p) const;
  double evaluate(std::span<const double> coeffs, const Vec2& p) const;

  static Index dimension(int degree) { return static_cast<Index>((degree + 1) * (degree + 2) / 2); }

private:
  int degree_;
  Vec2 origin_;
  double scale_;
  std::vector<std::array<int, 2>> exponents_;
};

/// Basis for P_degree on cell c: origin at the area centroid, scale h_K.
CellBasis cell_basis(const Mesh& mesh, Index c, int degree);

/// Legendre polynomials P_0..P_k in the parameter t in [-1, 1] running along
/// the edge's canonical direction.
class EdgeBasis {
public:
  explicit EdgeBasis(int degree) : degree_(degree) {}

  int degree() const { return degree_; }
  Index size() const { return static_cast<Index>(degree_ + 1); }
  Eigen::VectorXd values(double t) const;
  double evaluate(std::span<const double> coeffs, double t) const;

private:
  int degree_;
};

struct QuadRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  std::vector<double> params;  // edge rules only: t in [-1, 1] of each point
  int degree = 0;

  Index size() const { return weights.size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int npoints);

/// Fan triangulation of the polygon about `center`, each triangle integrated
/// with a collapsed (Duffy) Gauss-Legendre product rule exact to `degree`.
QuadRule cell_quadrature(std::span<const Vec2> polygon, const Vec2& center, int degree);
QuadRule cell_quadrature(const Mesh& mesh, Index c, int degree);

/// Gauss-Legendre with ceil((degree + 1) / 2) points; t = -1 at `from`.
QuadRule edge_quadrature(const Vec2& from, const Vec2& to, int degree);
/// Rule on a mesh edge, parameterized in its canonical direction.
QuadRule edge_quadrature(const Mesh& mesh, Index e, int degree);

/// Gram matrix of the basis under the rule. Throws NotSpdError if the
/// Cholesky factorization fails and QuadratureError if the rule is not exact
/// to 2 * degree.
Eigen::MatrixXd mass_matrix(const CellBasis& basis, const QuadRule& rule);
Eigen::MatrixXd mass_matrix(const EdgeBasis& basis, const QuadRule& rule);

}  // namespace wg
