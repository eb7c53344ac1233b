#include "support.hpp"
#include "wg/error.hpp"
#include "wg/poly.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

using namespace wg;

namespace {

double integrate(const QuadRule& r, auto&& f) {
  double s = 0.0;
  for (Index q = 0; q < r.size(); ++q) s += r.weights[q] * f(r.points[q]);
  return s;
}

}  // namespace

TEST_CASE("cell quadrature examples") {
  const std::array<Vec2, 4> square{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  const Vec2 c(0.5, 0.5);
  CHECK(integrate(cell_quadrature(square, c, 0), [](const Vec2&) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(integrate(cell_quadrature(square, c, 2),
                           [](const Vec2& p) { return p.x() * p.x(); }) -
                 1.0 / 3.0) < 1e-13);
  const std::array<Vec2, 3> tri{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  CHECK(std::abs(integrate(cell_quadrature(tri, Vec2(1.0 / 3, 1.0 / 3), 3),
                           [](const Vec2& p) { return p.x() * p.y(); }) -
                 1.0 / 24.0) < 1e-13);
  CHECK_THROWS_AS(cell_quadrature(square, c, kMaxQuadratureDegree + 1), QuadratureError);
}

TEST_CASE("cell quadrature is exact for monomials on the hexagon") {
  const Mesh h = testing::hexagon();
  for (int d = 0; d <= 12; ++d) {
    const QuadRule r = cell_quadrature(h, 0, d);
    double wsum = 0.0;
    for (double w : r.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(std::abs(wsum - h.cell(0).area) < 1e-13);
    // x^d over the hexagon, compared against a much finer rule
    const QuadRule fine = cell_quadrature(h, 0, 30);
    auto f = [d](const Vec2& p) { return std::pow(p.x() + 0.3, d) * (1.0 + p.y()); };
    const QuadRule rd = cell_quadrature(h, 0, d + 1);
    CHECK(integrate(rd, f) == doctest::Approx(integrate(fine, f)).epsilon(1e-12));
  }
}

TEST_CASE("edge quadrature examples") {
  CHECK(integrate(edge_quadrature(Vec2(0, 0), Vec2(1, 0), 1), [](const Vec2& p) { return p.x(); }) ==
        doctest::Approx(0.5));
  CHECK(integrate(edge_quadrature(Vec2(0, 0), Vec2(0, 2), 2),
                  [](const Vec2& p) { return p.y() * p.y(); }) == doctest::Approx(8.0 / 3.0));
  CHECK(integrate(edge_quadrature(Vec2(0, 0), Vec2(1, 1), 0), [](const Vec2&) { return 1.0; }) ==
        doctest::Approx(std::sqrt(2.0)));
  const QuadRule r = edge_quadrature(Vec2(0, 0), Vec2(2, 0), 5);
  for (Index q = 0; q < r.size(); ++q) CHECK(r.points[q].x() == doctest::Approx(r.params[q] + 1.0));
}

TEST_CASE("gauss legendre") {
  for (int n = 1; n <= 20; ++n) {
    const GaussLegendre& g = gauss_legendre(n);
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      s += g.weights[i];
      s2 += g.weights[i] * std::pow(g.nodes[i], 2 * n - 2);
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s2 == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
  }
}

TEST_CASE("cell basis") {
  const Mesh m = build_perturbed_quad(3, 0.3, 3);
  const CellBasis b = cell_basis(m, 4, 3);
  CHECK(b.size() == 10);
  CHECK(CellBasis::dimension(0) == 1);
  const Vec2 c = m.cell(4).centroid;
  const Eigen::VectorXd at_c = b.values(c);
  CHECK(at_c[0] == 1.0);
  for (Index i = 1; i < b.size(); ++i) CHECK(at_c[i] == 0.0);
  // graded lexicographic: 1, x, y, x^2, xy, y^2, ...
  CHECK(b.exponents()[1] == std::array<int, 2>{1, 0});
  CHECK(b.exponents()[2] == std::array<int, 2>{0, 1});
  CHECK(b.exponents()[4] == std::array<int, 2>{1, 1});
  // gradients against central differences
  const Vec2 p = c + Vec2(0.05, -0.02);
  const Eigen::MatrixX2d g = b.gradients(p);
  const double h = 1e-6;
  const Eigen::VectorXd dx = (b.values(p + Vec2(h, 0)) - b.values(p - Vec2(h, 0))) / (2 * h);
  const Eigen::VectorXd dy = (b.values(p + Vec2(0, h)) - b.values(p - Vec2(0, h))) / (2 * h);
  CHECK((g.col(0) - dx).norm() < 1e-7);
  CHECK((g.col(1) - dy).norm() < 1e-7);
}

TEST_CASE("mass matrices") {
  const Mesh sq = testing::unit_square();
  const CellBasis b0 = cell_basis(sq, 0, 0);
  const Eigen::MatrixXd m0 = mass_matrix(b0, cell_quadrature(sq, 0, 2));
  CHECK(m0.rows() == 1);
  CHECK(m0(0, 0) == doctest::Approx(1.0));

  const Eigen::MatrixXd me = mass_matrix(EdgeBasis(1), edge_quadrature(Vec2(0, 0), Vec2(2, 0), 4));
  CHECK(me(0, 0) == doctest::Approx(2.0));
  CHECK(me(1, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(std::abs(me(0, 1)) < 1e-15);

  // scaled monomials keep the Gram matrix well conditioned on shape-regular cells
  for (const Mesh& m : {build_rectangular(8), build_perturbed_quad(8, 0.3, 1), testing::hexagon()}) {
    for (int k = 1; k <= 3; ++k) {
      const Eigen::MatrixXd mm = mass_matrix(cell_basis(m, 0, k), cell_quadrature(m, 0, 2 * k + 2));
      const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(mm).eigenvalues();
      CHECK(ev.minCoeff() > 0.0);
      if (k <= 2) CHECK(ev.maxCoeff() / ev.minCoeff() < 1e3);
    }
  }
  CHECK_THROWS_AS(mass_matrix(cell_basis(sq, 0, 2), cell_quadrature(sq, 0, 2)), QuadratureError);
}

TEST_CASE("edge basis") {
  const EdgeBasis e(3);
  const Eigen::VectorXd v = e.values(0.5);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == doctest::Approx(0.5));
  CHECK(v[2] == doctest::Approx(0.5 * (3 * 0.25 - 1)));
  CHECK(v[3] == doctest::Approx(0.5 * (5 * 0.125 - 3 * 0.5)));
}
