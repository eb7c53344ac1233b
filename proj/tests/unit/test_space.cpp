#include "support.hpp"
#include "wg/element.hpp"
#include "wg/error.hpp"
#include "wg/projection.hpp"
#include "wg/space.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace wg;

namespace {

// Local DoF vector of {v0, vb} given as fields on cell c.
Eigen::VectorXd local_vector(const WgSpace& s, Index c, const ScalarField& v0, const ScalarField& vb) {
  WGFunction f = WGFunction::zero(s);
  const Mesh& m = s.mesh();
  const DofMap& d = s.dofs();
  f.coeffs.segment(d.cell_offset(c), d.cell_dofs()) = project_Q0(v0, m, c, s.degree());
  for (const CellEdge& ce : m.cell(c).edges)
    f.coeffs.segment(d.edge_offset(ce.edge), d.edge_dofs()) = project_Qb(vb, m, ce.edge, s.degree());
  return f.gather(s.local_dofs(c));
}

Vec2 gradient_at(const LocalOperators& ops, const Eigen::VectorXd& local, const Vec2& p) {
  const Index m = ops.grad_dim();
  const Eigen::VectorXd g = ops.weak_gradient * local;
  const Eigen::VectorXd phi = ops.grad_basis.values(p);
  return {phi.dot(g.head(m)), phi.dot(g.tail(m))};
}

}  // namespace

TEST_CASE("dof map layout") {
  const Mesh m = build_rectangular(3);
  for (int k = 1; k <= 3; ++k) {
    const DofMap d(m, k);
    CHECK(d.cell_dofs() == CellBasis::dimension(k));
    CHECK(d.edge_dofs() == static_cast<Index>(k + 1));
    CHECK(d.total() == m.num_cells() * d.cell_dofs() + m.num_edges() * d.edge_dofs());
    CHECK(d.n_constrained() == m.num_boundary_edges() * d.edge_dofs());
    std::vector<int> hits(d.total(), 0);
    for (Index c = 0; c < m.num_cells(); ++c)
      for (Index i = 0; i < d.cell_dofs(); ++i) ++hits[d.cell_offset(c) + i];
    for (Index e = 0; e < m.num_edges(); ++e)
      for (Index i = 0; i < d.edge_dofs(); ++i) {
        const Index g = d.edge_offset(e) + i;
        ++hits[g];
        CHECK(d.constrained(g) == m.edge(e).boundary);
      }
    for (int h : hits) CHECK(h == 1);
    Index prev = 0;
    for (Index f = 0; f < d.n_free(); ++f) {
      const Index g = d.free_to_global()[f];
      CHECK(d.free_index(g) == f);
      if (f > 0) CHECK(g > prev);
      prev = g;
    }
  }
}

TEST_CASE("weak gradient examples on the unit square") {
  const WgSpace s(testing::unit_square(), 1);
  const LocalOperators& ops = s.local(0);
  const ScalarField x = [](const Vec2& p) { return p.x(); };
  const ScalarField zero = [](const Vec2&) { return 0.0; };
  const ScalarField one = [](const Vec2&) { return 1.0; };
  const Vec2 p(0.3, 0.7);

  Vec2 g = gradient_at(ops, local_vector(s, 0, x, x), p);
  CHECK(g.x() == doctest::Approx(1.0));
  CHECK(std::abs(g.y()) < 1e-13);

  g = gradient_at(ops, local_vector(s, 0, zero, one), p);
  CHECK(g.norm() < 1e-13);

  g = gradient_at(ops, local_vector(s, 0, zero, x), p);
  CHECK(g.x() == doctest::Approx(1.0));
  CHECK(std::abs(g.y()) < 1e-13);
}

TEST_CASE("element operator invariants") {
  for (const Mesh& m : {build_perturbed_quad(3, 0.3, 2), testing::hexagon()}) {
    for (int k = 1; k <= 3; ++k) {
      const WgSpace s(m, k);
      for (Index c = 0; c < m.num_cells(); ++c) {
        const LocalOperators& ops = s.local(c);
        const ScalarField cst = [](const Vec2&) { return 2.5; };
        const Eigen::VectorXd v = local_vector(s, c, cst, cst);
        CHECK((ops.weak_gradient * v).norm() < 1e-11);
        CHECK((ops.stabilizer * v).norm() < 1e-11);
        CHECK((ops.stabilizer - ops.stabilizer.transpose()).norm() == 0.0);
        const Eigen::VectorXd ev =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ops.stabilizer).eigenvalues();
        CHECK(ev.minCoeff() > -1e-12 * ev.maxCoeff());
      }
    }
  }
}

TEST_CASE("weak gradient commutes with projections") {
  std::mt19937_64 rng(42);
  for (const Mesh& m : {build_rectangular(2), build_perturbed_quad(2, 0.3, 5), testing::hexagon()}) {
    for (int k = 1; k <= 2; ++k) {
      const WgSpace s(m, k);
      for (int trial = 0; trial < 5; ++trial) {
        const testing::RandomPoly v(k + 2, rng);
        const WGFunction qv = project_Qh([&](const Vec2& p) { return v(p); }, s);
        for (Index c = 0; c < m.num_cells(); ++c) {
          const Eigen::VectorXd lhs = s.local(c).weak_gradient * qv.gather(s.local_dofs(c));
          const Eigen::VectorXd rhs =
              project_Pih([&](const Vec2& p) { return v.gradient(p); }, m, c, k);
          CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11);
        }
      }
    }
  }
}

TEST_CASE("local forms") {
  const WgSpace s(testing::unit_square(), 1);
  const LocalOperators& ops = s.local(0);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(ops.rule.size()));
  const Eigen::MatrixXd a = local_form_A(ops, ones);

  const ScalarField x = [](const Vec2& p) { return p.x(); };
  const Eigen::VectorXd vx = local_vector(s, 0, x, x);
  CHECK(vx.dot(a * vx) == doctest::Approx(1.0));

  // v = {1, 0}: the stabilizer gives perimeter / sqrt(|K|) = 4 on the unit square
  const ScalarField one = [](const Vec2&) { return 1.0; };
  const ScalarField zero = [](const Vec2&) { return 0.0; };
  const Eigen::VectorXd v10 = local_vector(s, 0, one, zero);
  CHECK(v10.dot(ops.stabilizer * v10) == doctest::Approx(4.0));

  // a_u == 0 and vanishing weak gradient both reduce D to A
  const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(ones.size());
  Eigen::MatrixX2d grad(ones.size(), 2);
  grad.setRandom();
  CHECK((local_form_D(ops, ones, zeros, grad) - a).norm() == 0.0);
  CHECK((local_form_D(ops, ones, ones, Eigen::MatrixX2d::Zero(ones.size(), 2)) - a).norm() == 0.0);
  CHECK((local_form_D(ops, ones, ones, grad) - a).norm() > 0.0);

  Eigen::VectorXd bad = ones;
  bad[2] = -0.1;
  CHECK_THROWS_AS(local_form_A(ops, bad), CoefficientError);
}

TEST_CASE("projections") {
  const Mesh sq = testing::unit_square();
  const Eigen::VectorXd q0 = project_Q0([](const Vec2& p) { return p.x(); }, sq, 0, 1);
  // x = 0.5 + 1 * (x - 0.5) / 1 in the centred basis (scale = diameter)
  const double h = sq.cell(0).diameter;
  CHECK(q0[0] == doctest::Approx(0.5));
  CHECK(q0[1] == doctest::Approx(h));
  CHECK(std::abs(q0[2]) < 1e-14);

  // t^2 on (0,0)-(1,0), with x = (t + 1) / 2 in the Legendre parameter:
  // best linear fit of x^2 is x - 1/6 = 1/3 + t / 2
  Index bottom = kNoCell;
  for (Index e = 0; e < sq.num_edges(); ++e)
    if (sq.edge(e).midpoint.y() == 0.0) bottom = e;
  REQUIRE(bottom != kNoCell);
  const Eigen::VectorXd qb = project_Qb([](const Vec2& p) { return p.x() * p.x(); }, sq, bottom, 1);
  CHECK(qb[0] == doctest::Approx(1.0 / 3.0));
  CHECK(qb[1] == doctest::Approx(0.5));

  const Mesh hex = testing::hexagon();
  const Eigen::VectorXd pi = project_Pih([](const Vec2& p) { return Vec2(p.y(), -p.x()); }, hex, 0, 2);
  const CellBasis gb = cell_basis(hex, 0, 1);
  for (const Vec2& p : {Vec2(0.1, 0.2), Vec2(-0.4, 0.3)}) {
    CHECK(gb.values(p).dot(pi.head(3)) == doctest::Approx(p.y()));
    CHECK(gb.values(p).dot(pi.tail(3)) == doctest::Approx(-p.x()));
  }
}
