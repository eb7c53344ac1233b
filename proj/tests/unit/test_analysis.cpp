#include "support.hpp"
#include "wg/analysis.hpp"
#include "wg/error.hpp"
#include "wg/projection.hpp"
#include "wg/system.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

using namespace wg;

TEST_CASE("energy norm examples") {
  const WgSpace s(testing::unit_square(), 1);
  CHECK(energy_norm(WGFunction::zero(s), s) == 0.0);
  const WGFunction x = project_Qh([](const Vec2& p) { return p.x(); }, s);
  CHECK(energy_norm(x, s) == doctest::Approx(1.0));
  WGFunction v = WGFunction::zero(s);
  v.coeffs[0] = 1.0;  // v0 = 1, vb = 0
  CHECK(energy_norm(v, s) == doctest::Approx(2.0));
}

TEST_CASE("errors vanish on reproduced polynomials") {
  for (int k = 1; k <= 3; ++k) {
    const WgSpace s(build_perturbed_quad(3, 0.2, 2), k);
    const ProblemSpec p = polynomial_patch_problem(k);
    const WGFunction q = project_Qh(p.u_exact, s);
    CHECK(h1_like_error(p.u_exact, p.grad_u_exact, q, s) < 1e-11);
    CHECK(l2_error(p.u_exact, q, s) < 1e-12);
    CHECK(discrete_error(p.u_exact, q, s) < 1e-11);
  }
}

TEST_CASE("norm equivalence on random functions") {
  // C1 ||v||_{1,h} <= |||v||| <= C2 ||v||_{1,h} with moderate constants
  const WgSpace s(build_perturbed_quad(4, 0.2, 5), 2);
  const ScalarField zero = [](const Vec2&) { return 0.0; };
  const VectorField zgrad = [](const Vec2&) { return Vec2(0, 0); };
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < 20; ++i) {
    WGFunction v = WGFunction::zero(s);
    v.coeffs.setRandom();
    const double ratio = energy_norm(v, s) / h1_like_error(zero, zgrad, v, s);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(lo > 0.05);
  CHECK(hi < 20.0);
}

TEST_CASE("errors on example 1") {
  const ProblemSpec p = builtin_problem("ex1");
  {
    const WgSpace s(build_rectangular(16), 1);
    const NewtonResult r = newton_solve(p, s);
    CHECK(discrete_error(p.u_exact, r.solution, s) == doctest::Approx(4.39e-1).epsilon(0.15));
  }
  {
    const WgSpace s(build_rectangular(32), 1);
    const NewtonResult r = newton_solve(p, s);
    CHECK(l2_error(p.u_exact, r.solution, s) == doctest::Approx(3.74e-3).epsilon(0.15));
  }
  {
    const ProblemSpec p2 = builtin_problem("ex2");
    const WgSpace s(build_rectangular(16), 2);
    const NewtonResult r = newton_solve(p2, s);
    CHECK(l2_error(p2.u_exact, r.solution, s) == doctest::Approx(5.07e-4).epsilon(0.15));
  }
}

TEST_CASE("rate fit") {
  const std::vector<double> h2{0.25, 0.125};
  CHECK(fit_rate(h2, std::vector<double>{1.0, 0.5}) == doctest::Approx(1.0));
  const std::vector<double> h3{0.25, 0.125, 0.0625};
  CHECK(fit_rate(h3, std::vector<double>{1.0, 0.25, 0.0625}) == doctest::Approx(2.0));
  const std::vector<double> h5{0.25, 0.125, 0.0625, 0.03125, 0.015625};
  const std::vector<double> e5{1.63, 8.66e-1, 4.39e-1, 2.20e-1, 1.10e-1};
  CHECK(fit_rate(h5, e5) == doctest::Approx(0.97).epsilon(0.01));
  CHECK_THROWS_AS(fit_rate(h2, std::vector<double>{1.0}), Error);
  CHECK_THROWS_AS(fit_rate(std::vector<double>{0.1}, std::vector<double>{1.0}), Error);
  CHECK_THROWS_AS(fit_rate(h2, std::vector<double>{1.0, 0.0}), Error);
  CHECK_THROWS_AS(fit_rate(std::vector<double>{0.1, 0.1}, std::vector<double>{1.0, 0.5}), Error);
}
