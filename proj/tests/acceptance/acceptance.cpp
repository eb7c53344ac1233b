// Acceptance checks for the solver. One PASS/FAIL line per criterion; the exit
// status is non-zero if any criterion fails.

#include "support.hpp"
#include "wg/analysis.hpp"
#include "wg/drivers.hpp"
#include "wg/error.hpp"
#include "wg/projection.hpp"
#include "wg/system.hpp"
#include "wg/timer.hpp"
#include "wg/twogrid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace wg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

char buf[512];

template <class... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool within(double value, double reference, double rel) {
  return std::abs(value - reference) <= rel * std::abs(reference);
}

// 1. polynomial patch test
Outcome patch_test() {
  double worst_energy = 0.0, worst_l2 = 0.0;
  for (int k = 1; k <= 2; ++k) {
    const ProblemSpec p = polynomial_patch_problem(k);
    for (const char* spec : {"rect:4", "pquad:4:0.2:7"}) {
      const WgSpace s(mesh_from_spec(spec), k);
      const NewtonResult r = newton_solve(p, s);
      worst_energy = std::max(worst_energy, discrete_error(p.u_exact, r.solution, s));
      worst_l2 = std::max(worst_l2, l2_error(p.u_exact, r.solution, s));
    }
  }
  return {worst_energy <= 1e-9 && worst_l2 <= 1e-10,
          fmt("max |||Q_h u - u_h||| = %.2e (<= 1e-9), max L2 = %.2e (<= 1e-10)", worst_energy,
              worst_l2)};
}

// 2. weak gradient of Q_h v against Pi_h grad v
Outcome commutativity() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  const std::array<Mesh, 3> shapes{build_rectangular(1), build_perturbed_quad(2, 0.3, 7),
                                   testing::hexagon()};
  for (const Mesh& m : shapes)
    for (int k = 1; k <= 2; ++k) {
      const WgSpace s(m, k);
      for (int trial = 0; trial < 50; ++trial) {
        const testing::RandomPoly v(k + 2, rng);
        const WGFunction qv = project_Qh([&](const Vec2& p) { return v(p); }, s);
        for (Index c = 0; c < m.num_cells(); ++c) {
          const Eigen::VectorXd lhs = s.local(c).weak_gradient * qv.gather(s.local_dofs(c));
          const Eigen::VectorXd rhs =
              project_Pih([&](const Vec2& p) { return v.gradient(p); }, m, c, k);
          worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        }
      }
    }
  return {worst <= 1e-11, fmt("max coefficient discrepancy %.2e (<= 1e-11)", worst)};
}

// 3. Jacobian against directional differences of the residual
Outcome jacobian_consistency() {
  const ProblemSpec p = builtin_problem("ex1");
  const WgSpace s(build_rectangular(8), 1);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  double worst = 0.0;
  const double step = 1e-7;
  for (int state = 0; state < 5; ++state) {
    WGFunction u = project_Qh(p.u_exact, s);
    Eigen::VectorXd noise(static_cast<Eigen::Index>(s.dofs().n_free()));
    for (double& c : noise) c = dist(rng);
    add_free(u, noise);
    const SparseMatrix j = assemble_jacobian(u, p, s);
    Eigen::VectorXd dir(j.cols());
    for (double& c : dir) c = dist(rng);
    WGFunction up = u, um = u;
    add_free(up, step * dir);
    add_free(um, -step * dir);
    const Eigen::VectorXd fd = (assemble_residual(up, p, s) - assemble_residual(um, p, s)) / (2 * step);
    const Eigen::VectorXd jd = j * dir;
    worst = std::max(worst, (fd - jd).norm() / jd.norm());
  }
  return {worst <= 1e-6, fmt("max relative error %.2e over 5 states (<= 1e-6)", worst)};
}

struct Reference {
  std::vector<double> h1, l2;
};

// per-level errors against reference values and fitted rates against ranges
Outcome check_table(const ConvergenceTable& t, const Reference* ref, std::array<double, 2> h1_range,
                    std::array<double, 2> l2_range) {
  bool ok = !t.failed_n && t.rows.size() >= 2;
  double worst = 0.0;
  if (ok && ref) {
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      worst = std::max(worst, std::abs(t.rows[i].err_h1 / ref->h1[i] - 1.0));
      worst = std::max(worst, std::abs(t.rows[i].err_l2 / ref->l2[i] - 1.0));
    }
    ok = worst <= 0.15;
  }
  ok = ok && t.rate_h1 >= h1_range[0] && t.rate_h1 <= h1_range[1] && t.rate_l2 >= l2_range[0] &&
       t.rate_l2 <= l2_range[1];
  std::string d = fmt("rates %.3f in [%.2f, %.2f], %.3f in [%.2f, %.2f]", t.rate_h1, h1_range[0],
                      h1_range[1], t.rate_l2, l2_range[0], l2_range[1]);
  if (ref) d += fmt(", max per-level deviation %.1f%% (<= 15%%)", 100 * worst);
  if (t.failed_n) d += fmt(", failed at N=%d", *t.failed_n);
  return {ok, d};
}

ConvergenceTable convergence(const char* problem, int k, std::vector<int> grids,
                             GridType type = GridType::Rectangular) {
  ConvergenceOptions o;
  o.degree = k;
  o.grids = std::move(grids);
  o.grid_type = type;
  o.delta = 0.2;
  o.seed = 7;
  return run_convergence(builtin_problem(problem), o);
}

// 4. Example 1 on rectangular grids
Outcome table1() {
  const Reference k1{{1.63, 8.66e-1, 4.39e-1, 2.20e-1, 1.10e-1},
                     {2.05e-1, 5.78e-2, 1.48e-2, 3.74e-3, 9.35e-4}};
  const Reference k2{{5.31e-1, 1.39e-1, 3.58e-2, 9.09e-3}, {4.37e-2, 5.44e-3, 6.65e-4, 8.21e-5}};
  const Outcome a = check_table(convergence("ex1", 1, {4, 8, 16, 32, 64}), &k1, {0.85, 1.10},
                                {1.80, 2.10});
  const Outcome b =
      check_table(convergence("ex1", 2, {4, 8, 16, 32}), &k2, {1.8, 2.2}, {2.8, 3.2});
  return {a.pass && b.pass, "k=1: " + a.detail + "; k=2: " + b.detail};
}

// 5. Example 2 on rectangular grids
Outcome table2() {
  const Reference k1{{1.58, 8.42e-1, 4.30e-1, 2.16e-1, 1.08e-1},
                     {2.10e-1, 5.57e-2, 1.42e-2, 3.56e-3, 8.92e-4}};
  return check_table(convergence("ex2", 1, {4, 8, 16, 32, 64}), &k1, {0.85, 1.10}, {1.80, 2.15});
}

// 6. perturbed quadrilateral grids
Outcome polytopal() {
  return check_table(convergence("ex1", 1, {4, 8, 16, 32}, GridType::PerturbedQuad), nullptr,
                     {0.85, 1.15}, {1.75, 2.15});
}

TwoGridTable twogrid_table(const char* problem) {
  TwoGridOptions o;
  o.fine = {4, 16, 36, 64};
  return run_twogrid(builtin_problem(problem), o);
}

// 7. two-grid accuracy
Outcome twogrid_accuracy(const TwoGridTable& t1, const TwoGridTable& t2) {
  bool ok = true;
  std::string d;
  for (const auto& [name, t] : {std::pair{"ex1", &t1}, std::pair{"ex2", &t2}}) {
    double worst = 0.0;
    for (const TwoGridRow& r : t->rows) worst = std::max(worst, r.err_tg / r.err_wg);
    ok = ok && !t->failed_n && t->rows.size() == 4 && t->rate_tg >= 0.85 && worst <= 1.5;
    d += fmt("%s rate %.3f (>= 0.85), max ratio %.3f (<= 1.5); ", name, t->rate_tg, worst);
  }
  d.resize(d.size() - 2);
  return {ok, d};
}

// 8. two-grid efficiency at the finest level
Outcome twogrid_efficiency(const TwoGridTable& t1, const TwoGridTable& t2) {
  bool ok = true;
  std::string d;
  for (const auto& [name, t] : {std::pair{"ex1", &t1}, std::pair{"ex2", &t2}}) {
    if (t->rows.empty()) return {false, "no two-grid rows"};
    const TwoGridRow& r = t->rows.back();
    const double ratio = r.seconds_tg / r.seconds_wg;
    ok = ok && r.n_fine >= 64 && ratio <= 0.7;
    d += fmt("%s %dx%d: two-grid %.3fs vs direct %.3fs, ratio %.3f (<= 0.7); ", name, r.n_fine,
             r.n_fine, r.seconds_tg, r.seconds_wg, ratio);
  }
  d.resize(d.size() - 2);
  return {ok, d};
}

// 9. coercivity of A_h and the Garding-type bound for D_h
Outcome coercivity() {
  const ProblemSpec p = builtin_problem("ex1");
  const WgSpace s(build_rectangular(4), 1);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const Index nfree = s.dofs().n_free();
  auto random_free = [&] {
    Eigen::VectorXd v(static_cast<Eigen::Index>(nfree));
    for (double& c : v) c = dist(rng);
    return v;
  };
  auto as_function = [&](const Eigen::VectorXd& v) {
    WGFunction f = WGFunction::zero(s);
    add_free(f, v);
    return f;
  };
  const WGFunction lift = WGFunction::zero(s);
  const double bound = std::min(p.alpha0, 1.0);

  double worst_a = 1e300;
  for (int i = 0; i < 100; ++i) {
    // admissible w: values of w0 stay inside the validated range
    WGFunction w = project_Qh([&](const Vec2& x) { return 0.5 + 0.4 * std::sin(3 * x.x() + 2 * x.y() + i); }, s);
    for (double& c : w.coeffs) c += 0.05 * dist(rng);
    const SparseMatrix a = assemble_frozen(w, lift, p, s).matrix;
    const Eigen::VectorXd v = random_free();
    const double e = energy_norm(as_function(v), s);
    worst_a = std::min(worst_a, v.dot(a * v) / (e * e));
  }

  // Garding: D_h(phi; v, v) + beta ||v0||^2 > 0
  const double grad_sup = std::numbers::pi;  // sup |grad u| for ex1
  const double beta = 1.0 + p.m_a * p.m_a * grad_sup * grad_sup / (2.0 * p.alpha0);
  const WGFunction phi = project_Qh(p.u_exact, s);
  const SparseMatrix d = assemble_jacobian(phi, p, s);
  double worst_d = 1e300;
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd v = random_free();
    const WGFunction f = as_function(v);
    double mass = 0.0;
    for (Index c = 0; c < s.mesh().num_cells(); ++c) {
      const LocalOperators& ops = s.local(c);
      const Eigen::VectorXd v0 = ops.interior_at_qp(f.gather(s.local_dofs(c)));
      for (Index q = 0; q < ops.rule.size(); ++q) mass += ops.rule.weights[q] * v0[q] * v0[q];
    }
    worst_d = std::min(worst_d, v.dot(d * v) + beta * mass);
  }
  return {worst_a >= 0.99 * bound && worst_d > 0.0,
          fmt("min A_h(w;v,v)/|||v|||^2 = %.3f (>= %.3f); min D_h + beta||v0||^2 = %.3e (> 0, beta = %.2f)",
              worst_a, 0.99 * bound, worst_d, beta)};
}

// 10. Newton iteration counts
Outcome newton_behavior() {
  const WgSpace lin(build_rectangular(8), 1);
  const NewtonResult l = newton_solve(polynomial_patch_problem(1), lin);
  const WgSpace s(build_rectangular(16), 1);
  const NewtonResult r = newton_solve(builtin_problem("ex1"), s);
  const bool ok = l.report.iterations == 1 && l.report.increments.back() <= 1e-12 &&
                  r.report.converged && r.report.iterations <= 15 &&
                  r.report.increments.back() < 1e-12;
  return {ok, fmt("linear: %d iteration; ex1 16x16: %d iterations, final |||delta||| %.2e",
                  l.report.iterations, r.report.iterations, r.report.increments.back())};
}

}  // namespace

int main() {
  int failures = 0;
  auto run = [&](int id, const char* title, double limit, const std::function<Outcome()>& check) {
    const Stopwatch clock;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double t = clock.seconds();
    if (limit > 0.0 && t > limit) {
      o.pass = false;
      o.detail += fmt("; runtime %.1fs over the %.0fs limit", t, limit);
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), t);
    std::fflush(stdout);
  };

  run(1, "patch test", 5.0, patch_test);
  run(2, "weak gradient commutativity", 0.0, commutativity);
  run(3, "Jacobian consistency", 30.0, jacobian_consistency);
  run(4, "example 1 rectangular convergence", 300.0, table1);
  run(5, "example 2 rectangular convergence", 180.0, table2);
  run(6, "perturbed quadrilateral convergence", 0.0, polytopal);

  TwoGridTable t1, t2;
  run(7, "two-grid accuracy", 300.0, [&] {
    t1 = twogrid_table("ex1");
    t2 = twogrid_table("ex2");
    return twogrid_accuracy(t1, t2);
  });
  run(8, "two-grid efficiency", 0.0, [&] { return twogrid_efficiency(t1, t2); });
  run(9, "coercivity and Garding sign", 0.0, coercivity);
  run(10, "Newton behavior", 0.0, newton_behavior);

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
