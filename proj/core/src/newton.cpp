#include "wg/analysis.hpp"
#include "wg/error.hpp"
#include "wg/system.hpp"
#include "wg/timer.hpp"

#include <sstream>

namespace wg {

NewtonResult newton_solve(const ProblemSpec& problem, const WgSpace& space,
                          const NewtonConfig& config) {
  if (!(config.tolerance > 0.0)) throw Error("Newton tolerance must be positive");
  if (config.max_iterations < 1) throw Error("Newton needs at least one iteration");

  const Stopwatch total;
  SolveReport report;
  double assembly = 0.0, solve = 0.0;

  WGFunction u = apply_dirichlet(problem, space);
  WGFunction step = WGFunction::zero(space);
  for (int it = 0; it < config.max_iterations; ++it) {
    Stopwatch phase;
    const Eigen::VectorXd residual = assemble_residual(u, problem, space);
    const SparseMatrix jacobian = assemble_jacobian(u, problem, space);
    assembly += phase.seconds();

    phase.reset();
    const Eigen::VectorXd delta = solve_linear(jacobian, -residual, config.linear_tolerance);
    solve += phase.seconds();
    ++report.linear_solves;

    step.coeffs.setZero();
    add_free(step, delta);
    add_free(u, delta);
    const double norm = energy_norm(step, space);
    report.increments.push_back(norm);
    if (norm < config.tolerance) {
      report.converged = true;
      break;
    }
  }
  report.iterations = report.linear_solves - 1;
  report.seconds["assembly"] = assembly;
  report.seconds["linear_solve"] = solve;

  if (!report.converged) {
    std::ostringstream msg;
    msg << "Newton did not converge in " << config.max_iterations
        << " iterations; last increment " << report.increments.back();
    throw SolverError(msg.str());
  }
  report.final_residual = assemble_residual(u, problem, space).norm();
  report.seconds["total"] = total.seconds();
  return {std::move(u), std::move(report)};
}

}  // namespace wg
