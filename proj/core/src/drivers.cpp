#include "wg/drivers.hpp"

#include "wg/error.hpp"
#include "wg/timer.hpp"
#include "wg/twogrid.hpp"

#include <cstdio>
#include <sstream>

namespace wg {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string label(GridType type, int n, double delta, std::uint64_t seed) {
  if (type == GridType::Rectangular) return "rect:" + std::to_string(n);
  std::ostringstream os;
  os << "pquad:" << n << ':' << delta << ':' << seed;
  return os.str();
}

}  // namespace

SolveOutcome run_solve(const ProblemSpec& problem, const std::string& mesh_spec, int k,
                       const NewtonConfig& config) {
  const Stopwatch clock;
  auto space = std::make_shared<const WgSpace>(mesh_from_spec(mesh_spec), k);
  NewtonResult result = newton_solve(problem, *space, config);
  const double seconds = clock.seconds();
  SolveOutcome out{space, std::move(result.solution), std::move(result.report), std::nullopt};
  if (problem.has_exact()) {
    ErrorRecord rec;
    rec.mesh = mesh_spec;
    rec.h = space->mesh().max_diameter();
    rec.newton_iterations = out.report.iterations;
    rec.seconds = seconds;
    measure_errors(problem, out.solution, *space, rec);
    out.errors = rec;
  }
  return out;
}

ConvergenceTable run_convergence(const ProblemSpec& problem, const ConvergenceOptions& options) {
  if (!problem.has_exact()) throw Error("convergence study needs an exact solution");
  ConvergenceTable table;
  for (int n : options.grids) {
    try {
      const Stopwatch clock;
      Mesh mesh = options.grid_type == GridType::Rectangular
                      ? build_rectangular(n)
                      : build_perturbed_quad(n, options.delta, options.seed);
      const WgSpace space(std::move(mesh), options.degree);
      const NewtonResult result = newton_solve(problem, space, options.newton);
      ErrorRecord rec;
      rec.seconds = clock.seconds();
      rec.mesh = label(options.grid_type, n, options.delta, options.seed);
      rec.n = n;
      rec.h = options.grid_type == GridType::Rectangular ? 1.0 / n : space.mesh().max_diameter();
      rec.newton_iterations = result.report.iterations;
      measure_errors(problem, result.solution, space, rec);
      table.rows.push_back(rec);
    } catch (const SolverError& e) {
      table.failed_n = n;
      table.failure = e.what();
      break;
    }
  }
  if (table.rows.size() >= 2) {
    std::vector<double> h, e1, e2;
    for (const ErrorRecord& r : table.rows) {
      h.push_back(r.h);
      e1.push_back(r.err_h1);
      e2.push_back(r.err_l2);
    }
    table.rate_h1 = fit_rate(h, e1);
    table.rate_l2 = fit_rate(h, e2);
  }
  return table;
}

std::string to_csv(const ConvergenceTable& table, bool timings) {
  std::string out = "mesh,n,h,err_h1,err_l2,rate_placeholder,newton_iters,seconds\n";
  for (const ErrorRecord& r : table.rows) {
    out += r.mesh + ',' + std::to_string(r.n) + ',' + sci(r.h) + ',' + sci(r.err_h1) + ',' +
           sci(r.err_l2) + ",," + std::to_string(r.newton_iterations) + ',' +
           sci(timings ? r.seconds : 0.0) + '\n';
  }
  if (table.failed_n)
    out += "FAILED," + std::to_string(*table.failed_n) + ",,,,,,\n";
  else if (table.rows.size() >= 2)
    out += "rate,,," + sci(table.rate_h1) + ',' + sci(table.rate_l2) + ",,,\n";
  return out;
}

TwoGridTable run_twogrid(const ProblemSpec& problem, const TwoGridOptions& options) {
  if (!problem.has_exact()) throw Error("two-grid comparison needs an exact solution");
  if (!options.coarse.empty() && options.coarse.size() != options.fine.size())
    throw Error("explicit pairing needs one coarse size per fine size");
  TwoGridTable table;
  for (std::size_t i = 0; i < options.fine.size(); ++i) {
    const int n = options.fine[i];
    const int nc = options.coarse.empty() ? sqrt_pairing(n) : options.coarse[i];
    try {
      TwoGridRow row;
      row.n_fine = n;
      row.n_coarse = nc;
      row.h = 1.0 / n;

      const Stopwatch wg_clock;
      const WgSpace space(build_rectangular(n), options.degree);
      const NewtonResult direct = newton_solve(problem, space, options.newton);
      row.seconds_wg = wg_clock.seconds();
      row.newton_wg = direct.report.iterations;
      row.err_wg = discrete_error(problem.u_exact, direct.solution, space);

      const Stopwatch tg_clock;
      const GridPair grids(std::make_shared<const Mesh>(build_rectangular(nc)),
                           std::make_shared<const Mesh>(build_rectangular(n)), options.degree);
      const TwoGridResult tg = two_grid_solve(problem, grids, options.newton);
      row.seconds_tg = tg_clock.seconds();
      row.seconds_tg_coarse = tg.report.seconds.at("coarse");
      row.seconds_tg_fine = tg.report.seconds.at("fine");
      row.newton_coarse = tg.report.iterations;
      row.err_tg = discrete_error(problem.u_exact, tg.solution, grids.fine());
      table.rows.push_back(row);
    } catch (const SolverError& e) {
      table.failed_n = n;
      table.failure = e.what();
      break;
    }
  }
  if (table.rows.size() >= 2) {
    std::vector<double> h, ew, et;
    for (const TwoGridRow& r : table.rows) {
      h.push_back(r.h);
      ew.push_back(r.err_wg);
      et.push_back(r.err_tg);
    }
    table.rate_wg = fit_rate(h, ew);
    table.rate_tg = fit_rate(h, et);
  }
  return table;
}

std::string to_csv(const TwoGridTable& table, bool timings) {
  std::string out =
      "n_fine,n_coarse,h,err_h1_wg,seconds_wg,newton_iters_wg,err_h1_tg,seconds_tg,"
      "seconds_tg_coarse,seconds_tg_fine,newton_iters_coarse,ratio\n";
  auto t = [timings](double s) { return sci(timings ? s : 0.0); };
  for (const TwoGridRow& r : table.rows) {
    out += std::to_string(r.n_fine) + ',' + std::to_string(r.n_coarse) + ',' + sci(r.h) + ',' +
           sci(r.err_wg) + ',' + t(r.seconds_wg) + ',' + std::to_string(r.newton_wg) + ',' +
           sci(r.err_tg) + ',' + t(r.seconds_tg) + ',' + t(r.seconds_tg_coarse) + ',' +
           t(r.seconds_tg_fine) + ',' + std::to_string(r.newton_coarse) + ',' +
           sci(r.err_tg / r.err_wg) + '\n';
  }
  if (table.failed_n)
    out += "FAILED," + std::to_string(*table.failed_n) + ",,,,,,,,,,\n";
  else if (table.rows.size() >= 2)
    out += "rate,,," + sci(table.rate_wg) + ",,," + sci(table.rate_tg) + ",,,,,\n";
  return out;
}

}  // namespace wg
