// wg: weak Galerkin solver for -div(a(u) grad u) = f on polygonal meshes.
//
//   wg solve       --problem ex1 --mesh rect:16 --degree 1 [--out sol.json]
//   wg convergence --problem ex1 --degree 1 --grids 4,8,16,32,64 --grid-type rect --out t.csv
//   wg twogrid     --problem ex2 --degree 1 --fine 4,16,36,64 --pairing sqrt --out cmp.csv
//
// Exit codes: 0 success, 2 usage error, 3 solver failure, 4 validation failure.

#include "wg/drivers.hpp"
#include "wg/error.hpp"
#include "wg/solution_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kUsage = 2;
constexpr int kSolverFailure = 3;
constexpr int kValidationFailure = 4;

struct CommonArgs {
  std::string problem = "ex1";
  int degree = 1;
  double tolerance = 1e-12;
  int max_iterations = 50;
  std::string out;
  bool no_timings = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--problem", args.problem, "built-in name (ex1, ex2) or problem config file")
      ->required();
  cmd->add_option("--degree,-k", args.degree, "polynomial degree k >= 1")
      ->check(CLI::Range(1, 6));
  cmd->add_option("--tol", args.tolerance, "Newton tolerance on |||increment|||");
  cmd->add_option("--max-iter", args.max_iterations, "Newton iteration cap")
      ->check(CLI::PositiveNumber);
}

wg::NewtonConfig newton_config(const CommonArgs& args) {
  wg::NewtonConfig c;
  c.tolerance = args.tolerance;
  c.max_iterations = args.max_iterations;
  return c;
}

wg::ProblemSpec load_validated(const std::string& name) {
  wg::ProblemSpec p = wg::load_problem(name);
  wg::validate_problem(p);
  return p;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

int run_solve(const CommonArgs& args, const std::string& mesh) {
  const wg::ProblemSpec problem = load_validated(args.problem);
  const wg::SolveOutcome res = wg::run_solve(problem, mesh, args.degree, newton_config(args));
  const wg::Mesh& m = res.space->mesh();
  std::printf("mesh %s: %zu cells, %zu edges, h = %.6e\n", mesh.c_str(), m.num_cells(),
              m.num_edges(), m.max_diameter());
  if (m.reoriented_cells() > 0)
    std::printf("warning: %d clockwise cells were reversed\n", m.reoriented_cells());
  std::printf("dofs: %zu total, %zu free\n", res.space->dofs().total(), res.space->dofs().n_free());
  std::printf("newton: %d iterations (%d linear solves)\n", res.report.iterations,
              res.report.linear_solves);
  for (std::size_t i = 0; i < res.report.increments.size(); ++i)
    std::printf("  step %zu  |||delta||| = %.6e\n", i + 1, res.report.increments[i]);
  std::printf("final residual %.6e, %.3f s\n", res.report.final_residual,
              res.report.seconds.at("total"));
  if (res.errors) {
    std::printf("err_h1 %.6e  err_l2 %.6e  broken_h1 %.6e\n", res.errors->err_h1,
                res.errors->err_l2, res.errors->err_broken_h1);
  }
  if (!args.out.empty())
    write_text(args.out, wg::write_solution(res.solution, *res.space, mesh, problem.name));
  return 0;
}

int run_convergence(const CommonArgs& args, const std::vector<int>& grids,
                    const std::string& grid_type, double delta, std::uint64_t seed) {
  const wg::ProblemSpec problem = load_validated(args.problem);
  wg::ConvergenceOptions opts;
  opts.degree = args.degree;
  opts.grids = grids;
  opts.grid_type = grid_type == "pquad" ? wg::GridType::PerturbedQuad : wg::GridType::Rectangular;
  opts.delta = delta;
  opts.seed = seed;
  opts.newton = newton_config(args);
  const wg::ConvergenceTable table = wg::run_convergence(problem, opts);
  write_text(args.out, wg::to_csv(table, !args.no_timings));
  if (table.failed_n) {
    std::cerr << "wg: level " << *table.failed_n << " failed: " << table.failure << '\n';
    return kSolverFailure;
  }
  return 0;
}

std::vector<int> parse_pairing(const std::string& pairing, std::size_t levels) {
  if (pairing == "sqrt") return {};
  const std::string prefix = "explicit:";
  if (pairing.rfind(prefix, 0) != 0) throw CLI::ValidationError("--pairing", "expected sqrt or explicit:<list>");
  std::vector<int> coarse;
  std::stringstream ss(pairing.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      coarse.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--pairing", "bad coarse size '" + item + "'");
    }
  }
  if (coarse.size() != levels)
    throw CLI::ValidationError("--pairing", "explicit pairing needs one coarse size per fine size");
  return coarse;
}

int run_twogrid(const CommonArgs& args, const std::vector<int>& fine, const std::string& pairing) {
  wg::TwoGridOptions opts;
  opts.degree = args.degree;
  opts.fine = fine;
  opts.coarse = parse_pairing(pairing, fine.size());
  opts.newton = newton_config(args);
  const wg::ProblemSpec problem = load_validated(args.problem);
  const wg::TwoGridTable table = wg::run_twogrid(problem, opts);
  write_text(args.out, wg::to_csv(table, !args.no_timings));
  if (table.failed_n) {
    std::cerr << "wg: level " << *table.failed_n << " failed: " << table.failure << '\n';
    return kSolverFailure;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak Galerkin solver for quasi-linear elliptic problems"};
  app.require_subcommand(1);

  CommonArgs solve_args;
  std::string mesh;
  auto* solve = app.add_subcommand("solve", "Newton solve on a single mesh");
  add_common(solve, solve_args);
  solve->add_option("--mesh", mesh, "rect:N, pquad:N:delta:seed, or a mesh JSON file")->required();
  solve->add_option("--out", solve_args.out, "solution JSON file");

  CommonArgs conv_args;
  std::vector<int> grids{4, 8, 16, 32, 64};
  std::string grid_type = "rect";
  double delta = 0.2;
  std::uint64_t seed = 7;
  auto* conv = app.add_subcommand("convergence", "error table and fitted rates over a grid sequence");
  add_common(conv, conv_args);
  conv->add_option("--grids", grids, "comma separated N values")->delimiter(',')
      ->check(CLI::PositiveNumber);
  conv->add_option("--grid-type", grid_type, "rect or pquad")->check(CLI::IsMember({"rect", "pquad"}));
  conv->add_option("--delta", delta, "pquad perturbation fraction")->check(CLI::Range(0.0, 0.49));
  conv->add_option("--seed", seed, "pquad seed");
  conv->add_option("--out", conv_args.out, "CSV output (default stdout)");
  conv->add_flag("--no-timings", conv_args.no_timings, "write zero seconds for byte-stable output");

  CommonArgs tg_args;
  std::vector<int> fine{4, 16, 36, 64, 100};
  std::string pairing = "sqrt";
  auto* tg = app.add_subcommand("twogrid", "direct WG against the two-grid method");
  add_common(tg, tg_args);
  tg->add_option("--fine", fine, "comma separated fine N values")->delimiter(',')
      ->check(CLI::PositiveNumber);
  tg->add_option("--pairing", pairing, "sqrt or explicit:<coarse list>");
  tg->add_option("--out", tg_args.out, "CSV output (default stdout)");
  tg->add_flag("--no-timings", tg_args.no_timings, "write zero seconds for byte-stable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (solve->parsed()) return run_solve(solve_args, mesh);
    if (conv->parsed()) return run_convergence(conv_args, grids, grid_type, delta, seed);
    return run_twogrid(tg_args, fine, pairing);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "wg: " << e.what() << '\n';
    return kUsage;
  } catch (const wg::SolverError& e) {
    std::cerr << "wg: solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const wg::Error& e) {
    std::cerr << "wg: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "wg: " << e.what() << '\n';
    return kUsage;
  }
}
