#pragma once

#include "wg/analysis.hpp"
#include "wg/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wg {

struct SolveOutcome {
  std::shared_ptr<const WgSpace> space;
  WGFunction solution;
  SolveReport report;
  std::optional<ErrorRecord> errors;  // when the problem has an exact solution
};

/// Newton solve on one mesh given as `rect:N`, `pquad:N:delta:seed` or a file.
SolveOutcome run_solve(const ProblemSpec& problem, const std::string& mesh_spec, int k,
                       const NewtonConfig& config = {});

enum class GridType { Rectangular, PerturbedQuad };

struct ConvergenceOptions {
  int degree = 1;
  std::vector<int> grids{4, 8, 16, 32, 64};
  GridType grid_type = GridType::Rectangular;
  double delta = 0.2;
  std::uint64_t seed = 7;
  NewtonConfig newton;
};

struct ConvergenceTable {
  std::vector<ErrorRecord> rows;
  double rate_h1 = 0.0;  // fitted over all rows when >= 2 levels succeeded
  double rate_l2 = 0.0;
  std::optional<int> failed_n;
  std::string failure;
};

/// Solves on every grid in turn; stops at the first solver failure, keeping
/// the rows computed so far. Rectangular rows use h = 1/N, others max h_K.
ConvergenceTable run_convergence(const ProblemSpec& problem, const ConvergenceOptions& options);

/// Header `mesh,n,h,err_h1,err_l2,rate_placeholder,newton_iters,seconds`, one
/// row per level, then `rate` (fitted slopes in the error columns) or a
/// `FAILED` marker row. Numbers use %.6e. With timings == false the seconds
/// column is written as zero so the output is byte-stable.
std::string to_csv(const ConvergenceTable& table, bool timings = true);

struct TwoGridOptions {
  int degree = 1;
  std::vector<int> fine{4, 16, 36, 64, 100};
  std::vector<int> coarse;  // explicit pairing; empty means round(sqrt(fine))
  NewtonConfig newton;
};

struct TwoGridRow {
  int n_fine = 0;
  int n_coarse = 0;
  double h = 0.0;
  double err_wg = 0.0;
  double err_tg = 0.0;
  double seconds_wg = 0.0;
  double seconds_tg = 0.0;
  double seconds_tg_coarse = 0.0;
  double seconds_tg_fine = 0.0;
  int newton_wg = 0;
  int newton_coarse = 0;
};

struct TwoGridTable {
  std::vector<TwoGridRow> rows;
  double rate_wg = 0.0;
  double rate_tg = 0.0;
  std::optional<int> failed_n;
  std::string failure;
};

/// Direct WG (Newton on the fine grid) against the two-grid method on
/// rectangular fine grids N with coarse grids from the pairing.
TwoGridTable run_twogrid(const ProblemSpec& problem, const TwoGridOptions& options);

/// Header `n_fine,n_coarse,h,err_h1_wg,seconds_wg,newton_iters_wg,err_h1_tg,
/// seconds_tg,seconds_tg_coarse,seconds_tg_fine,newton_iters_coarse,ratio`.
std::string to_csv(const TwoGridTable& table, bool timings = true);

}  // namespace wg
