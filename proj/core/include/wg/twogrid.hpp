#pragma once

#include "wg/system.hpp"

#include <memory>
#include <vector>

namespace wg {

/// Finds the cell containing a point. Rectangular meshes use index arithmetic;
/// other meshes use uniform background bins over the bounding box. Points on
/// shared edges or vertices resolve to the lowest-index containing cell.
class PointLocator {
public:
  static constexpr double kTolerance = 1e-12;

  explicit PointLocator(std::shared_ptr<const Mesh> mesh);

  /// Throws Error if no cell contains the point within kTolerance.
  Index locate(const Vec2& p) const;

  /// Closed-polygon test with tolerance kTolerance.
  static bool contains(const Mesh& mesh, Index c, const Vec2& p);

private:
  Index bin_of(double v, double lo, double width) const;

  std::shared_ptr<const Mesh> mesh_;
  int bins_ = 1;
  Vec2 lo_ = Vec2::Zero();
  Vec2 width_ = Vec2::Ones();
  std::vector<std::vector<Index>> cells_in_bin_;
};

/// One-off lookup; builds a locator internally.
Index locate_point(const Mesh& mesh, const Vec2& p);

/// Coarse and fine spaces plus a locator on the coarse mesh.
class GridPair {
public:
  GridPair(std::shared_ptr<const Mesh> coarse, std::shared_ptr<const Mesh> fine, int k);

  const WgSpace& coarse() const { return coarse_; }
  const WgSpace& fine() const { return fine_; }
  const PointLocator& locator() const { return locator_; }
  double coarse_h() const { return coarse_.mesh().max_diameter(); }
  double fine_h() const { return fine_.mesh().max_diameter(); }

private:
  WgSpace coarse_;
  WgSpace fine_;
  PointLocator locator_;
};

/// u_{H,0} at p: the interior polynomial of the located coarse cell.
double coarse_eval(const WGFunction& u_coarse, const WgSpace& coarse, const PointLocator& locator,
                   const Vec2& p);

struct TwoGridResult {
  WGFunction solution;         // u^h on the fine mesh
  WGFunction coarse_solution;  // u_H
  SolveReport report;          // seconds: "coarse", "fine", "total"
};

/// Step 1: Newton on the coarse space. Step 2: one linear solve on the fine
/// space with a(x, u_{H,0}(x)) frozen.
TwoGridResult two_grid_solve(const ProblemSpec& problem, const GridPair& grids,
                             const NewtonConfig& config = {});
TwoGridResult two_grid_solve(const ProblemSpec& problem, const Mesh& coarse, const Mesh& fine,
                             int k, const NewtonConfig& config = {});

/// Coarse N paired with fine N under H = h^{1/2}: round(sqrt(N)).
int sqrt_pairing(int fine_n);

}  // namespace wg
