#include "wg/twogrid.hpp"

#include "wg/error.hpp"
#include "wg/timer.hpp"

#include <algorithm>
#include <cmath>

namespace wg {
namespace {

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

}  // namespace

bool PointLocator::contains(const Mesh& mesh, Index c, const Vec2& p) {
  const Cell& cell = mesh.cell(c);
  const Index n = cell.vertices.size();
  bool inside = false;
  for (Index i = 0; i < n; ++i) {
    const Vec2& a = mesh.vertex(cell.vertices[i]);
    const Vec2& b = mesh.vertex(cell.vertices[(i + 1) % n]);
    if (segment_distance(p, a, b) <= kTolerance) return true;
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

PointLocator::PointLocator(std::shared_ptr<const Mesh> mesh) : mesh_(std::move(mesh)) {
  if (mesh_->structured_n()) return;
  Vec2 lo = mesh_->vertex(0), hi = mesh_->vertex(0);
  for (const Vec2& v : mesh_->vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  bins_ = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(mesh_->num_cells())))));
  lo_ = lo;
  width_ = ((hi - lo) / bins_).cwiseMax(Vec2::Constant(1e-300));
  cells_in_bin_.resize(static_cast<Index>(bins_) * bins_);
  for (Index c = 0; c < mesh_->num_cells(); ++c) {
    Vec2 clo = mesh_->vertex(mesh_->cell(c).vertices[0]), chi = clo;
    for (Index v : mesh_->cell(c).vertices) {
      clo = clo.cwiseMin(mesh_->vertex(v));
      chi = chi.cwiseMax(mesh_->vertex(v));
    }
    const Index x0 = bin_of(clo.x() - kTolerance, lo_.x(), width_.x());
    const Index x1 = bin_of(chi.x() + kTolerance, lo_.x(), width_.x());
    const Index y0 = bin_of(clo.y() - kTolerance, lo_.y(), width_.y());
    const Index y1 = bin_of(chi.y() + kTolerance, lo_.y(), width_.y());
    for (Index j = y0; j <= y1; ++j)
      for (Index i = x0; i <= x1; ++i) cells_in_bin_[j * bins_ + i].push_back(c);
  }
}

Index PointLocator::bin_of(double v, double lo, double width) const {
  const double t = std::floor((v - lo) / width);
  return static_cast<Index>(std::clamp(t, 0.0, static_cast<double>(bins_ - 1)));
}

Index PointLocator::locate(const Vec2& p) const {
  if (const auto n = mesh_->structured_n()) {
    if (p.x() < -kTolerance || p.x() > 1.0 + kTolerance || p.y() < -kTolerance ||
        p.y() > 1.0 + kTolerance)
      throw Error("point outside the mesh");
    // ceil(t) - 1 sends points on grid lines to the lower-index neighbour.
    auto index = [n = *n](double t) {
      return static_cast<Index>(std::clamp(std::ceil(t * n) - 1.0, 0.0, n - 1.0));
    };
    return index(p.y()) * static_cast<Index>(*n) + index(p.x());
  }
  const Index bin = bin_of(p.y(), lo_.y(), width_.y()) * bins_ + bin_of(p.x(), lo_.x(), width_.x());
  for (Index c : cells_in_bin_[bin])  // ascending cell order
    if (contains(*mesh_, c, p)) return c;
  throw Error("point (" + std::to_string(p.x()) + ", " + std::to_string(p.y()) +
              ") is outside the mesh");
}

Index locate_point(const Mesh& mesh, const Vec2& p) {
  const PointLocator locator(std::make_shared<const Mesh>(mesh));
  return locator.locate(p);
}

GridPair::GridPair(std::shared_ptr<const Mesh> coarse, std::shared_ptr<const Mesh> fine, int k)
    : coarse_(coarse, k), fine_(std::move(fine), k), locator_(std::move(coarse)) {
  if (coarse_h() < fine_h() * (1.0 - 1e-12))
    throw Error("coarse mesh must not be finer than the fine mesh");
  if (std::abs(coarse_.mesh().total_area() - fine_.mesh().total_area()) > 1e-10)
    throw Error("coarse and fine meshes cover different domains");
}

double coarse_eval(const WGFunction& u_coarse, const WgSpace& coarse, const PointLocator& locator,
                   const Vec2& p) {
  return u_coarse.interior_value(coarse, locator.locate(p), p);
}

TwoGridResult two_grid_solve(const ProblemSpec& problem, const GridPair& grids,
                             const NewtonConfig& config) {
  const Stopwatch total;
  NewtonResult coarse = newton_solve(problem, grids.coarse(), config);
  const double coarse_seconds = total.seconds();

  const Stopwatch fine_clock;
  const WgSpace& fine = grids.fine();
  const WGFunction lift = apply_dirichlet(problem, fine);
  const SparseSystem system = assemble_frozen(
      [&](Index, const Vec2& x) {
        return coarse_eval(coarse.solution, grids.coarse(), grids.locator(), x);
      },
      lift, problem, fine);
  const Eigen::VectorXd x = solve_linear(system.matrix, system.rhs, config.linear_tolerance);
  WGFunction solution = lift;
  add_free(solution, x);

  SolveReport report = std::move(coarse.report);
  report.linear_solves += 1;
  report.seconds.clear();
  report.seconds["coarse"] = coarse_seconds;
  report.seconds["fine"] = fine_clock.seconds();
  report.seconds["total"] = total.seconds();
  return {std::move(solution), std::move(coarse.solution), std::move(report)};
}

TwoGridResult two_grid_solve(const ProblemSpec& problem, const Mesh& coarse, const Mesh& fine,
                             int k, const NewtonConfig& config) {
  const GridPair grids(std::make_shared<const Mesh>(coarse), std::make_shared<const Mesh>(fine), k);
  return two_grid_solve(problem, grids, config);
}

int sqrt_pairing(int fine_n) {
  if (fine_n < 1) throw Error("fine grid size must be positive");
  return std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(fine_n)))));
}

}  // namespace wg
