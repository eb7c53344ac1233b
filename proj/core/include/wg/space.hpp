#pragma once

#include "wg/mesh.hpp"
#include "wg/poly.hpp"

#include <Eigen/Core>

#include <memory>
#include <vector>

namespace wg {

inline constexpr Index kNotFree = static_cast<Index>(-1);

/// Quadrature degrees used throughout; a(u_0) is not polynomial, hence the
/// margin on cell integrals.
struct QuadratureDegrees {
  int cell;   // stiffness, weak gradient, load: 2k + 4
  int edge;   // boundary terms: 2k + 2
  int error;  // norms and projections: 2k + 6

  static QuadratureDegrees for_degree(int k) { return {2 * k + 4, 2 * k + 2, 2 * k + 6}; }
};

/// Global layout: all cell blocks in cell order, then all edge blocks in edge
/// order. Free numbering keeps that order and skips boundary-edge blocks.
class DofMap {
public:
  DofMap(const Mesh& mesh, int k);

  int degree() const { return k_; }
  Index cell_dofs() const { return cell_dofs_; }
  Index edge_dofs() const { return edge_dofs_; }
  Index cell_offset(Index c) const { return c * cell_dofs_; }
  Index edge_offset(Index e) const { return n_interior_ + e * edge_dofs_; }

  Index total() const { return n_interior_ + n_edge_; }
  Index n_interior() const { return n_interior_; }
  Index n_edge() const { return n_edge_; }
  Index n_constrained() const { return n_constrained_; }
  Index n_free() const { return total() - n_constrained_; }
  Index num_cells() const { return n_interior_ / cell_dofs_; }
  Index num_edges() const { return n_edge_ / edge_dofs_; }

  bool constrained(Index dof) const { return free_index_[dof] == kNotFree; }
  Index free_index(Index dof) const { return free_index_[dof]; }
  std::span<const Index> free_to_global() const { return free_to_global_; }

  /// Cell block first, then the blocks of the cell's edges in CCW order.
  std::vector<Index> local_dofs(const Mesh& mesh, Index c) const;

private:
  int k_;
  Index cell_dofs_, edge_dofs_;
  Index n_interior_, n_edge_, n_constrained_ = 0;
  std::vector<Index> free_index_;
  std::vector<Index> free_to_global_;
};

/// Per-cell operators of the weak Galerkin discretization.
struct LocalOperators {
  CellBasis basis;       // P_k on the cell
  CellBasis grad_basis;  // P_{k-1}, same origin and scale
  Index n_local = 0;     // cell_dofs + (#edges) * edge_dofs

  /// Rows [0, m) give the x-component coefficients of the weak gradient in
  /// grad_basis, rows [m, 2m) the y-component; columns follow local_dofs.
  Eigen::MatrixXd weak_gradient{};
  /// <v0 - vb, w0 - wb>_{dK} / sqrt(|K|) on local DoFs.
  Eigen::MatrixXd stabilizer{};
  /// Gram matrix of grad_basis.
  Eigen::MatrixXd grad_mass{};

  QuadRule rule{};                   // cell rule of degree 2k + 4
  Eigen::MatrixXd basis_at_qp{};     // rule.size() x dim P_k
  Eigen::MatrixXd grad_basis_at_qp{};  // rule.size() x dim P_{k-1}

  Index grad_dim() const { return grad_basis.size(); }
  /// Weak gradient of a local DoF vector sampled at the rule points (n x 2).
  Eigen::MatrixX2d weak_gradient_at_qp(const Eigen::VectorXd& local) const;
  /// v0 sampled at the rule points.
  Eigen::VectorXd interior_at_qp(const Eigen::VectorXd& local) const;
};

/// Builds G_K, S_K and the cached quadrature data for cell c. Requires k >= 1.
LocalOperators build_local_operators(const Mesh& mesh, Index c, int k);

/// Mesh, DoF layout and element operators of V_h for one polynomial degree.
class WgSpace {
public:
  WgSpace(std::shared_ptr<const Mesh> mesh, int k);
  WgSpace(Mesh mesh, int k) : WgSpace(std::make_shared<const Mesh>(std::move(mesh)), k) {}

  const Mesh& mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  const DofMap& dofs() const { return *dofs_; }
  std::shared_ptr<const DofMap> dofs_ptr() const { return dofs_; }
  int degree() const { return dofs_->degree(); }
  QuadratureDegrees quad() const { return QuadratureDegrees::for_degree(degree()); }

  const LocalOperators& local(Index c) const { return ops_[c]; }
  std::span<const Index> local_dofs(Index c) const { return local_dofs_[c]; }

private:
  std::shared_ptr<const Mesh> mesh_;
  std::shared_ptr<const DofMap> dofs_;
  std::vector<LocalOperators> ops_;
  std::vector<std::vector<Index>> local_dofs_;
};

/// A weak function {v0, vb}: global coefficient vector over a DofMap.
struct WGFunction {
  std::shared_ptr<const DofMap> dofs;
  Eigen::VectorXd coeffs;

  static WGFunction zero(const WgSpace& space) {
    return {space.dofs_ptr(), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.dofs().total()))};
  }

  Eigen::VectorXd gather(std::span<const Index> local) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(local.size()));
    for (Index i = 0; i < local.size(); ++i) out[i] = coeffs[local[i]];
    return out;
  }

  /// Interior polynomial of cell c evaluated at p.
  double interior_value(const WgSpace& space, Index c, const Vec2& p) const;
};

}  // namespace wg
