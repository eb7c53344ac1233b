#include "wg/space.hpp"

#include "wg/error.hpp"

namespace wg {

DofMap::DofMap(const Mesh& mesh, int k)
    : k_(k),
      cell_dofs_(CellBasis::dimension(k)),
      edge_dofs_(static_cast<Index>(k + 1)),
      n_interior_(mesh.num_cells() * cell_dofs_),
      n_edge_(mesh.num_edges() * edge_dofs_) {
  if (k < 1) throw Error("weak Galerkin space needs k >= 1");
  free_index_.assign(total(), kNotFree);
  Index next = 0;
  for (Index i = 0; i < n_interior_; ++i) free_index_[i] = next++;
  for (Index e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.edge(e).boundary) {
      n_constrained_ += edge_dofs_;
      continue;
    }
    for (Index j = 0; j < edge_dofs_; ++j) free_index_[edge_offset(e) + j] = next++;
  }
  free_to_global_.resize(next);
  for (Index g = 0; g < total(); ++g)
    if (free_index_[g] != kNotFree) free_to_global_[free_index_[g]] = g;
}

std::vector<Index> DofMap::local_dofs(const Mesh& mesh, Index c) const {
  const Cell& cell = mesh.cell(c);
  std::vector<Index> out;
  out.reserve(cell_dofs_ + cell.edges.size() * edge_dofs_);
  for (Index i = 0; i < cell_dofs_; ++i) out.push_back(cell_offset(c) + i);
  for (const CellEdge& ce : cell.edges)
    for (Index j = 0; j < edge_dofs_; ++j) out.push_back(edge_offset(ce.edge) + j);
  return out;
}

WgSpace::WgSpace(std::shared_ptr<const Mesh> mesh, int k)
    : mesh_(std::move(mesh)), dofs_(std::make_shared<const DofMap>(*mesh_, k)) {
  ops_.reserve(mesh_->num_cells());
  local_dofs_.reserve(mesh_->num_cells());
  for (Index c = 0; c < mesh_->num_cells(); ++c) {
    ops_.push_back(build_local_operators(*mesh_, c, k));
    local_dofs_.push_back(dofs_->local_dofs(*mesh_, c));
  }
}

double WGFunction::interior_value(const WgSpace& space, Index c, const Vec2& p) const {
  const CellBasis& basis = space.local(c).basis;
  const Index off = dofs->cell_offset(c);
  return basis.evaluate({coeffs.data() + off, basis.size()}, p);
}

}  // namespace wg
