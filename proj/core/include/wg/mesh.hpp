#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wg {

using Vec2 = Eigen::Vector2d;
using Index = std::size_t;

inline constexpr Index kNoCell = static_cast<Index>(-1);

/// An edge is identified by its unordered vertex pair; its canonical direction
/// runs from the lower vertex index to the higher one.
struct Edge {
  std::array<Index, 2> vertices;  // vertices[0] < vertices[1]
  std::array<Index, 2> cells;     // cells[0] < cells[1]; cells[1] == kNoCell on the boundary
  bool boundary = false;
  double length = 0.0;
  Vec2 midpoint = Vec2::Zero();
  Vec2 tangent = Vec2::Zero();  // unit, canonical direction
};

/// One edge as seen from a cell, in the cell's CCW traversal order.
struct CellEdge {
  Index edge;
  bool canonical;  // CCW traversal agrees with the edge's canonical direction
  Vec2 normal;     // unit outward normal relative to this cell
};

struct Cell {
  std::vector<Index> vertices;  // CCW
  std::vector<CellEdge> edges;  // edges[i] joins vertices[i] and vertices[i+1]
  double area = 0.0;
  Vec2 centroid = Vec2::Zero();
  double diameter = 0.0;  // h_K, maximum pairwise vertex distance
  double size = 0.0;      // sqrt(area); length scale of the stabilizer
};

/// Immutable 2D polygonal mesh with derived edge topology and geometry.
class Mesh {
public:
  Mesh(std::vector<Vec2> vertices, std::vector<std::vector<Index>> cells);

  std::span<const Vec2> vertices() const { return vertices_; }
  std::span<const Cell> cells() const { return cells_; }
  std::span<const Edge> edges() const { return edges_; }

  const Vec2& vertex(Index i) const { return vertices_[i]; }
  const Cell& cell(Index c) const { return cells_[c]; }
  const Edge& edge(Index e) const { return edges_[e]; }

  Index num_vertices() const { return vertices_.size(); }
  Index num_cells() const { return cells_.size(); }
  Index num_edges() const { return edges_.size(); }
  Index num_boundary_edges() const;

  /// max_K h_K
  double max_diameter() const;
  double total_area() const;

  /// Cells whose CCW orientation had to be restored on import.
  int reoriented_cells() const { return reoriented_; }

  /// Set only for meshes produced by build_rectangular: N of the N x N grid.
  std::optional<int> structured_n() const { return structured_n_; }

  /// Endpoint of a cell-local edge in CCW order.
  Vec2 edge_start(Index c, Index local) const;
  Vec2 edge_end(Index c, Index local) const;

private:
  friend Mesh build_rectangular(int n);
  friend Mesh import_mesh(std::string_view text);

  std::vector<Vec2> vertices_;
  std::vector<Cell> cells_;
  std::vector<Edge> edges_;
  int reoriented_ = 0;
  std::optional<int> structured_n_;
};

/// Uniform n x n grid of squares on (0,1)^2; cells and vertices are row-major
/// (cell index = row * n + col, row along y).
Mesh build_rectangular(int n);

/// n x n quadrilateral grid whose interior vertices are shifted by up to
/// delta / n in each coordinate. Offsets come from a 64-bit LCG
/// (state = state * 6364136223846793005 + 1442695040888963407) seeded with
/// `seed`; each offset uses the top 53 bits of one step, x before y, vertices
/// in row-major order.
Mesh build_perturbed_quad(int n, double delta, std::uint64_t seed);

/// Parses `{"vertices": [[x,y],...], "cells": [[i0,i1,...],...]}`.
/// Clockwise cells are reversed and counted in reoriented_cells().
Mesh import_mesh(std::string_view text);

/// Parses a mesh specification: `rect:N`, `pquad:N:delta:seed`, or a file path.
Mesh mesh_from_spec(const std::string& spec);

}  // namespace wg
