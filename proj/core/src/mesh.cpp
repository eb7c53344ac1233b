#include "wg/mesh.hpp"

#include "wg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace wg {
namespace {

double signed_area(const std::vector<Vec2>& pts, const std::vector<Index>& poly) {
  double twice = 0.0;
  const Index n = poly.size();
  for (Index i = 0; i < n; ++i) {
    const Vec2& p = pts[poly[i]];
    const Vec2& q = pts[poly[(i + 1) % n]];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * twice;
}

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on_segment = [](const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
           std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
  };
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

// Non-adjacent edges of the polygon must not touch.
bool is_simple(const std::vector<Vec2>& pts, const std::vector<Index>& poly) {
  const Index n = poly.size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(pts[poly[i]], pts[poly[(i + 1) % n]], pts[poly[j]],
                             pts[poly[(j + 1) % n]]))
        return false;
    }
  }
  return true;
}

void check_indices(const std::vector<Vec2>& pts, const std::vector<Index>& poly, Index c) {
  if (poly.size() < 3)
    throw MeshError("cell " + std::to_string(c) + " has fewer than 3 vertices");
  std::unordered_set<Index> seen;
  for (Index v : poly) {
    if (v >= pts.size())
      throw MeshError("cell " + std::to_string(c) + " references missing vertex " +
                      std::to_string(v));
    if (!seen.insert(v).second)
      throw MeshError("cell " + std::to_string(c) + " repeats vertex " + std::to_string(v));
  }
}

}  // namespace

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<std::vector<Index>> cells)
    : vertices_(std::move(vertices)) {
  if (cells.empty()) throw MeshError("mesh has no cells");
  cells_.resize(cells.size());
  std::map<std::pair<Index, Index>, Index> edge_of;

  for (Index c = 0; c < cells.size(); ++c) {
    auto& poly = cells[c];
    check_indices(vertices_, poly, c);
    const double area = signed_area(vertices_, poly);
    if (!(area > 0.0))
      throw MeshError("cell " + std::to_string(c) + " has non-positive signed area");
    if (!is_simple(vertices_, poly))
      throw MeshError("cell " + std::to_string(c) + " is not a simple polygon");

    Cell& cell = cells_[c];
    cell.vertices = std::move(poly);
    cell.area = area;

    // Area centroid from the shoelace decomposition.
    const Index n = cell.vertices.size();
    Vec2 centroid = Vec2::Zero();
    for (Index i = 0; i < n; ++i) {
      const Vec2& p = vertices_[cell.vertices[i]];
      const Vec2& q = vertices_[cell.vertices[(i + 1) % n]];
      centroid += (p + q) * cross(p, q);
    }
    cell.centroid = centroid / (6.0 * area);

    double diam = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        diam = std::max(diam, (vertices_[cell.vertices[i]] - vertices_[cell.vertices[j]]).norm());
    cell.diameter = diam;
    cell.size = std::sqrt(area);

    cell.edges.reserve(n);
    for (Index i = 0; i < n; ++i) {
      const Index a = cell.vertices[i];
      const Index b = cell.vertices[(i + 1) % n];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_of.try_emplace({key.first, key.second}, edges_.size());
      if (inserted) {
        Edge e;
        e.vertices = {key.first, key.second};
        e.cells = {c, kNoCell};
        const Vec2 d = vertices_[key.second] - vertices_[key.first];
        e.length = d.norm();
        if (!(e.length > 0.0)) throw MeshError("zero-length edge in cell " + std::to_string(c));
        e.tangent = d / e.length;
        e.midpoint = 0.5 * (vertices_[key.first] + vertices_[key.second]);
        edges_.push_back(e);
      } else {
        Edge& e = edges_[it->second];
        if (e.cells[1] != kNoCell)
          throw MeshError("edge (" + std::to_string(key.first) + "," +
                          std::to_string(key.second) + ") is shared by more than two cells");
        // Two conforming CCW cells traverse a shared edge in opposite directions.
        const Cell& other = cells_[e.cells[0]];
        for (const CellEdge& ce : other.edges)
          if (ce.edge == it->second && ce.canonical == (a < b))
            throw MeshError("cells " + std::to_string(e.cells[0]) + " and " +
                            std::to_string(c) + " overlap along a shared edge");
        e.cells[1] = c;
      }
      const Edge& e = edges_[it->second];
      const bool canonical = a < b;
      const Vec2 t = canonical ? e.tangent : Vec2(-e.tangent);
      cell.edges.push_back({it->second, canonical, Vec2(t.y(), -t.x())});
    }
  }
  for (Edge& e : edges_) e.boundary = e.cells[1] == kNoCell;
}

Index Mesh::num_boundary_edges() const {
  return static_cast<Index>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.boundary; }));
}

double Mesh::max_diameter() const {
  double h = 0.0;
  for (const Cell& c : cells_) h = std::max(h, c.diameter);
  return h;
}

double Mesh::total_area() const {
  double a = 0.0;
  for (const Cell& c : cells_) a += c.area;
  return a;
}

Vec2 Mesh::edge_start(Index c, Index local) const {
  return vertices_[cells_[c].vertices[local]];
}

Vec2 Mesh::edge_end(Index c, Index local) const {
  const auto& vs = cells_[c].vertices;
  return vertices_[vs[(local + 1) % vs.size()]];
}

namespace {

std::vector<std::vector<Index>> grid_cells(int n) {
  std::vector<std::vector<Index>> cells;
  cells.reserve(static_cast<Index>(n) * n);
  const Index stride = static_cast<Index>(n) + 1;
  for (Index j = 0; j < static_cast<Index>(n); ++j)
    for (Index i = 0; i < static_cast<Index>(n); ++i) {
      const Index v = j * stride + i;
      cells.push_back({v, v + 1, v + 1 + stride, v + stride});
    }
  return cells;
}

std::vector<Vec2> grid_vertices(int n) {
  std::vector<Vec2> pts;
  pts.reserve(static_cast<Index>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      pts.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
  return pts;
}

}  // namespace

Mesh build_rectangular(int n) {
  if (n < 1) throw MeshError("rectangular mesh needs n >= 1");
  Mesh mesh(grid_vertices(n), grid_cells(n));
  mesh.structured_n_ = n;
  return mesh;
}

Mesh build_perturbed_quad(int n, double delta, std::uint64_t seed) {
  if (n < 1) throw MeshError("perturbed mesh needs n >= 1");
  if (!(delta >= 0.0 && delta < 0.5)) throw MeshError("perturbation delta must lie in [0, 0.5)");

  std::vector<Vec2> pts = grid_vertices(n);
  std::uint64_t state = seed;
  auto next_unit = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  const double amplitude = delta / n;
  for (int j = 1; j < n; ++j)
    for (int i = 1; i < n; ++i) {
      Vec2& p = pts[static_cast<Index>(j) * (n + 1) + i];
      const double dx = (2.0 * next_unit() - 1.0) * amplitude;
      const double dy = (2.0 * next_unit() - 1.0) * amplitude;
      p += Vec2(dx, dy);
    }
  return Mesh(std::move(pts), grid_cells(n));
}

Mesh import_mesh(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MeshError(std::string("malformed mesh file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("cells"))
    throw MeshError("mesh file needs \"vertices\" and \"cells\"");

  std::vector<Vec2> pts;
  std::vector<std::vector<Index>> cells;
  try {
    for (const auto& v : doc.at("vertices")) {
      if (!v.is_array() || v.size() != 2) throw MeshError("vertex entries must be [x, y]");
      pts.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    for (const auto& c : doc.at("cells")) {
      std::vector<Index> poly;
      for (const auto& i : c) {
        const auto idx = i.get<long long>();
        if (idx < 0) throw MeshError("negative vertex index");
        poly.push_back(static_cast<Index>(idx));
      }
      cells.push_back(std::move(poly));
    }
  } catch (const nlohmann::json::exception& e) {
    throw MeshError(std::string("malformed mesh file: ") + e.what());
  }

  int reoriented = 0;
  for (Index c = 0; c < cells.size(); ++c) {
    check_indices(pts, cells[c], c);
    if (signed_area(pts, cells[c]) < 0.0) {
      std::reverse(cells[c].begin(), cells[c].end());
      ++reoriented;
    }
  }
  Mesh mesh(std::move(pts), std::move(cells));
  mesh.reoriented_ = reoriented;
  return mesh;
}

Mesh mesh_from_spec(const std::string& spec) {
  auto fields = [&spec]() {
    std::vector<std::string> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) out.push_back(item);
    return out;
  };
  try {
    if (spec.rfind("rect:", 0) == 0) {
      const auto f = fields();
      if (f.size() != 2) throw MeshError("expected rect:N");
      return build_rectangular(std::stoi(f[1]));
    }
    if (spec.rfind("pquad:", 0) == 0) {
      const auto f = fields();
      if (f.size() != 4) throw MeshError("expected pquad:N:delta:seed");
      return build_perturbed_quad(std::stoi(f[1]), std::stod(f[2]), std::stoull(f[3]));
    }
  } catch (const std::logic_error&) {
    throw MeshError("bad mesh specification '" + spec + "'");
  }
  std::ifstream in(spec);
  if (!in) throw MeshError("cannot open mesh file '" + spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return import_mesh(buf.str());
}

}  // namespace wg
