#pragma once

#include "wg/space.hpp"

#include <string>
#include <string_view>

namespace wg {

inline constexpr const char* kOrderingTag = "wg-dofmap-v1";

/// Contents of a solution file.
struct SolutionFile {
  std::string mesh;     // mesh specification the solution was computed on
  std::string problem;  // problem name
  int degree = 1;
  Index n_cells = 0;
  Index n_edges = 0;
  Index cell_dofs = 0;
  Index edge_dofs = 0;
  Index n_free = 0;
  std::string ordering = kOrderingTag;
  Eigen::VectorXd coeffs;
};

/// JSON with DofMap metadata and the full coefficient vector. Doubles are
/// written in shortest round-trip form, so reading back is bit-exact.
std::string write_solution(const WGFunction& u, const WgSpace& space, const std::string& mesh,
                           const std::string& problem);

/// Throws Error on malformed input or an unknown ordering tag.
SolutionFile read_solution(std::string_view text);

/// Rebinds a loaded solution to a space; throws Error if the layouts differ.
WGFunction to_function(const SolutionFile& file, const WgSpace& space);

}  // namespace wg
