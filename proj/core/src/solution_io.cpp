#include "wg/solution_io.hpp"

#include "wg/error.hpp"

#include <json.hpp>

namespace wg {

std::string write_solution(const WGFunction& u, const WgSpace& space, const std::string& mesh,
                           const std::string& problem) {
  const DofMap& dofs = space.dofs();
  nlohmann::ordered_json doc;
  doc["format"] = "wg-solution";
  doc["ordering"] = kOrderingTag;
  doc["mesh"] = mesh;
  doc["problem"] = problem;
  doc["degree"] = dofs.degree();
  doc["n_cells"] = dofs.num_cells();
  doc["n_edges"] = dofs.num_edges();
  doc["cell_dofs"] = dofs.cell_dofs();
  doc["edge_dofs"] = dofs.edge_dofs();
  doc["n_free"] = dofs.n_free();
  doc["coefficients"] = std::vector<double>(u.coeffs.data(), u.coeffs.data() + u.coeffs.size());
  return doc.dump(1) + "\n";
}

SolutionFile read_solution(std::string_view text) {
  SolutionFile file;
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.value("format", std::string()) != "wg-solution") throw Error("not a wg solution file");
    file.ordering = doc.at("ordering").get<std::string>();
    if (file.ordering != kOrderingTag) throw Error("unsupported DoF ordering '" + file.ordering + "'");
    file.mesh = doc.value("mesh", std::string());
    file.problem = doc.value("problem", std::string());
    file.degree = doc.at("degree").get<int>();
    file.n_cells = doc.at("n_cells").get<Index>();
    file.n_edges = doc.at("n_edges").get<Index>();
    file.cell_dofs = doc.at("cell_dofs").get<Index>();
    file.edge_dofs = doc.at("edge_dofs").get<Index>();
    file.n_free = doc.at("n_free").get<Index>();
    const auto values = doc.at("coefficients").get<std::vector<double>>();
    if (values.size() != file.n_cells * file.cell_dofs + file.n_edges * file.edge_dofs)
      throw Error("coefficient count does not match the DoF layout");
    file.coeffs = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed solution file: ") + e.what());
  }
  return file;
}

WGFunction to_function(const SolutionFile& file, const WgSpace& space) {
  const DofMap& dofs = space.dofs();
  if (file.degree != dofs.degree() || file.n_cells != dofs.num_cells() ||
      file.n_edges != dofs.num_edges() || file.n_free != dofs.n_free())
    throw Error("solution layout does not match the space");
  return {space.dofs_ptr(), file.coeffs};
}

}  // namespace wg
