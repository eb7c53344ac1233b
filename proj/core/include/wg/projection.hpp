#pragma once

#include "wg/space.hpp"

#include <functional>

namespace wg {

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

/// L2 projection onto P_k(K) in the cell's scaled monomial basis.
Eigen::VectorXd project_Q0(const ScalarField& f, const Mesh& mesh, Index c, int k);

/// L2 projection onto P_k(e) in Legendre coefficients of the canonical parameter.
Eigen::VectorXd project_Qb(const ScalarField& f, const Mesh& mesh, Index e, int k);

/// Q_h f = {Q0 f, Qb f} on every cell and edge.
WGFunction project_Qh(const ScalarField& f, const WgSpace& space);

/// L2 projection onto [P_{k-1}(K)]^2; x-coefficients first, then y.
Eigen::VectorXd project_Pih(const VectorField& f, const Mesh& mesh, Index c, int k);

}  // namespace wg
