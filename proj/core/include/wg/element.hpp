#pragma once

#include "wg/space.hpp"

#include <Eigen/Core>

namespace wg {

/// a-weighted Gram matrix of [P_{k-1}]^2 on the cell rule (2m x 2m, block
/// diagonal). `weights` holds one sample per rule point.
Eigen::MatrixXd weighted_vector_mass(const LocalOperators& ops, const Eigen::VectorXd& weights);

/// Local matrix of A_h(w; ., .): G^T W(a) G + S. `a_values` are a(x_q, w0(x_q))
/// at the cell rule points; every sample must be positive.
Eigen::MatrixXd local_form_A(const LocalOperators& ops, const Eigen::VectorXd& a_values);

/// Local matrix of the linearized form D_h(w; phi, v): A-part plus
/// (a_u(w0) grad_w phi0, grad_w v). `grad_w` holds grad w at the rule points
/// (normally the weak gradient of the linearization point). Row = test DoF,
/// column = trial DoF; only cell-block columns receive the coupling term.
Eigen::MatrixXd local_form_D(const LocalOperators& ops, const Eigen::VectorXd& a_values,
                             const Eigen::VectorXd& au_values, const Eigen::MatrixX2d& grad_w);

/// Throws CoefficientError naming the first non-positive sample.
void require_positive(const LocalOperators& ops, Index cell, const Eigen::VectorXd& a_values,
                      const Eigen::VectorXd& u_values);

}  // namespace wg
