#pragma once

#include "dunkl/operator_matrix.hpp"

namespace dunkl {

// (T phi_n)(x_i) for n = 0..n_max, one row per point; T = d/dx + kappa (f(x) - f(-x)) / x.
[[nodiscard]] Eigen::MatrixXd dunkl_action_table_1d(double kappa, int n_max, std::span<const double> x);

// <T phi_n, phi_m> for m < rows, n < cols, by quadrature on `rule`.
[[nodiscard]] Eigen::MatrixXd dunkl_operator_matrix_1d(const QuadratureRule1D& rule, int rows, int cols);
// <x phi_n, phi_m>
[[nodiscard]] Eigen::MatrixXd position_matrix_1d(const QuadratureRule1D& rule, int rows, int cols);
// <T phi_n, T phi_m> + <x phi_n, x phi_m> for m, n <= N
[[nodiscard]] Eigen::MatrixXd hermite_form_1d(const QuadratureRule1D& rule, int N);

// Lift a 1-D matrix acting on coordinate j to the tensor basis.
[[nodiscard]] Eigen::MatrixXd embed_coordinate(const HermiteBasis& b, const Eigen::MatrixXd& m1d, int j);

// Coordinates are 0-based: 0 <= j < d.
[[nodiscard]] OperatorMatrix dunkl_operator_matrix(const BasisPtr& bp, int j);
[[nodiscard]] OperatorMatrix position_matrix(const BasisPtr& bp, int j);

enum class HermiteAssembly {
    quadrature_form,   // sum_j <T_j phi, T_j phi> + <x phi, x phi> directly
    operator_products  // sum_j T_j^T T_j + X_j^T X_j with one extra row past the truncation
};
[[nodiscard]] OperatorMatrix hermite_operator_matrix(const BasisPtr& bp,
                                                     HermiteAssembly how = HermiteAssembly::quadrature_form);

} // namespace dunkl
