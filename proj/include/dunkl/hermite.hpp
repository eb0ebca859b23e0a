#pragma once

#include "dunkl/quadrature.hpp"
#include "dunkl/structure.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace dunkl {

// Orthonormal Laguerre functions l_m(u) = p_m(u) e^{-u/2} for u^alpha du, m = 0..out.size()-1.
void laguerre_functions(double alpha, double u, std::span<double> out);

// 1-D generalized Hermite functions phi_0..phi_{out.size()-1} at x:
// phi_{2m}(x) = l_m^{kappa-1/2}(x^2), phi_{2m+1}(x) = x l_m^{kappa+1/2}(x^2).
void hermite_functions_1d(double kappa, double x, std::span<double> out);
[[nodiscard]] std::vector<double> hermite_functions_1d(double kappa, int n_max, double x);

using MultiIndex = std::vector<int>;

// Box-truncated tensor basis mu_j <= N, flat index sum_j mu_j (N+1)^{d-1-j}.
class HermiteBasis {
public:
    HermiteBasis(const DunklStructure& s, int degree, TensorGrid grid);

    [[nodiscard]] const DunklStructure& structure() const noexcept { return structure_; }
    [[nodiscard]] int dim() const noexcept { return structure_.dim(); }
    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
    [[nodiscard]] const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
    [[nodiscard]] std::size_t index_of(std::span<const int> mu) const;
    [[nodiscard]] int total_degree(std::size_t i) const noexcept { return total_degree_[i]; }
    [[nodiscard]] const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
    [[nodiscard]] const TensorGrid& grid() const noexcept { return grid_; }
    // table()(k, mu) = phi_mu(x_k) on grid()
    [[nodiscard]] const Eigen::MatrixXd& table() const noexcept { return table_; }

    [[nodiscard]] Eigen::VectorXd evaluate(Point x) const;
    // rows: points of `grid` (any grid of matching dimension), columns: basis functions
    [[nodiscard]] Eigen::MatrixXd evaluate(const TensorGrid& grid) const;
    // rows: points given as a flat array of count*d coordinates
    [[nodiscard]] Eigen::MatrixXd evaluate_points(std::span<const double> flat, double scale = 1.0) const;

    // Quadrature Gram matrix on grid().
    [[nodiscard]] Eigen::MatrixXd gram() const;

private:
    DunklStructure structure_;
    int degree_;
    TensorGrid grid_;
    std::vector<MultiIndex> indices_;
    std::vector<int> total_degree_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd table_;
};

using BasisPtr = std::shared_ptr<const HermiteBasis>;

// Requires grid order >= N + 1 per dimension (at least 2N + 2 nodes).
[[nodiscard]] BasisPtr build_basis(const DunklStructure& s, int degree, const TensorGrid& grid);
[[nodiscard]] BasisPtr build_basis(const DunklStructure& s, int degree);

struct StateVector {
    BasisPtr basis;
    Eigen::VectorXcd coeffs;

    [[nodiscard]] double norm() const { return coeffs.norm(); }
    [[nodiscard]] cplx value_at(Point x) const;
    // values at the nodes of basis->grid()
    [[nodiscard]] Eigen::VectorXcd grid_values() const;

    static StateVector basis_function(BasisPtr b, std::size_t i);
    static StateVector zero(BasisPtr b);
};

// Unit-norm state with iid complex Gaussian coefficients on total degree <= max_degree.
[[nodiscard]] StateVector random_band_limited_state(BasisPtr b, int max_degree, std::uint64_t seed);

// c_mu -> e^{-i t lambda_mu} c_mu
[[nodiscard]] StateVector propagate_hermite(const StateVector& v, double t);

// Generating function sum_mu phi_mu(x) phi_mu(y) w^{|mu|}.
[[nodiscard]] cplx mehler_closed_form(const DunklStructure& s, cplx w, Point x, Point y);
// Same sum truncated at total degree |mu| <= N.
[[nodiscard]] cplx mehler_series(const DunklStructure& s, int N, cplx w, Point x, Point y);

// Kernel of e^{-itH}; throws SingularTimeError for t in (pi/2) Z.
[[nodiscard]] cplx kernel_Kit(const DunklStructure& s, double t, Point x, Point y);

// Point (mu, nu) of S = {nu = 2|mu| + d + 2 gamma} with its value.
struct SurfaceSample {
    std::size_t mu = 0;
    double nu = 0.0;
    cplx value{};
};
[[nodiscard]] std::vector<SurfaceSample> lift_to_surface(const StateVector& u);
[[nodiscard]] cplx extension_operator(const HermiteBasis& b, std::span<const SurfaceSample> g, double t, Point x);

// f(mu, nu) = int int F phi_mu e^{i nu t} h^2 dx dt over (-pi, pi) x R^d, nu in [nu_min, nu_max].
struct FdhTable {
    int nu_min = 0;
    Eigen::MatrixXcd values;  // rows: basis index, columns: nu - nu_min
};
// F: rows are the nodes of `time`, columns the nodes of basis grid.
[[nodiscard]] FdhTable fdh_transform(const HermiteBasis& b, const TimeRule& time, const Eigen::MatrixXcd& F,
                                     int nu_min, int nu_max);

} // namespace dunkl
