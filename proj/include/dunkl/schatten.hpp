#pragma once

#include "dunkl/operator_matrix.hpp"
#include "dunkl/quadrature.hpp"

#include <functional>

namespace dunkl {

// sigma-norms; p = inf gives the largest singular value.
[[nodiscard]] Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a);
[[nodiscard]] double schatten_norm(const Eigen::MatrixXcd& a, double p);
[[nodiscard]] double schatten_norm(const OperatorMatrix& a, double p);

// |A| = (A* A)^{1/2}
[[nodiscard]] Eigen::MatrixXcd operator_modulus(const Eigen::MatrixXcd& a);

// rho(x) = sum_{mu nu} a(mu, nu) phi_mu(x) phi_nu(x), real part, at the rows of phi.
[[nodiscard]] Eigen::VectorXd density(const OperatorMatrix& g, const Eigen::MatrixXd& phi);
[[nodiscard]] Eigen::VectorXd density(const OperatorMatrix& g, const TensorGrid& grid);

enum class Propagator { hermite, laplacian };

// e^{-itH} g e^{itH}
[[nodiscard]] OperatorMatrix conjugate_hermite(const OperatorMatrix& g, double t);

// Density of e^{-itP} g e^{itP} at the nodes of `grid` (physical coordinates).
// The Laplacian case runs through the lens map: P = -Delta at time t is the Hermite rotation by arctan(2t)/2.
[[nodiscard]] Eigen::VectorXd evolved_density(const OperatorMatrix& g, double t, Propagator P,
                                              const TensorGrid& grid);

using Profile = std::function<cplx(Point)>;

// Compression of multiplication by f, by quadrature on `grid`.
[[nodiscard]] OperatorMatrix multiplication_matrix(const BasisPtr& b, const Profile& f, const TensorGrid& grid);
// Same from samples of f at the nodes of `grid`.
[[nodiscard]] OperatorMatrix multiplication_matrix(const BasisPtr& b, const Eigen::VectorXcd& samples,
                                                   const TensorGrid& grid);
// Default grid for multiplication operators: twice the basis order per dimension.
[[nodiscard]] TensorGrid oversampled_grid(const HermiteBasis& b);

// B = int e^{itP} V(t, .) e^{-itP} dt and its Schatten-2q' norm.
// Samples form: V has one row per time node and one column per node of `grid`, P = hermite.
[[nodiscard]] OperatorMatrix dual_operator(const BasisPtr& b, const TimeRule& time, const TensorGrid& grid,
                                           const Eigen::MatrixXd& V);
[[nodiscard]] double dual_functional(const BasisPtr& b, const TimeRule& time, const TensorGrid& grid,
                                     const Eigen::MatrixXd& V, double qprime);
// Callable form V(t, x); for P = laplacian the real line in t is reached through v = tan 2 tau, tau in `time`.
using SpaceTimeFunction = std::function<double(double, Point)>;
[[nodiscard]] OperatorMatrix dual_operator(const BasisPtr& b, const TimeRule& time, const TensorGrid& grid,
                                           const SpaceTimeFunction& V, Propagator P);

// f(alpha x + beta p), p = -i T, as e^{-isDelta} M_{f(alpha .)} e^{isDelta} with s = beta / (2 alpha).
// alpha = 0 uses the quarter-period Hermite rotation that exchanges x and p.
[[nodiscard]] OperatorMatrix mixed_xp_operator(const BasisPtr& b, const Profile& f, double alpha, double beta,
                                               const TensorGrid& grid);
[[nodiscard]] OperatorMatrix mixed_xp_operator(const BasisPtr& b, const Profile& f, double alpha, double beta);

// Profile norms against h^2 dx. `width` is the Gaussian decay scale used to place the quadrature nodes.
[[nodiscard]] double profile_lp_norm(const DunklStructure& s, const Profile& f, double r, double width = 1.0);

struct KssResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double determinant = 0.0;
    [[nodiscard]] double ratio() const { return rhs == 0.0 ? 0.0 : lhs / rhs; }
};

// lhs = ||f(alpha x + beta p) g(gamma x + delta p)||_{S^r},
// rhs = M^{2/r} ||f||_r ||g||_r / |D|^{(d + 2 gamma)/r} (r = inf: sup norms), D = alpha delta - beta gamma.
[[nodiscard]] KssResult kss_check(const BasisPtr& b, const Profile& f, const Profile& g, double alpha, double beta,
                                  double gamma, double delta, double r, double width = 1.0);

} // namespace dunkl
