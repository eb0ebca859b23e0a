#pragma once

#include "dunkl/structure.hpp"

#include <Eigen/Dense>

#include <limits>
#include <span>
#include <vector>

namespace dunkl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Symmetric Gauss rule for |x|^{2 kappa} e^{-x^2} dx on the real line, 2n nodes.
struct QuadratureRule1D {
    double kappa = 0.0;
    int order = 0;
    std::vector<double> nodes;          // ascending, +- pairs
    std::vector<double> weights;        // |x|^{2 kappa} e^{-x^2} absorbed
    std::vector<double> plain_weights;  // |x|^{2 kappa} absorbed only (weights * e^{x^2})
};

[[nodiscard]] QuadratureRule1D build_rule(double kappa, int n);

// Gauss rule for u^alpha e^{-u} du on (0, inf): nodes u_i, plain weights w_i e^{u_i}, log of w_i.
struct LaguerreRule {
    std::vector<double> nodes;
    std::vector<double> plain_weights;
    std::vector<double> log_weights;
};
[[nodiscard]] LaguerreRule gauss_laguerre(double alpha, int n);

// Plain interval rules; Jacobi weight is (1-x)^a (1+x)^b on [-1, 1].
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
[[nodiscard]] Rule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);
[[nodiscard]] Rule gauss_jacobi(int n, double a, double b);

// Tensor product of 1-D rules, flattened with the last coordinate fastest.
class TensorGrid {
public:
    TensorGrid(const DunklStructure& s, int order);
    TensorGrid(const DunklStructure& s, std::vector<int> orders);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(weights_.size()); }
    [[nodiscard]] Point node(std::size_t k) const {
        return {flat_nodes_.data() + k * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
    }
    [[nodiscard]] const std::vector<double>& flat_nodes() const noexcept { return flat_nodes_; }
    [[nodiscard]] const Eigen::VectorXd& weights() const noexcept { return weights_; }
    [[nodiscard]] const Eigen::VectorXd& plain_weights() const noexcept { return plain_weights_; }
    [[nodiscard]] const std::vector<QuadratureRule1D>& rules() const noexcept { return rules_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }
    [[nodiscard]] const DunklStructure& structure() const noexcept { return structure_; }

    // Nodes scaled by s, plain weights by s^{d + 2 gamma}: integrates F h^2 for F decaying like e^{-|x|^2/s^2}.
    [[nodiscard]] TensorGrid dilated(double s) const;

private:
    void assemble();

    DunklStructure structure_;
    int d_ = 0;
    double scale_ = 1.0;
    std::vector<QuadratureRule1D> rules_;
    std::vector<double> flat_nodes_;
    Eigen::VectorXd weights_;
    Eigen::VectorXd plain_weights_;
};

// (sum_k W_k |f(x_k)|^p)^{1/p} with plain weights, i.e. the L^p norm against h^2 dx. p = inf gives the node max.
[[nodiscard]] double weighted_lp_norm(const TensorGrid& grid, std::span<const double> samples, double p);
[[nodiscard]] double weighted_lp_norm(const TensorGrid& grid, std::span<const cplx> samples, double p);
[[nodiscard]] double weighted_lp_norm(const TensorGrid& grid, const Eigen::VectorXd& samples, double p);

// Time quadrature on a window.
struct TimeRule {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
};
// Midpoint trapezoid: spectrally accurate for integrands periodic over the window.
[[nodiscard]] TimeRule trapezoid_rule(double lo, double hi, int n);
[[nodiscard]] TimeRule gauss_legendre_rule(double lo, double hi, int n);

// || ||F(t_i, .)||_{L^q_kappa} ||_{L^p_t}; F has one row per time node and one column per grid node.
[[nodiscard]] double mixed_norm(const TimeRule& time, const TensorGrid& grid, const Eigen::MatrixXd& F, double p,
                                double q);
// Outer L^p_t norm of precomputed inner norms.
[[nodiscard]] double time_lp_norm(const TimeRule& time, std::span<const double> inner, double p);

} // namespace dunkl
