#pragma once

#include "dunkl/schatten.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dunkl {

// One-dimensional Dunkl transform F f(xi) = M int f(x) E(-i xi, x) |x|^{2 kappa} dx by quadrature,
// with the kernel matrix precomputed between an x-rule and a xi-rule.
class DunklTransform1D {
public:
    DunklTransform1D(const DunklStructure& s, const TensorGrid& x_grid, const TensorGrid& xi_grid);

    [[nodiscard]] const TensorGrid& x_grid() const noexcept { return x_; }
    [[nodiscard]] const TensorGrid& xi_grid() const noexcept { return xi_; }
    // samples at the x nodes -> transform at the xi nodes
    [[nodiscard]] Eigen::VectorXcd forward(const Eigen::VectorXcd& f) const;
    // samples at the xi nodes -> M int F(xi) E(i xi, x) |xi|^{2 kappa} dxi at the x nodes
    [[nodiscard]] Eigen::VectorXcd inverse(const Eigen::VectorXcd& F) const;

private:
    double m_;
    TensorGrid x_, xi_;
    Eigen::MatrixXcd e_;  // E(-i xi_j, x_k), rows xi
};

// Interaction profile w together with its Dunkl transform when known in closed form.
struct InteractionProfile {
    std::function<double(double)> w;
    std::function<cplx(double)> transform;  // empty: transform by quadrature
};
// strength * exp(-x^2 / (2 width^2)), normalized so that int w |x|^{2 kappa} dx = strength.
[[nodiscard]] InteractionProfile gaussian_interaction(double kappa, double strength, double width);

// w *_kappa f = int Fw(xi) Ff(xi) E(i x, xi) |xi|^{2 kappa} dxi, i.e. F(w *_kappa f) = Fw Ff / M.
// kappa = 0 gives the ordinary convolution on the line.
class DunklConvolution {
public:
    // `x_grid` carries the density samples; the xi-rule is sized from it. Use order >= 4(N + 1) for degree-N states.
    DunklConvolution(const DunklStructure& s, const TensorGrid& x_grid, const InteractionProfile& w);

    [[nodiscard]] const DunklTransform1D& transform() const noexcept { return t_; }
    // Potential W = w *_kappa rho at the x nodes (real part; imag_residual() reports the discarded part).
    [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& rho) const;
    [[nodiscard]] double imag_residual() const noexcept { return imag_; }

private:
    DunklTransform1D t_;
    Eigen::VectorXcd w_hat_;
    mutable double imag_ = 0.0;
};

// Throws DomainError for d > 1.
[[nodiscard]] Eigen::VectorXd interaction_potential(const DunklStructure& s, const TensorGrid& x_grid,
                                                    const Eigen::VectorXd& rho, const InteractionProfile& w);

enum class InteractionKind { dunkl_convolution, multiplication };

struct HartreeConfig {
    OperatorMatrix gamma0;
    double T = 0.1;
    int steps = 16;  // Chebyshev-Lobatto time nodes on [0, T]
    InteractionKind interaction = InteractionKind::dunkl_convolution;
    InteractionProfile w{};  // dunkl_convolution
    double coupling = 1.0;
    Profile potential{};     // multiplication: fixed external potential V(x)
    double q = 1.5;
    double tolerance = 1e-8;
    int max_iterations = 50;
};

struct HartreeTrajectory {
    std::vector<double> times;
    std::vector<OperatorMatrix> gamma;  // Schroedinger picture
};

struct IterationRecord {
    int iteration = 0;
    double residual = 0.0;          // sup_t ||gamma_new(t) - gamma_old(t)||_{S^{2q/(q+1)}}
    double contraction = 0.0;       // residual / previous residual (0 for the first)
    double trace_drift = 0.0;       // sup_t |Tr gamma(t) - Tr gamma0|
    double self_adjoint_defect = 0.0;
    double schatten_max = 0.0;      // sup_t ||gamma(t)||_{S^{2q/(q+1)}}
};

struct HartreeResult {
    HartreeTrajectory trajectory;
    std::vector<IterationRecord> log;
    bool converged = false;
    double potential_imag_residual = 0.0;
};

class HartreeSolver {
public:
    explicit HartreeSolver(HartreeConfig cfg);

    [[nodiscard]] const HartreeConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
    // e^{-itH} gamma0 e^{itH} at every node
    [[nodiscard]] HartreeTrajectory free_trajectory() const;
    // Phi_1 applied once: the commutator term is integrated in the interaction picture with the
    // spectral integration matrix of the Lobatto nodes.
    [[nodiscard]] HartreeTrajectory picard_step(const HartreeTrajectory& traj) const;
    [[nodiscard]] HartreeResult solve() const;
    [[nodiscard]] double schatten_exponent() const noexcept { return 2.0 * cfg_.q / (cfg_.q + 1.0); }
    [[nodiscard]] double potential_imag_residual() const;

private:
    [[nodiscard]] OperatorMatrix potential_matrix(const OperatorMatrix& g) const;

    HartreeConfig cfg_;
    BasisPtr basis_;
    TensorGrid grid_;
    Eigen::MatrixXd phi_;
    std::vector<double> times_;
    Eigen::MatrixXd integ_;  // integ_(i, j) = int_0^{t_i} l_j(s) ds
    std::optional<DunklConvolution> conv_;
    Eigen::VectorXcd v_samples_;
};

[[nodiscard]] HartreeTrajectory picard_step(const HartreeTrajectory& traj, const HartreeConfig& cfg);
[[nodiscard]] HartreeResult solve_hartree(const HartreeConfig& cfg);
[[nodiscard]] std::string to_string(InteractionKind k);

} // namespace dunkl
