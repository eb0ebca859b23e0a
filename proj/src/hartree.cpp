#include "dunkl/hartree.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/kernel.hpp"

#include <cmath>
#include <numbers>

namespace dunkl {

DunklTransform1D::DunklTransform1D(const DunklStructure& s, const TensorGrid& x_grid, const TensorGrid& xi_grid)
    : m_(s.m_kappa()), x_(x_grid), xi_(xi_grid) {
    if (s.dim() != 1 || x_grid.dim() != 1 || xi_grid.dim() != 1)
        throw DomainError("DunklTransform1D: only d = 1 is supported");
    const double kappa = s.kappa(0);
    const auto nx = static_cast<Eigen::Index>(x_.size());
    const auto nxi = static_cast<Eigen::Index>(xi_.size());
    e_.resize(nxi, nx);
    for (Eigen::Index j = 0; j < nxi; ++j)
        for (Eigen::Index k = 0; k < nx; ++k)
            e_(j, k) = dunkl_kernel_1d(kappa, cplx(0.0, -xi_.node(static_cast<std::size_t>(j))[0]),
                                       x_.node(static_cast<std::size_t>(k))[0]);
}

Eigen::VectorXcd DunklTransform1D::forward(const Eigen::VectorXcd& f) const {
    if (static_cast<std::size_t>(f.size()) != x_.size()) throw DomainError("DunklTransform1D: sample size mismatch");
    return m_ * (e_ * x_.plain_weights().cast<cplx>().cwiseProduct(f));
}

Eigen::VectorXcd DunklTransform1D::inverse(const Eigen::VectorXcd& F) const {
    if (static_cast<std::size_t>(F.size()) != xi_.size()) throw DomainError("DunklTransform1D: sample size mismatch");
    // E(i xi, x) = conj E(-i xi, x) for real arguments
    return m_ * (e_.adjoint() * xi_.plain_weights().cast<cplx>().cwiseProduct(F));
}

InteractionProfile gaussian_interaction(double kappa, double strength, double width) {
    if (!(width > 0.0)) throw DomainError("gaussian_interaction: width must be positive");
    const double a = kappa + 0.5;
    const double amp = strength / (std::pow(2.0 * width * width, a) * std::tgamma(a));
    const double w_hat0 = amp * std::pow(width, 2.0 * a);
    return {[amp, width](double x) { return amp * std::exp(-x * x / (2.0 * width * width)); },
            [w_hat0, width](double xi) { return cplx(w_hat0 * std::exp(-0.5 * width * width * xi * xi)); }};
}

namespace {

// The transform of a density built from degree-N Hermite functions decays like e^{-xi^2/4};
// the xi-rule reuses the x order on a sqrt(2)-dilated scale. The forward quadrature of rho E(-i xi, x)
// needs about twice the oversampled order before narrow profiles stop picking up its error.
TensorGrid xi_rule_for(const TensorGrid& x_grid) {
    return x_grid.dilated(std::sqrt(2.0));
}

} // namespace

DunklConvolution::DunklConvolution(const DunklStructure& s, const TensorGrid& x_grid, const InteractionProfile& w)
    : t_(s, x_grid, xi_rule_for(x_grid)) {
    const TensorGrid& xi = t_.xi_grid();
    w_hat_.resize(static_cast<Eigen::Index>(xi.size()));
    if (w.transform) {
        for (std::size_t j = 0; j < xi.size(); ++j) w_hat_(static_cast<Eigen::Index>(j)) = w.transform(xi.node(j)[0]);
    } else {
        const TensorGrid fine(s, 200);
        const DunklTransform1D ft(s, fine, xi);
        Eigen::VectorXcd samples(static_cast<Eigen::Index>(fine.size()));
        for (std::size_t k = 0; k < fine.size(); ++k) samples(static_cast<Eigen::Index>(k)) = w.w(fine.node(k)[0]);
        w_hat_ = ft.forward(samples);
    }
}

Eigen::VectorXd DunklConvolution::apply(const Eigen::VectorXd& rho) const {
    const Eigen::VectorXcd F = t_.forward(rho.cast<cplx>());
    const double m = t_.x_grid().structure().m_kappa();
    const Eigen::VectorXcd W = t_.inverse(w_hat_.cwiseProduct(F)) / m;
    const double scale = W.cwiseAbs().maxCoeff();
    imag_ = scale == 0.0 ? 0.0 : W.imag().cwiseAbs().maxCoeff() / scale;
    return W.real();
}

Eigen::VectorXd interaction_potential(const DunklStructure& s, const TensorGrid& x_grid, const Eigen::VectorXd& rho,
                                      const InteractionProfile& w) {
    if (s.dim() != 1) throw DomainError("interaction_potential: only d = 1 is supported");
    return DunklConvolution(s, x_grid, w).apply(rho);
}

std::string to_string(InteractionKind k) {
    return k == InteractionKind::dunkl_convolution ? "dunkl_convolution" : "multiplication";
}

namespace {

std::vector<double> lobatto_times(double T, int n) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = 0.5 * T * (1.0 - std::cos(std::numbers::pi * i / (n - 1)));
    return t;
}

// integ(i, j) = int_0^{t_i} l_j(s) ds for the Lagrange basis on `t`; exact by n-point Gauss-Legendre.
Eigen::MatrixXd spectral_integration(const std::vector<double>& t) {
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::VectorXd bw(n);
    for (Eigen::Index j = 0; j < n; ++j) bw(j) = ((j % 2) ? -1.0 : 1.0) * ((j == 0 || j == n - 1) ? 0.5 : 1.0);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) {
        const Rule g = gauss_legendre(static_cast<int>(n), 0.0, t[static_cast<std::size_t>(i)]);
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
            const double s = g.nodes[k];
            Eigen::VectorXd terms(n);
            for (Eigen::Index j = 0; j < n; ++j) terms(j) = bw(j) / (s - t[static_cast<std::size_t>(j)]);
            out.row(i) += g.weights[k] * terms.transpose() / terms.sum();
        }
    }
    return out;
}

} // namespace

HartreeSolver::HartreeSolver(HartreeConfig cfg)
    : cfg_(std::move(cfg)), basis_(cfg_.gamma0.basis),
      grid_(basis_ ? TensorGrid(basis_->structure(), 4 * (basis_->degree() + 1))
                   : throw ConfigError("hartree: gamma0 has no basis")) {
    if (!cfg_.gamma0.is_self_adjoint(1e-12)) throw ConfigError("hartree: gamma0 must be self-adjoint");
    if (!(cfg_.T > 0.0) || cfg_.T > 1.0) throw ConfigError("hartree: horizon T must lie in (0, 1]");
    if (cfg_.steps < 2) throw ConfigError("hartree: at least two time nodes");
    if (!(cfg_.q >= 1.0)) throw ConfigError("hartree: q >= 1");
    phi_ = basis_->evaluate(grid_);
    times_ = lobatto_times(cfg_.T, cfg_.steps);
    integ_ = spectral_integration(times_);
    if (cfg_.interaction == InteractionKind::dunkl_convolution) {
        if (basis_->structure().dim() != 1) throw DomainError("hartree: Dunkl convolution needs d = 1");
        if (!cfg_.w.w && !cfg_.w.transform) throw ConfigError("hartree: missing interaction profile");
        conv_.emplace(basis_->structure(), grid_, cfg_.w);
    } else {
        if (!cfg_.potential) throw ConfigError("hartree: missing external potential");
        v_samples_.resize(static_cast<Eigen::Index>(grid_.size()));
        for (std::size_t k = 0; k < grid_.size(); ++k)
            v_samples_(static_cast<Eigen::Index>(k)) = cfg_.coupling * cfg_.potential(grid_.node(k));
    }
}

OperatorMatrix HartreeSolver::potential_matrix(const OperatorMatrix& g) const {
    if (conv_) {
        const Eigen::VectorXd W = cfg_.coupling * conv_->apply(density(g, phi_));
        return multiplication_matrix(basis_, Eigen::VectorXcd(W.cast<cplx>()), grid_);
    }
    return multiplication_matrix(basis_, v_samples_, grid_);
}

double HartreeSolver::potential_imag_residual() const { return conv_ ? conv_->imag_residual() : 0.0; }

HartreeTrajectory HartreeSolver::free_trajectory() const {
    HartreeTrajectory out{times_, {}};
    out.gamma.reserve(times_.size());
    for (const double t : times_) out.gamma.push_back(conjugate_hermite(cfg_.gamma0, t));
    return out;
}

HartreeTrajectory HartreeSolver::picard_step(const HartreeTrajectory& traj) const {
    if (traj.gamma.size() != times_.size()) throw DomainError("picard_step: trajectory not sampled on the solver nodes");
    const std::size_t n = times_.size();
    // integrand in the interaction picture: e^{isH} [W(s), gamma(s)] e^{-isH}
    std::vector<Eigen::MatrixXcd> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        const OperatorMatrix W = potential_matrix(traj.gamma[j]);
        const Eigen::MatrixXcd c = W.a * traj.gamma[j].a - traj.gamma[j].a * W.a;
        g[j] = conjugate_hermite({basis_, c}, -times_[j]).a;
    }
    HartreeTrajectory out{times_, {}};
    out.gamma.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::MatrixXcd acc = cfg_.gamma0.a;
        for (std::size_t j = 0; j < n; ++j) {
            const double w = integ_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (w != 0.0) acc -= cplx(0.0, w) * g[j];
        }
        out.gamma.push_back(conjugate_hermite({basis_, acc}, times_[i]));
    }
    return out;
}

HartreeResult HartreeSolver::solve() const {
    HartreeResult res;
    res.trajectory = free_trajectory();
    const double r = schatten_exponent();
    const cplx tr0 = cfg_.gamma0.trace();
    double previous = 0.0;
    for (int it = 1; it <= cfg_.max_iterations; ++it) {
        HartreeTrajectory next = picard_step(res.trajectory);
        IterationRecord rec;
        rec.iteration = it;
        for (std::size_t i = 0; i < next.gamma.size(); ++i) {
            const OperatorMatrix& gi = next.gamma[i];
            rec.residual = std::max(rec.residual, schatten_norm(gi.a - res.trajectory.gamma[i].a, r));
            rec.trace_drift = std::max(rec.trace_drift, std::abs(gi.trace() - tr0));
            rec.self_adjoint_defect = std::max(rec.self_adjoint_defect, gi.self_adjoint_defect());
            rec.schatten_max = std::max(rec.schatten_max, schatten_norm(gi, r));
        }
        rec.contraction = previous > 0.0 ? rec.residual / previous : 0.0;
        previous = rec.residual;
        res.log.push_back(rec);
        res.trajectory = std::move(next);
        res.potential_imag_residual = std::max(res.potential_imag_residual, potential_imag_residual());
        if (rec.residual < cfg_.tolerance) {
            res.converged = true;
            break;
        }
    }
    return res;
}

HartreeTrajectory picard_step(const HartreeTrajectory& traj, const HartreeConfig& cfg) {
    return HartreeSolver(cfg).picard_step(traj);
}

HartreeResult solve_hartree(const HartreeConfig& cfg) { return HartreeSolver(cfg).solve(); }

} // namespace dunkl
