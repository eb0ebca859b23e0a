#include "dunkl/quadrature.hpp"

#include "dunkl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dunkl {
namespace {

Eigen::VectorXd tridiagonal_eigenvalues(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                                        Eigen::MatrixXd* vectors) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw QuadratureError("tridiagonal eigenproblem did not converge");
    if (vectors) *vectors = es.eigenvectors();
    return es.eigenvalues();
}

// Orthonormal Laguerre recurrence p_{m+1} = ((u - a_m) p_m - b_m p_{m-1}) / b_{m+1} at a single point,
// with rescaling so large u neither overflows nor underflows.
struct LaguerreEval {
    double pn = 0.0;       // p_n (scaled)
    double dpn = 0.0;      // p_n' (same scale)
    double log_sum = 0.0;  // log of sum_{m<n} p_m^2 (unscaled)
};

LaguerreEval laguerre_eval(double alpha, int n, double u) {
    double log_scale = -0.5 * std::lgamma(alpha + 1.0);
    double p_prev = 0.0, p = 1.0, d_prev = 0.0, dp = 0.0, sum = 0.0;
    for (int m = 0; m < n; ++m) {
        sum += p * p;
        const double a = 2.0 * m + alpha + 1.0;
        const double b = std::sqrt(m * (m + alpha));
        const double b_next = std::sqrt((m + 1.0) * (m + alpha + 1.0));
        const double p_next = ((u - a) * p - b * p_prev) / b_next;
        const double d_next = (p + (u - a) * dp - b * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = dp;
        dp = d_next;
        const double big = std::max(std::abs(p), std::abs(p_prev));
        if (big > 1e100) {
            p /= 1e100;
            p_prev /= 1e100;
            dp /= 1e100;
            d_prev /= 1e100;
            sum /= 1e200;
            log_scale += std::log(1e100);
        }
    }
    return {p, dp, std::log(sum) + 2.0 * log_scale};
}

} // namespace

LaguerreRule gauss_laguerre(double alpha, int n) {
    if (n < 1) throw DomainError("gauss_laguerre: order must be >= 1");
    if (!(alpha > -1.0)) throw DomainError("gauss_laguerre: alpha must exceed -1");
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + alpha + 1.0;
    for (int i = 1; i < n; ++i) sub(i - 1) = std::sqrt(i * (i + alpha));
    const Eigen::VectorXd ev = tridiagonal_eigenvalues(diag, sub, nullptr);

    LaguerreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.plain_weights.resize(static_cast<std::size_t>(n));
    rule.log_weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double u = ev(i);
        for (int it = 0; it < 8; ++it) {
            const LaguerreEval e = laguerre_eval(alpha, n, u);
            if (e.dpn == 0.0) break;
            const double step = e.pn / e.dpn;
            u -= step;
            if (std::abs(step) <= 1e-16 * std::abs(u)) break;
        }
        if (!(u > 0.0) || !std::isfinite(u)) throw QuadratureError("gauss_laguerre: node polishing failed");
        const LaguerreEval e = laguerre_eval(alpha, n, u);
        const auto ii = static_cast<std::size_t>(i);
        rule.nodes[ii] = u;
        rule.log_weights[ii] = -e.log_sum;
        rule.plain_weights[ii] = std::exp(u - e.log_sum);
    }
    return rule;
}

QuadratureRule1D build_rule(double kappa, int n) {
    if (!(kappa >= 0.0)) throw DomainError("build_rule: kappa must be >= 0");
    const LaguerreRule lag = gauss_laguerre(kappa - 0.5, n);
    QuadratureRule1D r;
    r.kappa = kappa;
    r.order = n;
    const auto nn = static_cast<std::size_t>(n);
    r.nodes.resize(2 * nn);
    r.weights.resize(2 * nn);
    r.plain_weights.resize(2 * nn);
    for (std::size_t i = 0; i < nn; ++i) {
        const double x = std::sqrt(lag.nodes[i]);
        const double w = 0.5 * std::exp(lag.log_weights[i]);
        const double pw = 0.5 * lag.plain_weights[i];
        r.nodes[nn + i] = x;
        r.nodes[nn - 1 - i] = -x;
        r.weights[nn + i] = r.weights[nn - 1 - i] = w;
        r.plain_weights[nn + i] = r.plain_weights[nn - 1 - i] = pw;
    }
    return r;
}

Rule gauss_legendre(int n, double lo, double hi) {
    Rule r = gauss_jacobi(n, 0.0, 0.0);
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        r.nodes[i] = lo + half * (r.nodes[i] + 1.0);
        r.weights[i] *= half;
    }
    return r;
}

Rule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_jacobi: order must be >= 1");
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        diag(k) = k == 0 ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        double b2;
        if (k == 1)
            b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            b2 = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        sub(k - 1) = std::sqrt(b2);
    }
    Eigen::MatrixXd vec;
    const Eigen::VectorXd ev = tridiagonal_eigenvalues(diag, sub, &vec);
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(ab + 2.0));
    Rule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        r.nodes[static_cast<std::size_t>(i)] = ev(i);
        r.weights[static_cast<std::size_t>(i)] = mu0 * vec(0, i) * vec(0, i);
    }
    return r;
}

TensorGrid::TensorGrid(const DunklStructure& s, int order)
    : TensorGrid(s, std::vector<int>(static_cast<std::size_t>(s.dim()), order)) {}

TensorGrid::TensorGrid(const DunklStructure& s, std::vector<int> orders) : structure_(s), d_(s.dim()) {
    if (static_cast<int>(orders.size()) != d_) throw DomainError("TensorGrid: one order per dimension required");
    for (int j = 0; j < d_; ++j) rules_.push_back(build_rule(s.kappa(j), orders[static_cast<std::size_t>(j)]));
    assemble();
}

void TensorGrid::assemble() {
    std::size_t total = 1;
    for (const auto& r : rules_) total *= r.nodes.size();
    const auto d = static_cast<std::size_t>(d_);
    flat_nodes_.assign(total * d, 0.0);
    weights_.resize(static_cast<Eigen::Index>(total));
    plain_weights_.resize(static_cast<Eigen::Index>(total));
    const double plain_factor = std::pow(scale_, structure_.d_eff());
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t rem = k;
        for (std::size_t j = d; j-- > 0;) {
            idx[j] = rem % rules_[j].nodes.size();
            rem /= rules_[j].nodes.size();
        }
        double w = 1.0, pw = 1.0, r2 = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double x = scale_ * rules_[j].nodes[idx[j]];
            flat_nodes_[k * d + j] = x;
            r2 += x * x;
            w *= rules_[j].weights[idx[j]];
            pw *= rules_[j].plain_weights[idx[j]];
        }
        plain_weights_(static_cast<Eigen::Index>(k)) = pw * plain_factor;
        weights_(static_cast<Eigen::Index>(k)) = scale_ == 1.0 ? w : pw * plain_factor * std::exp(-r2);
    }
}

TensorGrid TensorGrid::dilated(double s) const {
    if (!(s > 0.0)) throw DomainError("TensorGrid::dilated: scale must be positive");
    TensorGrid g = *this;
    g.scale_ = scale_ * s;
    g.assemble();
    return g;
}

namespace {
template <class F>
double lp_impl(const TensorGrid& grid, std::size_t n, F&& magnitude, double p) {
    if (n != grid.size()) throw DomainError("weighted_lp_norm: samples not aligned with grid");
    if (!(p >= 1.0)) throw DomainError("weighted_lp_norm: p must be >= 1");
    const auto& w = grid.plain_weights();
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double a = magnitude(k);
            if (!std::isfinite(a)) throw DomainError("weighted_lp_norm: non-finite sample");
            m = std::max(m, a);
        }
        return m;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = magnitude(k);
        if (!std::isfinite(a)) throw DomainError("weighted_lp_norm: non-finite sample");
        if (a == 0.0) continue;
        s += w(static_cast<Eigen::Index>(k)) * (p == 1.0 ? a : p == 2.0 ? a * a : std::pow(a, p));
    }
    return p == 1.0 ? s : std::pow(s, 1.0 / p);
}
} // namespace

double weighted_lp_norm(const TensorGrid& grid, std::span<const double> samples, double p) {
    return lp_impl(grid, samples.size(), [&](std::size_t k) { return std::abs(samples[k]); }, p);
}

double weighted_lp_norm(const TensorGrid& grid, std::span<const cplx> samples, double p) {
    return lp_impl(grid, samples.size(), [&](std::size_t k) { return std::abs(samples[k]); }, p);
}

double weighted_lp_norm(const TensorGrid& grid, const Eigen::VectorXd& samples, double p) {
    return weighted_lp_norm(grid, std::span<const double>(samples.data(), static_cast<std::size_t>(samples.size())), p);
}

TimeRule trapezoid_rule(double lo, double hi, int n) {
    if (n < 1 || !(hi > lo)) throw DomainError("trapezoid_rule: need n >= 1 and hi > lo");
    TimeRule r{lo, hi, {}, {}};
    const double h = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
        r.nodes.push_back(lo + (i + 0.5) * h);
        r.weights.push_back(h);
    }
    return r;
}

TimeRule gauss_legendre_rule(double lo, double hi, int n) {
    if (n < 1 || !(hi > lo)) throw DomainError("gauss_legendre_rule: need n >= 1 and hi > lo");
    Rule g = gauss_legendre(n, lo, hi);
    return {lo, hi, std::move(g.nodes), std::move(g.weights)};
}

double time_lp_norm(const TimeRule& time, std::span<const double> inner, double p) {
    if (inner.size() != time.size()) throw DomainError("time_lp_norm: shape mismatch");
    if (!(p >= 1.0)) throw DomainError("time_lp_norm: p must be >= 1");
    if (std::isinf(p)) return inner.empty() ? 0.0 : *std::max_element(inner.begin(), inner.end());
    double s = 0.0;
    for (std::size_t i = 0; i < inner.size(); ++i) s += time.weights[i] * std::pow(inner[i], p);
    return std::pow(s, 1.0 / p);
}

double mixed_norm(const TimeRule& time, const TensorGrid& grid, const Eigen::MatrixXd& F, double p, double q) {
    if (static_cast<std::size_t>(F.rows()) != time.size() || static_cast<std::size_t>(F.cols()) != grid.size())
        throw DomainError("mixed_norm: sample shape mismatch");
    std::vector<double> inner(time.size());
    for (Eigen::Index i = 0; i < F.rows(); ++i) {
        const Eigen::VectorXd row = F.row(i).transpose();
        inner[static_cast<std::size_t>(i)] = weighted_lp_norm(grid, row, q);
    }
    return time_lp_norm(time, inner, p);
}

} // namespace dunkl
