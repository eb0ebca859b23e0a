#include "dunkl/free_propagator.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/kernel.hpp"

#include <cmath>
#include <numbers>

namespace dunkl {
namespace {

double norm2(Point x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

Eigen::VectorXd densities(const Eigen::VectorXcd& psi) { return psi.cwiseAbs2(); }

} // namespace

double heat_kernel(const DunklStructure& s, double t, Point x, Point y) {
    if (!(t > 0.0)) throw DomainError("heat_kernel: t must be positive");
    const ScaledValue e = dunkl_kernel_scaled(s, 1.0 / (2.0 * t), x, y);
    return s.m_kappa() * std::pow(2.0 * t, -s.half_dim()) *
           std::exp(-(norm2(x) + norm2(y)) / (4.0 * t) + e.log_scale) * e.mantissa.real();
}

cplx kernel_Lit(const DunklStructure& s, cplx t, Point x, Point y) {
    if (t == cplx(0.0)) throw SingularTimeError(0.0, 0.0);
    const cplx two_it = cplx(0.0, 2.0) * t;
    const cplx pre = s.m_kappa() * std::pow(two_it, -s.half_dim());
    const cplx expo = cplx(0.0, 1.0) * (norm2(x) + norm2(y)) / (4.0 * t);
    const ScaledValue e = dunkl_kernel_scaled(s, 1.0 / two_it, x, y);
    return pre * std::exp(expo + e.log_scale) * e.mantissa;
}

cplx kernel_Lit(const DunklStructure& s, double t, Point x, Point y) {
    if (t == 0.0) throw SingularTimeError(0.0, 0.0);
    return kernel_Lit(s, cplx(t, 0.0), x, y);
}

LensMap::LensMap(const DunklStructure& s, double v_)
    : v(v_), t_hermite(0.5 * std::atan(v_)), scale(std::sqrt(1.0 + v_ * v_)),
      amplitude(std::pow(1.0 + v_ * v_, 0.25 * s.d_eff())), phase_param(0.5 * v_) {}

double lens_relation_residual(const DunklStructure& s, double v, Point x, Point y) {
    if (!(v > 0.0)) throw DomainError("lens_relation_residual: v must be positive");
    const LensMap lens(s, v);
    const cplx k = kernel_Kit(s, lens.t_hermite, x, y);
    std::vector<double> xs(x.begin(), x.end());
    for (double& c : xs) c *= lens.scale;
    const cplx l = kernel_Lit(s, lens.phase_param, xs, y);
    const cplx rhs = lens.amplitude * std::exp(cplx(0.0, -0.5 * v * norm2(x))) * l;
    return std::abs(k - rhs);
}

double lens_relation_relative_residual(const DunklStructure& s, double v, Point x, Point y) {
    const LensMap lens(s, v);
    return lens_relation_residual(s, v, x, y) / std::abs(kernel_Kit(s, lens.t_hermite, x, y));
}

Eigen::VectorXcd free_evolve_via_lens(double v, const StateVector& u, std::span<const double> points) {
    const HermiteBasis& b = *u.basis;
    const auto d = static_cast<std::size_t>(b.dim());
    const std::size_t count = points.size() / d;
    if (v == 0.0) return b.evaluate_points(points).cast<cplx>() * u.coeffs;
    const LensMap lens(b.structure(), v);
    const StateVector w = propagate_hermite(u, lens.t_hermite);
    const Eigen::VectorXcd inner = b.evaluate_points(points, 1.0 / lens.scale).cast<cplx>() * w.coeffs;
    Eigen::VectorXcd out(static_cast<Eigen::Index>(count));
    for (std::size_t k = 0; k < count; ++k) {
        const double r2 = norm2(points.subspan(k * d, d));
        const double phase = v * r2 / (2.0 * (1.0 + v * v));
        out(static_cast<Eigen::Index>(k)) = inner(static_cast<Eigen::Index>(k)) * std::exp(cplx(0.0, phase)) / lens.amplitude;
    }
    return out;
}

namespace {

template <class Kernel>
Eigen::VectorXcd kernel_apply(const StateVector& u, std::span<const double> points, const TensorGrid& grid,
                              Kernel&& kernel) {
    const HermiteBasis& b = *u.basis;
    const auto d = static_cast<std::size_t>(b.dim());
    const std::size_t count = points.size() / d;
    const Eigen::VectorXcd uz = b.evaluate(grid).cast<cplx>() * u.coeffs;
    const auto& w = grid.plain_weights();
    Eigen::VectorXcd out(static_cast<Eigen::Index>(count));
    for (std::size_t k = 0; k < count; ++k) {
        cplx acc = 0.0;
        const Point y = points.subspan(k * d, d);
        for (std::size_t m = 0; m < grid.size(); ++m) {
            const auto mm = static_cast<Eigen::Index>(m);
            if (uz(mm) == cplx(0.0)) continue;
            acc += w(mm) * kernel(y, grid.node(m)) * uz(mm);
        }
        out(static_cast<Eigen::Index>(k)) = acc;
    }
    return out;
}

} // namespace

Eigen::VectorXcd free_evolve_via_kernel(double s_time, const StateVector& u, std::span<const double> points,
                                        const TensorGrid& grid) {
    if (std::abs(s_time) < 0.05)
        throw DomainError("free_evolve_via_kernel: |t| < 0.05 is reserved for the lens path");
    const DunklStructure& s = u.basis->structure();
    return kernel_apply(u, points, grid, [&](Point y, Point z) { return kernel_Lit(s, s_time, y, z); });
}

Eigen::VectorXcd hermite_evolve_via_kernel(double t, const StateVector& u, std::span<const double> points,
                                           const TensorGrid& grid) {
    const DunklStructure& s = u.basis->structure();
    return kernel_apply(u, points, grid, [&](Point y, Point z) { return kernel_Kit(s, t, y, z); });
}

NormTransport norm_transport_check(const StateVector& u, double p, double q, const NormTransportOptions& opt) {
    if (!(p >= 1.0) || std::isinf(p) || !(q >= 1.0)) throw DomainError("norm_transport_check: need finite p >= 1, q >= 1");
    const HermiteBasis& b = *u.basis;
    const DunklStructure& s = b.structure();
    const int order = opt.space_order > 0 ? opt.space_order : 2 * b.degree() + 2;
    const TensorGrid grid(s, order);
    const Eigen::MatrixXcd phi = b.evaluate(grid).cast<cplx>();
    const double pi = std::numbers::pi;

    auto spectral_phi = [&](double t) {
        const StateVector w = propagate_hermite(u, t);
        return weighted_lp_norm(grid, densities(phi * w.coeffs), q);
    };
    // ||rho of e^{is Delta} u||_q at s = v/2, sampled at the physical points sqrt(1+v^2) x_k.
    auto free_phi = [&](double v) {
        const TensorGrid phys = grid.dilated(std::sqrt(1.0 + v * v));
        const Eigen::VectorXcd vals = free_evolve_via_lens(v, u, phys.flat_nodes());
        return weighted_lp_norm(phys, densities(vals), q);
    };

    NormTransport out;
    if (u.coeffs.norm() == 0.0) return out;
    const TimeRule half = gauss_legendre_rule(0.0, pi / 4.0, opt.time_nodes);
    for (std::size_t i = 0; i < half.size(); ++i) {
        const double t = half.nodes[i];
        const double v = std::tan(2.0 * t);
        out.lhs += half.weights[i] * std::pow(spectral_phi(t), p);
        // ds = (1 + v^2) dt with s = v / 2
        out.rhs += half.weights[i] * (1.0 + v * v) * std::pow(free_phi(v), p);
    }
    const TimeRule window = trapezoid_rule(-pi, pi, 4 * opt.time_nodes);
    for (std::size_t i = 0; i < window.size(); ++i)
        out.full_window += window.weights[i] * std::pow(spectral_phi(window.nodes[i]), p);
    const TimeRule period = trapezoid_rule(-pi / 4.0, pi / 4.0, opt.time_nodes);
    for (std::size_t i = 0; i < period.size(); ++i) {
        const double v = std::tan(2.0 * period.nodes[i]);
        out.full_line += period.weights[i] * (1.0 + v * v) * std::pow(free_phi(v), p);
    }
    return out;
}

} // namespace dunkl
