#include "dunkl/mhls.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace dunkl {

HlsProfile HlsProfile::dilated(double lambda) const {
    if (!(lambda > 0.0)) throw DomainError("HlsProfile::dilated: lambda must be positive");
    return {[g = f, lambda](double t) { return g(t / lambda); }, lo * lambda, hi * lambda};
}

HlsProfile indicator_profile(double lo, double hi) { return {[](double) { return 1.0; }, lo, hi}; }

void validate_hls_exponents(const HlsExponents& e) {
    const auto n = static_cast<Eigen::Index>(e.size());
    if (e.beta.rows() != n || e.beta.cols() != n) throw DomainError("mhls: beta must be N x N");
    double inv = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double r = e.r[static_cast<std::size_t>(k)];
        if (!(r > 1.0)) throw DomainError("mhls: r_k must exceed 1");
        inv += 1.0 / r;
        if (e.beta(k, k) != 0.0) throw DomainError("mhls: beta_ii must vanish");
        for (Eigen::Index i = 0; i < n; ++i) {
            if (e.beta(i, k) != e.beta(k, i)) throw DomainError("mhls: beta must be symmetric");
            if (e.beta(i, k) < 0.0 || e.beta(i, k) >= 1.0) throw DomainError("mhls: beta_ij outside [0, 1)");
        }
        if (std::abs(e.beta.col(k).sum() - 2.0 * (r - 1.0) / r) > 1e-12)
            throw DomainError("mhls: sum_i beta_ik != 2(r_k - 1)/r_k");
    }
    if (!(inv > 1.0)) throw DomainError("mhls: sum 1/r_k must exceed 1");
}

HlsExponents symmetric_hls_exponents(int N, double r) {
    if (N < 2) throw DomainError("symmetric_hls_exponents: N >= 2");
    const double b = 2.0 * (r - 1.0) / (r * (N - 1));
    HlsExponents e{Eigen::MatrixXd::Constant(N, N, b), std::vector<double>(static_cast<std::size_t>(N), r)};
    e.beta.diagonal().setZero();
    return e;
}

namespace {

// int_0^L g(rho) rho^e drho = (L/2)^{e+1} sum w_i g(rho_i)
struct PowerRule {
    Rule base;
    double e;
    explicit PowerRule(int n, double ex) : base(gauss_jacobi(n, 0.0, ex)), e(ex) {}
};

// Base point a in [A, B] carrying the factor (B - a)^c left over from the gap integrals:
// nodes in a, weights include (B - a)^c and da.
Rule base_point_rule(int n, double A, double B, double c) {
    Rule r = gauss_jacobi(n, c, 0.0);
    const double h = 0.5 * (B - A);
    const double scale = h * std::pow(h, c);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        r.nodes[i] = A + h * (1.0 + r.nodes[i]);
        r.weights[i] *= scale;
    }
    return r;
}

double integral_two(std::span<const HlsProfile> f, const HlsExponents& ex, int n) {
    const double A = std::min(f[0].lo, f[1].lo);
    const double B = std::max(f[0].hi, f[1].hi);
    const double beta = ex.beta(0, 1);
    const Rule outer = base_point_rule(n, A, B, 1.0 - beta);
    const PowerRule gap(n, -beta);
    double total = 0.0;
    for (const auto& [first, second] : {std::array<int, 2>{0, 1}, std::array<int, 2>{1, 0}}) {
        for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
            const double a = outer.nodes[i];
            const double fa = f[first](a);
            const double L = B - a;
            if (fa == 0.0 || L <= 0.0) continue;
            double s = 0.0;
            for (std::size_t k = 0; k < gap.base.nodes.size(); ++k)
                s += gap.base.weights[k] * f[second](a + 0.5 * L * (1.0 + gap.base.nodes[k]));
            total += outer.weights[i] * fa * std::pow(0.5, 1.0 - beta) * s;
        }
    }
    return total;
}

// Ordered t_a < t_b < t_c: a = t_a, rho = t_c - t_a, w = (t_b - t_a) / rho.
// Kernel rho^{1 - b_ab - b_bc - b_ac} w^{-b_ab} (1 - w)^{-b_bc} with the Jacobian rho included.
double integral_three(std::span<const HlsProfile> f, const HlsExponents& ex, int n) {
    double A = f[0].lo, B = f[0].hi;
    for (const auto& p : f) {
        A = std::min(A, p.lo);
        B = std::max(B, p.hi);
    }
    std::array<int, 3> perm{0, 1, 2};
    double total = 0.0;
    do {
        const auto [ia, ib, ic] = perm;
        const double bab = ex.beta(ia, ib), bbc = ex.beta(ib, ic), bac = ex.beta(ia, ic);
        const double e_rho = 1.0 - bab - bbc - bac;
        if (!(e_rho > -1.0)) throw DomainError("mhls: non-integrable collision singularity");
        const PowerRule rho_rule(n, e_rho);
        const Rule outer = base_point_rule(n, A, B, e_rho + 1.0);
        // weight (1 - x)^{-b_bc} (1 + x)^{-b_ab} on [-1, 1]; w = (1 + x)/2
        const Rule w_rule = gauss_jacobi(n, -bbc, -bab);
        const double w_scale = std::pow(2.0, bab + bbc - 1.0);
        for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
            const double a = outer.nodes[i];
            const double fa = f[ia](a);
            const double L = B - a;
            if (fa == 0.0 || L <= 0.0) continue;
            double s_rho = 0.0;
            for (std::size_t j = 0; j < rho_rule.base.nodes.size(); ++j) {
                const double rho = 0.5 * L * (1.0 + rho_rule.base.nodes[j]);
                const double fc = f[ic](a + rho);
                if (fc == 0.0) continue;
                double s_w = 0.0;
                for (std::size_t k = 0; k < w_rule.nodes.size(); ++k)
                    s_w += w_rule.weights[k] * f[ib](a + rho * 0.5 * (1.0 + w_rule.nodes[k]));
                s_rho += rho_rule.base.weights[j] * fc * s_w;
            }
            total += outer.weights[i] * fa * std::pow(0.5, e_rho + 1.0) * w_scale * s_rho;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

} // namespace

double mhls_integral(std::span<const HlsProfile> f, const HlsExponents& e, const HlsOptions& opt) {
    validate_hls_exponents(e);
    if (f.size() != e.size()) throw DomainError("mhls: profile count does not match exponents");
    if (f.size() == 2) return integral_two(f, e, opt.nodes);
    if (f.size() == 3) return integral_three(f, e, opt.nodes);
    throw DomainError("mhls: only N = 2 and N = 3 are implemented");
}

double profile_norm(const HlsProfile& f, double r, int nodes) {
    if (!(r >= 1.0)) throw DomainError("profile_norm: r >= 1");
    const Rule rule = gauss_legendre(nodes, f.lo, f.hi);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(std::abs(f(rule.nodes[i])), r);
    return std::pow(s, 1.0 / r);
}

HlsResult mhls_check(std::span<const HlsProfile> f, const HlsExponents& e, const HlsOptions& opt) {
    HlsResult out;
    out.lhs = mhls_integral(f, e, opt);
    out.rhs = 1.0;
    for (std::size_t k = 0; k < f.size(); ++k) out.rhs *= profile_norm(f[k], e.r[k]);
    return out;
}

} // namespace dunkl
