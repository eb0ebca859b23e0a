#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace dunkl {

// A profile on the line, zero outside [lo, hi] and smooth inside.
struct HlsProfile {
    std::function<double(double)> f;
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] double operator()(double t) const { return t < lo || t > hi ? 0.0 : f(t); }
    // t -> f(t / lambda)
    [[nodiscard]] HlsProfile dilated(double lambda) const;
};

[[nodiscard]] HlsProfile indicator_profile(double lo, double hi);

struct HlsExponents {
    Eigen::MatrixXd beta;  // N x N, symmetric, zero diagonal
    std::vector<double> r;

    [[nodiscard]] std::size_t size() const noexcept { return r.size(); }
};

// Throws DomainError unless beta_ii = 0, 0 <= beta_ij = beta_ji < 1, r_k > 1, sum 1/r_k > 1 and
// sum_i beta_ik = 2 (r_k - 1) / r_k (to 1e-12).
void validate_hls_exponents(const HlsExponents& e);
// All r_k = r and all off-diagonal beta equal; beta = 2(r-1)/(r(N-1)).
[[nodiscard]] HlsExponents symmetric_hls_exponents(int N, double r);

struct HlsOptions {
    int nodes = 48;  // per integration variable
};

struct HlsResult {
    double lhs = 0.0;
    double rhs = 0.0;
    [[nodiscard]] double ratio() const { return rhs == 0.0 ? 0.0 : lhs / rhs; }
};

// int ... int prod f_k(t_k) / prod_{i<j} |t_i - t_j|^{beta_ij} dt for N in {2, 3}.
// The simplex is split by the ordering of the t_k; on each piece the gaps are integrated with
// Gauss-Jacobi rules that absorb the power singularities, and so is the base point (it carries a power of B - a).
[[nodiscard]] double mhls_integral(std::span<const HlsProfile> f, const HlsExponents& e, const HlsOptions& opt = {});
[[nodiscard]] double profile_norm(const HlsProfile& f, double r, int nodes = 200);
[[nodiscard]] HlsResult mhls_check(std::span<const HlsProfile> f, const HlsExponents& e, const HlsOptions& opt = {});

} // namespace dunkl
