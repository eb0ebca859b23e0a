#include "dunkl/kernel.hpp"

#include "dunkl/errors.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace dunkl {
namespace {

using quad = __float128;
namespace mp = boost::multiprecision;
using mp50 = mp::number<mp::cpp_bin_float<50>>;
using mp100 = mp::number<mp::cpp_bin_float<100>>;
using mp250 = mp::number<mp::cpp_bin_float<250>>;

template <class T> T abs_t(const T& v) { return v < 0 ? T(-v) : v; }

// sum_n z^n / b_n with b_0 = 1, b_{n+1} = b_n (n + 1 + 2 kappa [n even]).
template <class T>
cplx taylor_series(double kappa, cplx z) {
    const T zr = z.real();
    const T zi = z.imag();
    const T two_k = 2.0 * kappa;
    T tr = 1, ti = 0, sr = 1, si = 0;
    const double mag = std::abs(z);
    for (int n = 0; n < 200000; ++n) {
        const T b = T(n + 1) + ((n % 2 == 0) ? two_k : T(0));
        const T nr = (tr * zr - ti * zi) / b;
        ti = (tr * zi + ti * zr) / b;
        tr = nr;
        sr += tr;
        si += ti;
        if (n > mag) {
            const double tm = static_cast<double>(abs_t(tr) + abs_t(ti));
            const double sm = static_cast<double>(abs_t(sr) + abs_t(si));
            if (tm <= 1e-30 * sm || tm < 1e-300) break;
        }
    }
    return {static_cast<double>(sr), static_cast<double>(si)};
}

double hankel_threshold(double kappa) {
    const double nu = kappa + 0.5;
    return std::max(20.0, nu * nu);
}

// Asymptotic sums sum a_k(nu)/z^k and sum (-1)^k a_k(nu)/z^k, truncated at the smallest term.
void hankel_sums(double nu, cplx z, cplx& plain, cplx& alternating) {
    plain = alternating = 1.0;
    cplx term = 1.0;
    const double mu = 4.0 * nu * nu;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const cplx next = term * (mu - odd * odd) / (8.0 * k * z);
        const double mag = std::abs(next);
        if (mag > prev) break;
        prev = mag;
        term = next;
        plain += term;
        alternating += (k % 2 == 1) ? -term : term;
        if (mag <= 1e-18 * std::abs(plain)) break;
    }
}

// Upper-half-plane Hankel form of Gamma(k+1/2)(z/2)^{1/2-k}[I_{k-1/2}(z) + I_{k+1/2}(z)].
ScaledValue hankel_upper(double kappa, cplx z) {
    const double nu1 = kappa - 0.5;
    const double nu2 = kappa + 0.5;
    cplx b1, a1, b2, a2;
    hankel_sums(nu1, z, b1, a1);
    hankel_sums(nu2, z, b2, a2);
    const double r = std::abs(z.real());
    const cplx pre = std::exp(std::lgamma(kappa + 0.5) + (0.5 - kappa) * std::log(z / 2.0) -
                              0.5 * std::log(2.0 * std::numbers::pi * z));
    const cplx grow = std::exp(z - r);
    const cplx decay = std::exp(-z - r);
    const cplx phase = std::exp(cplx(0.0, std::numbers::pi * nu1));
    const cplx bracket = grow * (a1 + a2) + cplx(0.0, 1.0) * phase * decay * (b1 - b2);
    return {pre * bracket, r};
}

ScaledValue hankel_scaled(double kappa, cplx z) {
    if (z.imag() >= 0.0) {
        ScaledValue v = hankel_upper(kappa, z);
        if (z.imag() == 0.0) v.mantissa = v.mantissa.real();
        return v;
    }
    ScaledValue v = hankel_upper(kappa, std::conj(z));
    v.mantissa = std::conj(v.mantissa);
    return v;
}

// Gamma(nu+1)(x/2)^{-nu} I_nu(x), x >= 0.
double normalized_i(double nu, double x) {
    if (x < 1e-8) return 1.0 + x * x / (4.0 * (nu + 1.0));
    return std::exp(std::lgamma(nu + 1.0) - nu * std::log(x / 2.0)) * boost::math::cyl_bessel_i(nu, x);
}

// Gamma(nu+1)(x/2)^{-nu} J_nu(x), x >= 0.
double normalized_j(double nu, double x) {
    if (x < 1e-8) return 1.0 - x * x / (4.0 * (nu + 1.0));
    return std::exp(std::lgamma(nu + 1.0) - nu * std::log(x / 2.0)) * boost::math::cyl_bessel_j(nu, x);
}

struct QuadComplex {
    quad re = 0;
    quad im = 0;
};

// 0F1(; nu+1; z^2/4) by its ascending series in quad precision.
QuadComplex normalized_i_series(double nu, cplx z) {
    const cplx w = z * z / 4.0;
    const quad wr = w.real(), wi = w.imag();
    quad tr = 1, ti = 0, sr = 1, si = 0;
    for (int k = 1; k < 100000; ++k) {
        const quad den = quad(k) * (quad(nu) + k);
        const quad nr = (tr * wr - ti * wi) / den;
        ti = (tr * wi + ti * wr) / den;
        tr = nr;
        sr += tr;
        si += ti;
        const double tm = static_cast<double>(abs_t(tr) + abs_t(ti));
        const double sm = static_cast<double>(abs_t(sr) + abs_t(si));
        if (k > std::abs(z) && (tm <= 1e-30 * sm || tm < 1e-300)) break;
    }
    return {sr, si};
}

} // namespace

cplx dunkl_kernel_1d_series(double kappa, cplx z) {
    if (!(kappa >= 0.0)) throw DomainError("dunkl kernel: kappa must be >= 0");
    const double mag = std::abs(z);
    // Worst-case cancellation is e^{2|z|} against the result, so size the precision accordingly.
    if (mag <= 16.0) return taylor_series<quad>(kappa, z);
    if (mag <= 34.0) return taylor_series<mp50>(kappa, z);
    if (mag <= 92.0) return taylor_series<mp100>(kappa, z);
    return taylor_series<mp250>(kappa, z);
}

cplx dunkl_kernel_1d_bessel(double kappa, cplx z) {
    if (!(kappa >= 0.0)) throw DomainError("dunkl kernel: kappa must be >= 0");
    if (z == cplx(0.0)) return 1.0;
    // I_{-1/2} + I_{1/2} collapses to the exponential; summing the two cancels catastrophically for Re z < 0.
    if (kappa == 0.0) return std::exp(z);
    if (std::abs(z) > hankel_threshold(kappa)) return hankel_scaled(kappa, z).value();
    const double nu1 = kappa - 0.5;
    const double nu2 = kappa + 0.5;
    const double c = 1.0 / (2.0 * kappa + 1.0);
    if (z.imag() == 0.0) {
        const double x = z.real();
        return normalized_i(nu1, std::abs(x)) + c * x * normalized_i(nu2, std::abs(x));
    }
    if (z.real() == 0.0) {
        const double s = z.imag();
        return {normalized_j(nu1, std::abs(s)), c * s * normalized_j(nu2, std::abs(s))};
    }
    const QuadComplex e = normalized_i_series(nu1, z);
    const QuadComplex o = normalized_i_series(nu2, z);
    const quad cr = c * z.real(), ci = c * z.imag();
    return {static_cast<double>(e.re + cr * o.re - ci * o.im), static_cast<double>(e.im + cr * o.im + ci * o.re)};
}

ScaledValue dunkl_kernel_1d_scaled(double kappa, cplx z) {
    if (!(kappa >= 0.0)) throw DomainError("dunkl kernel: kappa must be >= 0");
    if (z == cplx(0.0)) return {};
    if (kappa == 0.0) return {std::exp(cplx(0.0, z.imag())) * std::exp(z.real() - std::abs(z.real())),
                              std::abs(z.real())};
    if (std::abs(z) > hankel_threshold(kappa)) return hankel_scaled(kappa, z);
    const double r = std::abs(z.real());
    return {taylor_series<quad>(kappa, z) * std::exp(-r), r};
}

cplx dunkl_kernel_1d(double kappa, cplx a, double y) {
    return dunkl_kernel_1d_scaled(kappa, a * y).value();
}

ScaledValue dunkl_kernel_scaled(const DunklStructure& s, cplx a, Point x, Point y) {
    const int d = s.dim();
    if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d)
        throw DomainError("dunkl_kernel: point dimension mismatch");
    ScaledValue out;
    for (int j = 0; j < d; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        out *= dunkl_kernel_1d_scaled(s.kappa(j), a * x[jj] * y[jj]);
    }
    return out;
}

cplx dunkl_kernel(const DunklStructure& s, cplx a, Point x, Point y) {
    return dunkl_kernel_scaled(s, a, x, y).value();
}

} // namespace dunkl
