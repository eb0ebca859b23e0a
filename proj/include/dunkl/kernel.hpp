#pragma once

#include "dunkl/structure.hpp"

namespace dunkl {

// value = mantissa * exp(log_scale); keeps kernels with large real exponents finite.
struct ScaledValue {
    cplx mantissa{1.0, 0.0};
    double log_scale = 0.0;

    [[nodiscard]] cplx value() const { return mantissa * std::exp(log_scale); }
    ScaledValue& operator*=(const ScaledValue& o) {
        mantissa *= o.mantissa;
        log_scale += o.log_scale;
        return *this;
    }
};

// One-dimensional Dunkl kernel E_kappa(z, 1) = E_kappa(a, y) with z = a*y.
// Taylor series for |z| below a kappa-dependent threshold, Hankel asymptotics above.
[[nodiscard]] cplx dunkl_kernel_1d(double kappa, cplx a, double y);
[[nodiscard]] ScaledValue dunkl_kernel_1d_scaled(double kappa, cplx z);

// Individual representations, exposed so they can be compared against each other.
// Taylor series sum_n z^n / b_n, b_{n+1} = b_n (n + 1 + 2 kappa [n even]), in extended precision.
[[nodiscard]] cplx dunkl_kernel_1d_series(double kappa, cplx z);
// Gamma(k+1/2)(z/2)^{1/2-k}[I_{k-1/2}(z) + I_{k+1/2}(z)]: Boost Bessel functions on the real and
// imaginary axes, Hankel expansion for large |z|, ascending Bessel series elsewhere.
[[nodiscard]] cplx dunkl_kernel_1d_bessel(double kappa, cplx z);

// Product kernel E_kappa(a x, y) over the coordinates of Z_2^d.
[[nodiscard]] cplx dunkl_kernel(const DunklStructure& s, cplx a, Point x, Point y);
[[nodiscard]] ScaledValue dunkl_kernel_scaled(const DunklStructure& s, cplx a, Point x, Point y);

} // namespace dunkl
