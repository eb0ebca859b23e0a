#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dunkl {

using cplx = std::complex<double>;
using Point = std::span<const double>;

// Reflection group Z_2^d with one multiplicity per coordinate axis.
class DunklStructure {
public:
    explicit DunklStructure(std::vector<double> kappa);
    static DunklStructure uniform(int d, double kappa);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(kappa_.size()); }
    [[nodiscard]] std::span<const double> kappa() const noexcept { return kappa_; }
    [[nodiscard]] double kappa(int j) const { return kappa_.at(static_cast<std::size_t>(j)); }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] double m_kappa() const noexcept { return m_kappa_; }
    // d + 2*gamma, the homogeneous dimension.
    [[nodiscard]] double d_eff() const noexcept { return dim() + 2.0 * gamma_; }
    // d/2 + gamma, the exponent that shows up in every kernel prefactor.
    [[nodiscard]] double half_dim() const noexcept { return 0.5 * dim() + gamma_; }

    // h^2(x) = prod_j |x_j|^{2 kappa_j}
    [[nodiscard]] double weight(Point x) const;

    bool operator==(const DunklStructure&) const = default;

private:
    std::vector<double> kappa_;
    double gamma_ = 0.0;
    double m_kappa_ = 1.0;
};

} // namespace dunkl
