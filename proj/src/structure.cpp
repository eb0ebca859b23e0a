#include "dunkl/structure.hpp"

#include "dunkl/errors.hpp"

#include <cmath>
#include <numeric>

namespace dunkl {

DunklStructure::DunklStructure(std::vector<double> kappa) : kappa_(std::move(kappa)) {
    if (kappa_.empty()) throw DomainError("DunklStructure: dimension must be positive");
    double log_m = 0.0;
    for (double k : kappa_) {
        if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("DunklStructure: multiplicities must be finite and >= 0");
        log_m -= (k + 0.5) * std::log(2.0) + std::lgamma(k + 0.5);
    }
    gamma_ = std::accumulate(kappa_.begin(), kappa_.end(), 0.0);
    m_kappa_ = std::exp(log_m);
}

DunklStructure DunklStructure::uniform(int d, double kappa) {
    if (d < 1) throw DomainError("DunklStructure: dimension must be positive");
    return DunklStructure(std::vector<double>(static_cast<std::size_t>(d), kappa));
}

double DunklStructure::weight(Point x) const {
    if (static_cast<int>(x.size()) != dim()) throw DomainError("weight: point dimension mismatch");
    double w = 1.0;
    for (std::size_t j = 0; j < kappa_.size(); ++j) {
        if (kappa_[j] == 0.0) continue;
        w *= std::pow(std::abs(x[j]), 2.0 * kappa_[j]);
    }
    return w;
}

} // namespace dunkl
