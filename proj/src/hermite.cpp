#include "dunkl/hermite.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/kernel.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace dunkl {

void laguerre_functions(double alpha, double u, std::span<double> out) {
    if (out.empty()) return;
    out[0] = std::exp(-0.5 * u - 0.5 * std::lgamma(alpha + 1.0));
    if (out.size() == 1) return;
    out[1] = (u - alpha - 1.0) * out[0] / std::sqrt(alpha + 1.0);
    for (std::size_t m = 1; m + 1 < out.size(); ++m) {
        const double md = static_cast<double>(m);
        const double a = 2.0 * md + alpha + 1.0;
        const double b = std::sqrt(md * (md + alpha));
        const double b_next = std::sqrt((md + 1.0) * (md + alpha + 1.0));
        out[m + 1] = ((u - a) * out[m] - b * out[m - 1]) / b_next;
    }
}

void hermite_functions_1d(double kappa, double x, std::span<double> out) {
    const std::size_t n = out.size();
    if (n == 0) return;
    const double u = x * x;
    std::vector<double> even((n + 1) / 2), odd(n / 2);
    laguerre_functions(kappa - 0.5, u, even);
    laguerre_functions(kappa + 0.5, u, odd);
    for (std::size_t i = 0; i < n; ++i) out[i] = (i % 2 == 0) ? even[i / 2] : x * odd[i / 2];
}

std::vector<double> hermite_functions_1d(double kappa, int n_max, double x) {
    std::vector<double> out(static_cast<std::size_t>(n_max + 1));
    hermite_functions_1d(kappa, x, out);
    return out;
}

HermiteBasis::HermiteBasis(const DunklStructure& s, int degree, TensorGrid grid)
    : structure_(s), degree_(degree), grid_(std::move(grid)) {
    if (degree < 0) throw DomainError("HermiteBasis: degree must be >= 0");
    if (!(grid_.structure() == s)) throw DomainError("HermiteBasis: grid built for a different structure");
    for (const auto& r : grid_.rules())
        if (r.order < degree + 1)
            throw DomainError("HermiteBasis: grid order " + std::to_string(r.order) + " below required " +
                              std::to_string(degree + 1));
    const int d = s.dim();
    const auto per = static_cast<std::size_t>(degree + 1);
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) total *= per;
    indices_.reserve(total);
    eigenvalues_.resize(static_cast<Eigen::Index>(total));
    for (std::size_t i = 0; i < total; ++i) {
        MultiIndex mu(static_cast<std::size_t>(d));
        std::size_t rem = i;
        int sum = 0;
        for (int j = d; j-- > 0;) {
            mu[static_cast<std::size_t>(j)] = static_cast<int>(rem % per);
            rem /= per;
            sum += mu[static_cast<std::size_t>(j)];
        }
        indices_.push_back(std::move(mu));
        total_degree_.push_back(sum);
        eigenvalues_(static_cast<Eigen::Index>(i)) = 2.0 * sum + s.d_eff();
    }
    table_ = evaluate(grid_);
}

std::size_t HermiteBasis::index_of(std::span<const int> mu) const {
    if (static_cast<int>(mu.size()) != dim()) throw DomainError("index_of: multi-index dimension mismatch");
    std::size_t flat = 0;
    for (int m : mu) {
        if (m < 0 || m > degree_) throw DomainError("index_of: multi-index outside truncation");
        flat = flat * static_cast<std::size_t>(degree_ + 1) + static_cast<std::size_t>(m);
    }
    return flat;
}

Eigen::MatrixXd HermiteBasis::evaluate_points(std::span<const double> flat, double scale) const {
    const auto d = static_cast<std::size_t>(dim());
    if (flat.size() % d != 0) throw DomainError("evaluate_points: coordinate count not a multiple of d");
    const std::size_t count = flat.size() / d;
    const auto per = static_cast<std::size_t>(degree_ + 1);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(size()));
    std::vector<double> buf(d * per);
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t j = 0; j < d; ++j)
            hermite_functions_1d(structure_.kappa(static_cast<int>(j)), scale * flat[k * d + j],
                                 std::span<double>(buf.data() + j * per, per));
        for (std::size_t i = 0; i < size(); ++i) {
            double v = 1.0;
            for (std::size_t j = 0; j < d; ++j) v *= buf[j * per + static_cast<std::size_t>(indices_[i][j])];
            out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = v;
        }
    }
    return out;
}

Eigen::MatrixXd HermiteBasis::evaluate(const TensorGrid& grid) const {
    if (grid.dim() != dim()) throw DomainError("evaluate: grid dimension mismatch");
    return evaluate_points(grid.flat_nodes());
}

Eigen::VectorXd HermiteBasis::evaluate(Point x) const { return evaluate_points(x).row(0).transpose(); }

Eigen::MatrixXd HermiteBasis::gram() const {
    return table_.transpose() * grid_.plain_weights().asDiagonal() * table_;
}

BasisPtr build_basis(const DunklStructure& s, int degree, const TensorGrid& grid) {
    return std::make_shared<const HermiteBasis>(s, degree, grid);
}

BasisPtr build_basis(const DunklStructure& s, int degree) {
    return build_basis(s, degree, TensorGrid(s, degree + 1));
}

cplx StateVector::value_at(Point x) const {
    const Eigen::VectorXd phi = basis->evaluate(x);
    return (phi.cast<cplx>().array() * coeffs.array()).sum();
}

Eigen::VectorXcd StateVector::grid_values() const { return basis->table().cast<cplx>() * coeffs; }

StateVector StateVector::basis_function(BasisPtr b, std::size_t i) {
    StateVector v = zero(std::move(b));
    v.coeffs(static_cast<Eigen::Index>(i)) = 1.0;
    return v;
}

StateVector StateVector::zero(BasisPtr b) {
    const auto n = static_cast<Eigen::Index>(b->size());
    return {std::move(b), Eigen::VectorXcd::Zero(n)};
}

StateVector random_band_limited_state(BasisPtr b, int max_degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    StateVector v = StateVector::zero(b);
    for (std::size_t i = 0; i < b->size(); ++i) {
        if (b->total_degree(i) > max_degree) continue;
        const double re = normal(rng);
        const double im = normal(rng);
        v.coeffs(static_cast<Eigen::Index>(i)) = {re, im};
    }
    const double n = v.coeffs.norm();
    if (n > 0.0) v.coeffs /= n;
    return v;
}

StateVector propagate_hermite(const StateVector& v, double t) {
    StateVector out = v;
    const auto& lambda = v.basis->eigenvalues();
    for (Eigen::Index i = 0; i < out.coeffs.size(); ++i) out.coeffs(i) *= std::exp(cplx(0.0, -t * lambda(i)));
    return out;
}

namespace {

double norm2(Point x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

} // namespace

cplx kernel_Kit(const DunklStructure& s, double t, Point x, Point y) {
    const double quarter = std::numbers::pi / 2.0;
    const double dist = std::abs(t - std::round(t / quarter) * quarter);
    if (dist < 1e-13) throw SingularTimeError(t, dist);
    const double s2 = std::sin(2.0 * t);
    const double a = s.half_dim();
    const cplx pre = s.m_kappa() * std::pow(cplx(0.0, s2), -a);
    const double phase = 0.5 * (std::cos(2.0 * t) / s2) * (norm2(x) + norm2(y));
    const ScaledValue e = dunkl_kernel_scaled(s, cplx(0.0, -1.0 / s2), x, y);
    return pre * std::exp(cplx(e.log_scale, phase)) * e.mantissa;
}

cplx mehler_closed_form(const DunklStructure& s, cplx w, Point x, Point y) {
    const double r = std::abs(w);
    if (std::abs(r - 1.0) <= 1e-14) {
        const double t = -0.5 * std::arg(w);
        return std::exp(cplx(0.0, t * s.d_eff())) * kernel_Kit(s, t, x, y);
    }
    if (r > 1.0) throw DomainError("mehler_closed_form: |w| must be <= 1");
    const cplx one_minus = 1.0 - w * w;
    const double a = s.half_dim();
    const cplx expo = -0.5 * (1.0 + w * w) / one_minus * (norm2(x) + norm2(y));
    const ScaledValue e = dunkl_kernel_scaled(s, 2.0 * w / one_minus, x, y);
    return std::pow(2.0, a) * s.m_kappa() * std::pow(one_minus, -a) * std::exp(expo + e.log_scale) * e.mantissa;
}

cplx mehler_series(const DunklStructure& s, int N, cplx w, Point x, Point y) {
    const int d = s.dim();
    if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d)
        throw DomainError("mehler_series: point dimension mismatch");
    const auto per = static_cast<std::size_t>(N + 1);
    // coefficients of prod_j sum_n phi_n(x_j) phi_n(y_j) z^n, truncated at degree N
    std::vector<double> poly(per, 0.0);
    poly[0] = 1.0;
    for (int j = 0; j < d; ++j) {
        const auto fx = hermite_functions_1d(s.kappa(j), N, x[static_cast<std::size_t>(j)]);
        const auto fy = hermite_functions_1d(s.kappa(j), N, y[static_cast<std::size_t>(j)]);
        std::vector<double> next(per, 0.0);
        for (std::size_t a = 0; a < per; ++a)
            for (std::size_t b = 0; a + b < per; ++b) next[a + b] += poly[a] * fx[b] * fy[b];
        poly = std::move(next);
    }
    cplx sum = 0.0, wk = 1.0;
    for (std::size_t k = 0; k < per; ++k) {
        sum += poly[k] * wk;
        wk *= w;
    }
    return sum;
}

std::vector<SurfaceSample> lift_to_surface(const StateVector& u) {
    std::vector<SurfaceSample> g;
    const auto& lambda = u.basis->eigenvalues();
    for (std::size_t i = 0; i < u.basis->size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        if (u.coeffs(ii) != cplx{}) g.push_back({i, lambda(ii), u.coeffs(ii)});
    }
    return g;
}

cplx extension_operator(const HermiteBasis& b, std::span<const SurfaceSample> g, double t, Point x) {
    if (g.empty()) return {};
    const Eigen::VectorXd phi = b.evaluate(x);
    cplx sum = 0.0;
    for (const auto& s : g) {
        if (s.mu >= b.size()) throw DomainError("extension_operator: index outside truncation");
        const double lambda = b.eigenvalues()(static_cast<Eigen::Index>(s.mu));
        if (std::abs(s.nu - lambda) > 1e-9 * std::max(1.0, lambda))
            throw DomainError("extension_operator: sample not on the surface nu = 2|mu| + d + 2 gamma");
        sum += s.value * phi(static_cast<Eigen::Index>(s.mu)) * std::exp(cplx(0.0, -t * s.nu));
    }
    return sum;
}

FdhTable fdh_transform(const HermiteBasis& b, const TimeRule& time, const Eigen::MatrixXcd& F, int nu_min,
                       int nu_max) {
    if (static_cast<std::size_t>(F.rows()) != time.size() || static_cast<std::size_t>(F.cols()) != b.grid().size())
        throw DomainError("fdh_transform: sample shape mismatch");
    if (nu_max < nu_min) throw DomainError("fdh_transform: empty frequency range");
    const Eigen::MatrixXcd G =
        F * (b.grid().plain_weights().asDiagonal() * b.table()).cast<cplx>();  // T x B
    const Eigen::Index nt = static_cast<Eigen::Index>(time.size());
    const Eigen::Index nn = nu_max - nu_min + 1;
    Eigen::MatrixXcd E(nt, nn);
    for (Eigen::Index i = 0; i < nt; ++i)
        for (Eigen::Index k = 0; k < nn; ++k)
            E(i, k) = time.weights[static_cast<std::size_t>(i)] *
                      std::exp(cplx(0.0, static_cast<double>(nu_min + k) * time.nodes[static_cast<std::size_t>(i)]));
    return {nu_min, G.transpose() * E};
}

} // namespace dunkl
