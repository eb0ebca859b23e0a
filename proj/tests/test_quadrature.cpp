#include "doctest.h"

#include "dunkl/errors.hpp"
#include "dunkl/hermite.hpp"
#include "dunkl/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace dunkl;

namespace {
// int x^{2m} |x|^{2k} e^{-x^2} dx = Gamma(m + k + 1/2)
double even_moment(double k, int m) { return std::tgamma(m + k + 0.5); }
}  // namespace

TEST_CASE("moment exactness up to degree 4n-2") {
    for (double k : {0.0, 0.5, 1.0, 1.5, 3.2})
        for (int n : {1, 4, 12, 30}) {
            const QuadratureRule1D r = build_rule(k, n);
            REQUIRE(r.nodes.size() == static_cast<std::size_t>(2 * n));
            for (int m = 0; 2 * m <= 4 * n - 2; ++m) {
                double even = 0.0, odd = 0.0;
                const std::size_t len = r.nodes.size();
                for (std::size_t i = 0; i < len; ++i) even += r.weights[i] * std::pow(r.nodes[i], 2 * m);
                // mirror pairs cancel exactly
                for (std::size_t i = 0; i < len / 2; ++i)
                    odd += r.weights[i] * std::pow(r.nodes[i], 2 * m + 1) +
                           r.weights[len - 1 - i] * std::pow(r.nodes[len - 1 - i], 2 * m + 1);
                CHECK(std::abs(even / even_moment(k, m) - 1.0) < 1e-13);
                CHECK(odd == 0.0);
            }
        }
}

TEST_CASE("spec moment examples") {
    const QuadratureRule1D h = build_rule(0.0, 8);
    double m2 = 0.0;
    for (std::size_t i = 0; i < h.nodes.size(); ++i) m2 += h.weights[i] * h.nodes[i] * h.nodes[i];
    CHECK(std::abs(m2 - std::sqrt(std::numbers::pi) / 2.0) < 1e-14);
    const QuadratureRule1D r = build_rule(0.5, 8);
    double m0 = 0.0;
    for (double w : r.weights) m0 += w;
    CHECK(std::abs(m0 - 1.0) < 1e-14);
}

TEST_CASE("symmetric pairs") {
    const QuadratureRule1D r = build_rule(0.7, 9);
    const std::size_t n = r.nodes.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        CHECK(r.nodes[i] == -r.nodes[n - 1 - i]);
        CHECK(r.weights[i] == r.weights[n - 1 - i]);
        CHECK(r.weights[i] > 0.0);
    }
}

TEST_CASE("tensor grid total mass and separability") {
    const DunklStructure s({1.0, 0.5});
    const TensorGrid g(s, 10);
    CHECK(std::abs(g.weights().sum() / (std::tgamma(1.5) * std::tgamma(1.0)) - 1.0) < 1e-12);
    const TensorGrid g1(DunklStructure({1.0}), 10), g2(DunklStructure({0.5}), 10);
    auto f = [](double x) { return 1.0 + x * x; };
    auto h = [](double y) { return 2.0 - y * y * y + y * y * y * y; };
    double joint = 0.0, a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) joint += g.weights()(static_cast<Eigen::Index>(i)) * f(g.node(i)[0]) * h(g.node(i)[1]);
    for (std::size_t i = 0; i < g1.size(); ++i) a += g1.weights()(static_cast<Eigen::Index>(i)) * f(g1.node(i)[0]);
    for (std::size_t i = 0; i < g2.size(); ++i) b += g2.weights()(static_cast<Eigen::Index>(i)) * h(g2.node(i)[0]);
    CHECK(std::abs(joint - a * b) < 1e-12 * std::abs(joint));
}

TEST_CASE("weighted Lp norms") {
    const DunklStructure s0({0.0});
    const TensorGrid g(s0, 30);
    std::vector<double> gauss(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) gauss[i] = std::exp(-0.5 * g.node(i)[0] * g.node(i)[0]);
    CHECK(std::abs(weighted_lp_norm(g, gauss, 2.0) - std::pow(std::numbers::pi, 0.25)) < 1e-12);
    for (double k : {0.0, 0.5, 1.5}) {
        const DunklStructure s({k});
        const BasisPtr b = build_basis(s, 6);
        const Eigen::VectorXd phi0 = b->table().col(0);
        CHECK(std::abs(weighted_lp_norm(b->grid(), phi0, 2.0) - 1.0) < 1e-12);
    }
    // 1000 nodes put the innermost pair near +-0.035
    const BasisPtr b0 = build_basis(s0, 6, TensorGrid(s0, 500));
    const Eigen::VectorXd phi0 = b0->table().col(0);
    CHECK(std::abs(weighted_lp_norm(b0->grid(), phi0, kInf) - std::pow(std::numbers::pi, -0.25)) < 1e-3);
    std::vector<double> bad(g.size(), 1.0);
    bad[3] = std::nan("");
    CHECK_THROWS_AS((void)weighted_lp_norm(g, bad, 2.0), DomainError);
}

TEST_CASE("mixed norms") {
    const DunklStructure s({0.5});
    const BasisPtr b = build_basis(s, 8);
    const TensorGrid& grid = b->grid();
    const TimeRule time = trapezoid_rule(-std::numbers::pi, std::numbers::pi, 64);
    const Eigen::VectorXd f = b->table().col(2).cwiseAbs2();
    Eigen::MatrixXd F(static_cast<Eigen::Index>(time.size()), static_cast<Eigen::Index>(grid.size()));
    for (Eigen::Index i = 0; i < F.rows(); ++i) F.row(i) = f.transpose();
    const double q = 1.7;
    CHECK(std::abs(mixed_norm(time, grid, F, 1.0, q) - 2.0 * std::numbers::pi * weighted_lp_norm(grid, f, q)) < 1e-12);
    CHECK(mixed_norm(time, grid, Eigen::MatrixXd::Zero(F.rows(), F.cols()), 2.0, q) == 0.0);
    // |e^{-itH} phi_0|^2 does not depend on t
    const StateVector u = StateVector::basis_function(b, 0);
    for (Eigen::Index i = 0; i < F.rows(); ++i)
        F.row(i) = propagate_hermite(u, time.nodes[static_cast<std::size_t>(i)]).grid_values().cwiseAbs2().transpose();
    const double p = 3.0;
    const double constant = std::pow(2.0 * std::numbers::pi, 1.0 / p) * weighted_lp_norm(grid, Eigen::VectorXd(b->table().col(0).cwiseAbs2()), q);
    CHECK(std::abs(mixed_norm(time, grid, F, p, q) - constant) < 1e-10);
    CHECK_THROWS_AS((void)mixed_norm(time, grid, Eigen::MatrixXd::Zero(3, 3), p, q), DomainError);
}

TEST_CASE("Laguerre and Jacobi rules") {
    const LaguerreRule l = gauss_laguerre(0.5, 40);
    double m = 0.0;
    for (std::size_t i = 0; i < l.nodes.size(); ++i) m += std::exp(l.log_weights[i]) * l.nodes[i] * l.nodes[i];
    CHECK(std::abs(m / std::tgamma(3.5) - 1.0) < 1e-13);
    const Rule j = gauss_jacobi(20, 0.3, -0.6);
    double mass = 0.0;
    for (double w : j.weights) mass += w;
    // int (1-x)^a (1+x)^b = 2^{a+b+1} B(a+1, b+1)
    const double ref = std::pow(2.0, 0.3 - 0.6 + 1.0) * std::tgamma(1.3) * std::tgamma(0.4) / std::tgamma(1.7);
    CHECK(std::abs(mass / ref - 1.0) < 1e-13);
    const Rule gl = gauss_legendre(5, 0.0, 2.0);
    double c = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) c += gl.weights[i] * std::pow(gl.nodes[i], 9);
    CHECK(std::abs(c - 1024.0 / 10.0) < 1e-11);
}

TEST_CASE("refinement leaves band-limited norms unchanged") {
    const DunklStructure s({1.5});
    const int N = 10;
    const BasisPtr b = build_basis(s, N);
    const StateVector u = random_band_limited_state(b, N, 11);
    auto norm = [&](int order, double p) {
        const TensorGrid g(s, order);
        const Eigen::VectorXd v = (b->evaluate(g).cast<cplx>() * u.coeffs).cwiseAbs2();
        return weighted_lp_norm(g, v, p);
    };
    const int order = 4 * (N + 1);
    for (double p : {1.0, 2.0}) {
        const double n1 = norm(order, p), n2 = norm(2 * order, p);
        CHECK(std::abs(n1 - n2) < 1e-10 * n2);
    }
    // non-integer power: quadrature budget 1e-6
    const double n1 = norm(order, 3.5), n2 = norm(2 * order, 3.5);
    CHECK(std::abs(n1 - n2) < 1e-6 * n2);
}
