#include "doctest.h"

#include "dunkl/dunkl_operator.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/free_propagator.hpp"
#include "dunkl/hermite.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace dunkl;

TEST_CASE("phi_0 closed form and norm") {
    for (double k : {0.0, 0.5, 1.5, 3.0}) {
        const auto v = hermite_functions_1d(k, 0, 0.8);
        CHECK(std::abs(v[0] - std::exp(-0.32) / std::sqrt(std::tgamma(k + 0.5))) < 1e-14);
        const BasisPtr b = build_basis(DunklStructure({k}), 4);
        CHECK(std::abs(b->gram()(0, 0) - 1.0) < 1e-12);
    }
}

TEST_CASE("kappa = 0 gives classical Hermite functions") {
    // h_n = (2^n n! sqrt(pi))^{-1/2} H_n e^{-x^2/2} by the three-term recurrence
    const double x = 0.7;
    const double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2.0);
    const double h1 = std::sqrt(2.0) * x * h0;
    const double h2 = x * h1 - std::sqrt(0.5) * h0;
    const double h3 = (std::sqrt(2.0) * x * h2 - std::sqrt(2.0) * h1) / std::sqrt(3.0);
    const auto v = hermite_functions_1d(0.0, 3, x);
    CHECK(std::abs(v[3] - h3) < 1e-12);
    CHECK(std::abs(v[2] - h2) < 1e-12);
}

TEST_CASE("basis integrity") {
    for (const auto& k : {std::vector<double>{0.0}, {0.5}, {1.5}, {1.0, 0.5}}) {
        const DunklStructure s(k);
        const int N = s.dim() == 1 ? 48 : 12;
        const BasisPtr b = build_basis(s, N);
        const Eigen::MatrixXd G = b->gram();
        CHECK((G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() < 1e-10);
        for (std::size_t i = 0; i < b->size(); ++i) {
            int deg = 0;
            for (int m : b->indices()[i]) deg += m;
            CHECK(b->eigenvalues()(static_cast<Eigen::Index>(i)) == 2.0 * deg + s.d_eff());
        }
    }
}

TEST_CASE("parity in each coordinate") {
    const DunklStructure s({0.5, 1.0});
    const BasisPtr b = build_basis(s, 5);
    const std::vector<double> x{0.4, -1.1}, fx{-0.4, -1.1}, fy{0.4, 1.1};
    const Eigen::VectorXd v = b->evaluate(x), v0 = b->evaluate(fx), v1 = b->evaluate(fy);
    for (std::size_t i = 0; i < b->size(); ++i) {
        const auto& mu = b->indices()[i];
        const auto ii = static_cast<Eigen::Index>(i);
        CHECK(std::abs(v0(ii) - ((mu[0] % 2) ? -1.0 : 1.0) * v(ii)) < 1e-14);
        CHECK(std::abs(v1(ii) - ((mu[1] % 2) ? -1.0 : 1.0) * v(ii)) < 1e-14);
    }
}

TEST_CASE("insufficient grid order rejected") {
    const DunklStructure s({0.5});
    CHECK_THROWS_AS((void)build_basis(s, 10, TensorGrid(s, 10)), DomainError);
    CHECK_NOTHROW((void)build_basis(s, 10, TensorGrid(s, 11)));
}

TEST_CASE("eigen-residual of the assembled Hermite operator") {
    const DunklStructure s({1.5});
    const BasisPtr b = build_basis(s, 40);
    const OperatorMatrix H = hermite_operator_matrix(b);
    for (std::size_t i = 0; i < b->size(); ++i) {
        if (b->total_degree(i) > 38) continue;
        const auto ii = static_cast<Eigen::Index>(i);
        Eigen::VectorXcd r = H.a.col(ii);
        r(ii) -= b->eigenvalues()(ii);
        CHECK(r.norm() < 1e-8);
    }
}

TEST_CASE("Mehler formula") {
    const DunklStructure s({1.0});
    const std::vector<double> x{0.3}, y{-0.4};
    SUBCASE("w = 0 is phi_0(x) phi_0(y)") {
        for (const auto& k : {std::vector<double>{0.0}, {1.0}, {1.0, 0.5}}) {
            const DunklStructure t(k);
            const std::vector<double> xx(k.size(), 0.3), yy(k.size(), -0.4);
            CHECK(std::abs(mehler_closed_form(t, 0.0, xx, yy) - mehler_series(t, 0, 0.0, xx, yy)) < 1e-12);
        }
    }
    SUBCASE("series at w = 0.5, N = 60") {
        const cplx c = mehler_closed_form(s, 0.5, x, y);
        CHECK(std::abs(mehler_series(s, 60, 0.5, x, y) - c) < 1e-10 * std::abs(c));
    }
    SUBCASE("symmetric in x and y") {
        for (const cplx w : {cplx(0.5), cplx(0.2, 0.6), cplx(-0.7)})
            CHECK(std::abs(mehler_closed_form(s, w, x, y) - mehler_closed_form(s, w, y, x)) < 1e-13);
    }
    SUBCASE("geometric convergence at rate |w|") {
        const double w = 0.5;
        const cplx c = mehler_closed_form(s, w, x, y);
        const double e20 = std::abs(mehler_series(s, 20, w, x, y) - c);
        const double e30 = std::abs(mehler_series(s, 30, w, x, y) - c);
        const double rate = std::pow(e30 / e20, 0.1);
        CHECK(rate == doctest::Approx(w).epsilon(0.15));
    }
    SUBCASE("w^2 = 1 has no kernel") {
        CHECK_THROWS_AS((void)mehler_closed_form(s, 1.0, x, y), SingularTimeError);
        CHECK_THROWS_AS((void)mehler_closed_form(s, -1.0, x, y), SingularTimeError);
        CHECK_THROWS_AS((void)mehler_closed_form(s, 1.2, x, y), DomainError);
    }
}

TEST_CASE("K_it symmetries and bound") {
    for (const auto& k : {std::vector<double>{0.0}, {0.5}, {1.5}, {1.0, 0.5}}) {
        const DunklStructure s(k);
        const double a = s.half_dim();
        const std::vector<double> lat{-2.0, -0.5, 0.0, 1.0, 2.5};
        std::vector<double> x(k.size()), y(k.size()), mx(k.size());
        for (double t : {0.2, 0.6, 1.0, 1.3})
            for (double xa : lat)
                for (double ya : lat) {
                    for (std::size_t j = 0; j < k.size(); ++j) {
                        x[j] = xa + 0.3 * static_cast<double>(j);
                        y[j] = ya - 0.2 * static_cast<double>(j);
                        mx[j] = -x[j];
                    }
                    const cplx K = kernel_Kit(s, t, x, y);
                    CHECK(std::abs(kernel_Kit(s, -t, x, y) - std::conj(K)) < 1e-13 * std::max(1.0, std::abs(K)));
                    if (std::sin(2.0 * t) > 0.0) {
                        // (-1)^{a} e^{i pi a} principal branch; the rule needs sin 2t > 0 on the unshifted time
                        const cplx shifted = kernel_Kit(s, t + std::numbers::pi / 2.0, x, y);
                        const cplx expected = std::exp(cplx(0.0, std::numbers::pi * a)) * kernel_Kit(s, t, mx, y);
                        CHECK(std::abs(shifted - expected) < 1e-12 * std::max(1.0, std::abs(K)));
                    }
                    CHECK(std::abs(K) <= s.m_kappa() * std::pow(std::abs(std::sin(2.0 * t)), -a) * (1.0 + 1e-12));
                }
        CHECK_THROWS_AS((void)kernel_Kit(s, std::numbers::pi / 2.0, x, y), SingularTimeError);
    }
}

TEST_CASE("singular time error carries the distance") {
    const DunklStructure s({0.5});
    const std::vector<double> x{0.1}, y{0.2};
    try {
        (void)kernel_Kit(s, std::numbers::pi + 1e-15, x, y);
        FAIL("expected SingularTimeError");
    } catch (const SingularTimeError& e) {
        CHECK(e.distance() < 1e-13);
    }
}

TEST_CASE("propagator: identity, eigenvectors, unitarity, group law") {
    const DunklStructure s({1.0});
    const BasisPtr b = build_basis(s, 20);
    const StateVector u = random_band_limited_state(b, 20, 3);
    CHECK((propagate_hermite(u, 0.0).coeffs - u.coeffs).norm() == 0.0);
    const StateVector e = StateVector::basis_function(b, 5);
    const StateVector et = propagate_hermite(e, 0.77);
    CHECK(std::abs(et.coeffs(5) - std::exp(cplx(0.0, -0.77 * b->eigenvalues()(5)))) < 1e-15);
    for (double t : {0.3, 1.7, -12.0}) CHECK(std::abs(propagate_hermite(u, t).norm() - u.norm()) < 1e-14);
    const StateVector a = propagate_hermite(propagate_hermite(u, 0.4), 1.1);
    CHECK((a.coeffs - propagate_hermite(u, 1.5).coeffs).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("spectral propagator vs K_it quadrature") {
    const DunklStructure s({1.0});
    const BasisPtr b = build_basis(s, 24);
    const StateVector u = random_band_limited_state(b, 12, 9);
    const TensorGrid eval(s, 40);
    const TensorGrid quad(s, 200);
    const double t = 0.3;
    const Eigen::VectorXcd direct = hermite_evolve_via_kernel(t, u, eval.flat_nodes(), quad);
    const Eigen::VectorXcd spectral = b->evaluate(eval).cast<cplx>() * propagate_hermite(u, t).coeffs;
    CHECK(weighted_lp_norm(eval, Eigen::VectorXd((direct - spectral).cwiseAbs()), 2.0) < 1e-8);
}

TEST_CASE("density shift covariance by pi/2") {
    const DunklStructure s({0.3});
    const BasisPtr b = build_basis(s, 16);
    const StateVector u = random_band_limited_state(b, 16, 21);
    const TensorGrid g(s, 40);
    const Eigen::MatrixXcd phi = b->evaluate(g).cast<cplx>();
    for (double t : {0.1, 0.9}) {
        const Eigen::VectorXd r0 = (phi * propagate_hermite(u, t).coeffs).cwiseAbs2();
        const Eigen::VectorXd r1 = (phi * propagate_hermite(u, t + std::numbers::pi / 2.0).coeffs).cwiseAbs2();
        for (double q : {1.0, 1.5, 3.0})
            CHECK(std::abs(weighted_lp_norm(g, r0, q) - weighted_lp_norm(g, r1, q)) < 1e-10);
    }
    // d_eff even: moduli are pi-periodic pointwise
    const DunklStructure se({0.5});
    const BasisPtr be = build_basis(se, 12);
    const StateVector ue = random_band_limited_state(be, 12, 5);
    const Eigen::MatrixXcd pe = be->evaluate(TensorGrid(se, 20)).cast<cplx>();
    const Eigen::VectorXd m0 = (pe * propagate_hermite(ue, 0.4).coeffs).cwiseAbs();
    const Eigen::VectorXd m1 = (pe * propagate_hermite(ue, 0.4 + std::numbers::pi).coeffs).cwiseAbs();
    CHECK((m0 - m1).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("extension operator") {
    const DunklStructure s({0.5});
    const BasisPtr b = build_basis(s, 6);
    const std::vector<double> x{0.5};
    const Eigen::VectorXd phi = b->evaluate(x);
    SurfaceSample single{3, b->eigenvalues()(3), 1.0};
    CHECK(std::abs(extension_operator(*b, std::span(&single, 1), 0.2, x) -
                   phi(3) * std::exp(cplx(0.0, -0.2 * b->eigenvalues()(3)))) < 1e-15);
    StateVector u = StateVector::zero(b);
    u.coeffs(0) = 1.0;
    u.coeffs(1) = 1.0;
    const auto g = lift_to_surface(u);
    CHECK(std::abs(extension_operator(*b, g, 0.2, x) - propagate_hermite(u, 0.2).value_at(x)) < 1e-12);
    CHECK(extension_operator(*b, {}, 0.2, x) == cplx{});
    SurfaceSample off{2, 1.0, 1.0};
    CHECK_THROWS_AS((void)extension_operator(*b, std::span(&off, 1), 0.2, x), DomainError);
}

TEST_CASE("Fourier-Dunkl-Hermite transform") {
    const DunklStructure s({0.5});  // eigenvalues 2m + 2 are integers
    const BasisPtr b = build_basis(s, 6);
    const TimeRule time = trapezoid_rule(-std::numbers::pi, std::numbers::pi, 64);
    const auto K = static_cast<Eigen::Index>(b->grid().size());
    const auto T = static_cast<Eigen::Index>(time.size());
    SUBCASE("single mode gives 2 pi") {
        const int mu0 = 2, nu0 = 5;
        Eigen::MatrixXcd F(T, K);
        for (Eigen::Index i = 0; i < T; ++i)
            F.row(i) = b->table().col(mu0).cast<cplx>().transpose() * std::exp(cplx(0.0, -nu0 * time.nodes[static_cast<std::size_t>(i)]));
        const FdhTable f = fdh_transform(*b, time, F, 0, 16);
        for (Eigen::Index m = 0; m < f.values.rows(); ++m)
            for (Eigen::Index n = 0; n < f.values.cols(); ++n) {
                const cplx expected = (m == mu0 && n == nu0) ? cplx(2.0 * std::numbers::pi) : cplx{};
                CHECK(std::abs(f.values(m, n) - expected) < 1e-12);
            }
    }
    SUBCASE("zero") {
        const FdhTable f = fdh_transform(*b, time, Eigen::MatrixXcd::Zero(T, K), 0, 16);
        CHECK(f.values.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("Plancherel with the 2 pi of the time circle") {
        std::mt19937_64 rng(4);
        std::normal_distribution<double> n;
        Eigen::MatrixXcd c(static_cast<Eigen::Index>(b->size()), 17);
        for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = cplx(n(rng), n(rng));
        Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(T, K);
        for (Eigen::Index i = 0; i < T; ++i)
            for (Eigen::Index nu = 0; nu < 17; ++nu)
                F.row(i) += (b->table().cast<cplx>() * c.col(nu)).transpose() * std::exp(cplx(0.0, -static_cast<double>(nu) * time.nodes[static_cast<std::size_t>(i)]));
        const FdhTable f = fdh_transform(*b, time, F, 0, 16);
        double l2 = 0.0;
        for (Eigen::Index i = 0; i < T; ++i)
            l2 += time.weights[static_cast<std::size_t>(i)] * b->grid().plain_weights().dot(F.row(i).cwiseAbs2().transpose());
        CHECK(std::abs(f.values.squaredNorm() - 2.0 * std::numbers::pi * l2) < 1e-8 * f.values.squaredNorm());
    }
}
