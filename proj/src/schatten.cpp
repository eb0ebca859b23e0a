#include "dunkl/schatten.hpp"

#include "dunkl/errors.hpp"

#include <cmath>
#include <numbers>

namespace dunkl {

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a) {
    if (a.size() == 0) return {};
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    Eigen::VectorXd s = svd.singularValues();
    if (!s.allFinite()) throw std::runtime_error("singular_values: SVD failed");
    return s;
}

double schatten_norm(const Eigen::MatrixXcd& a, double p) {
    if (!(p >= 1.0)) throw DomainError("schatten_norm: p must be >= 1");
    const Eigen::VectorXd s = singular_values(a);
    if (s.size() == 0) return 0.0;
    const double smax = s.maxCoeff();
    if (std::isinf(p) || smax == 0.0) return smax;
    return smax * std::pow((s / smax).array().pow(p).sum(), 1.0 / p);
}

double schatten_norm(const OperatorMatrix& a, double p) { return schatten_norm(a.a, p); }

Eigen::MatrixXcd operator_modulus(const Eigen::MatrixXcd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.adjoint() * a);
    const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXd density(const OperatorMatrix& g, const Eigen::MatrixXd& phi) {
    const Eigen::MatrixXcd pc = phi.cast<cplx>();
    return (pc * g.a).cwiseProduct(pc).rowwise().sum().real();
}

Eigen::VectorXd density(const OperatorMatrix& g, const TensorGrid& grid) {
    return density(g, g.basis->evaluate(grid));
}

OperatorMatrix conjugate_hermite(const OperatorMatrix& g, double t) {
    const Eigen::VectorXcd ph =
        (g.basis->eigenvalues() * (-t)).unaryExpr([](double x) { return std::exp(cplx(0.0, x)); });
    return {g.basis, ph.asDiagonal() * g.a * ph.conjugate().asDiagonal()};
}

Eigen::VectorXd evolved_density(const OperatorMatrix& g, double t, Propagator P, const TensorGrid& grid) {
    if (P == Propagator::hermite) return density(conjugate_hermite(g, t), grid);
    const double v = 2.0 * t;
    const double stretch = 1.0 + v * v;
    const OperatorMatrix rotated = conjugate_hermite(g, 0.5 * std::atan(v));
    const Eigen::MatrixXd phi = g.basis->evaluate_points(grid.flat_nodes(), 1.0 / std::sqrt(stretch));
    return density(rotated, phi) * std::pow(stretch, -0.5 * g.basis->structure().d_eff());
}

TensorGrid oversampled_grid(const HermiteBasis& b) { return TensorGrid(b.structure(), 2 * (b.degree() + 1)); }

namespace {

Eigen::MatrixXcd weighted_gram(const Eigen::MatrixXd& phi, const Eigen::VectorXcd& wv) {
    const Eigen::MatrixXcd left = (phi.cast<cplx>().array().colwise() * wv.array()).matrix();
    return left.transpose() * phi.cast<cplx>();
}

} // namespace

OperatorMatrix multiplication_matrix(const BasisPtr& b, const Eigen::VectorXcd& samples, const TensorGrid& grid) {
    if (static_cast<std::size_t>(samples.size()) != grid.size())
        throw DomainError("multiplication_matrix: samples not aligned with grid");
    if (!samples.allFinite()) throw DomainError("multiplication_matrix: non-finite samples");
    const Eigen::MatrixXd phi = b->evaluate(grid);
    const Eigen::VectorXcd wv = grid.plain_weights().cast<cplx>().cwiseProduct(samples);
    return {b, weighted_gram(phi, wv)};
}

OperatorMatrix multiplication_matrix(const BasisPtr& b, const Profile& f, const TensorGrid& grid) {
    Eigen::VectorXcd samples(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t k = 0; k < grid.size(); ++k) samples(static_cast<Eigen::Index>(k)) = f(grid.node(k));
    return multiplication_matrix(b, samples, grid);
}

OperatorMatrix dual_operator(const BasisPtr& b, const TimeRule& time, const TensorGrid& grid,
                             const Eigen::MatrixXd& V) {
    if (static_cast<std::size_t>(V.rows()) != time.size() || static_cast<std::size_t>(V.cols()) != grid.size())
        throw DomainError("dual_operator: sample shape mismatch");
    if (!V.allFinite()) throw DomainError("dual_operator: non-finite V");
    const Eigen::MatrixXd phi = b->evaluate(grid);
    const auto n = static_cast<Eigen::Index>(b->size());
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < time.size(); ++i) {
        const Eigen::VectorXcd wv =
            (grid.plain_weights().array() * V.row(static_cast<Eigen::Index>(i)).transpose().array()).matrix().cast<cplx>();
        const OperatorMatrix m{b, weighted_gram(phi, wv)};
        acc += time.weights[i] * conjugate_hermite(m, -time.nodes[i]).a;
    }
    return {b, acc};
}

double dual_functional(const BasisPtr& b, const TimeRule& time, const TensorGrid& grid, const Eigen::MatrixXd& V,
                       double qprime) {
    if (!(qprime >= 1.0)) throw DomainError("dual_functional: q' must be >= 1");
    return schatten_norm(dual_operator(b, time, grid, V), 2.0 * qprime);
}

OperatorMatrix dual_operator(const BasisPtr& b, const TimeRule& time, const TensorGrid& grid,
                             const SpaceTimeFunction& V, Propagator P) {
    const Eigen::MatrixXd phi = b->evaluate(grid);
    const auto n = static_cast<Eigen::Index>(b->size());
    const int d = b->dim();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    std::vector<double> y(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < time.size(); ++i) {
        const double tau = time.nodes[i];
        double t = tau, stretch = 1.0, jac = 1.0;
        if (P == Propagator::laplacian) {
            const double v = std::tan(2.0 * tau);
            t = 0.5 * v;
            stretch = std::sqrt(1.0 + v * v);
            jac = 1.0 + v * v;
        }
        Eigen::VectorXcd wv(static_cast<Eigen::Index>(grid.size()));
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const Point x = grid.node(k);
            for (int j = 0; j < d; ++j) y[static_cast<std::size_t>(j)] = stretch * x[static_cast<std::size_t>(j)];
            const double val = V(t, y);
            if (!std::isfinite(val)) throw DomainError("dual_operator: non-finite V");
            wv(static_cast<Eigen::Index>(k)) = grid.plain_weights()(static_cast<Eigen::Index>(k)) * val;
        }
        const OperatorMatrix m{b, weighted_gram(phi, wv)};
        acc += time.weights[i] * jac * conjugate_hermite(m, -tau).a;
    }
    return {b, acc};
}

OperatorMatrix mixed_xp_operator(const BasisPtr& b, const Profile& f, double alpha, double beta,
                                 const TensorGrid& grid) {
    const auto d = static_cast<std::size_t>(b->dim());
    if (alpha == 0.0 && beta == 0.0) {
        const std::vector<double> origin(d, 0.0);
        const auto n = static_cast<Eigen::Index>(b->size());
        return {b, f(origin) * Eigen::MatrixXcd::Identity(n, n)};
    }
    double tau, c;
    if (alpha != 0.0) {
        const double v = beta / alpha;
        tau = 0.5 * std::atan(v);
        c = alpha * std::sqrt(1.0 + v * v);
    } else {
        tau = beta > 0.0 ? std::numbers::pi / 4.0 : -std::numbers::pi / 4.0;
        c = std::abs(beta);
    }
    std::vector<double> y(d);
    const Profile scaled = [&](Point x) {
        for (std::size_t j = 0; j < d; ++j) y[j] = c * x[j];
        return f(y);
    };
    const OperatorMatrix m = multiplication_matrix(b, scaled, grid);
    return tau == 0.0 ? m : conjugate_hermite(m, -tau);
}

OperatorMatrix mixed_xp_operator(const BasisPtr& b, const Profile& f, double alpha, double beta) {
    return mixed_xp_operator(b, f, alpha, beta, oversampled_grid(*b));
}

double profile_lp_norm(const DunklStructure& s, const Profile& f, double r, double width) {
    if (!(r >= 1.0)) throw DomainError("profile_lp_norm: r must be >= 1");
    const auto d = static_cast<std::size_t>(s.dim());
    if (std::isinf(r)) {
        const int half = d == 1 ? 800 : d == 2 ? 80 : 20;
        const double step = 8.0 * width / half;
        const std::size_t per = static_cast<std::size_t>(2 * half + 1);
        std::size_t total = 1;
        for (std::size_t j = 0; j < d; ++j) total *= per;
        std::vector<double> x(d);
        double m = 0.0;
        for (std::size_t k = 0; k < total; ++k) {
            std::size_t rem = k;
            for (std::size_t j = d; j-- > 0;) {
                x[j] = (static_cast<double>(rem % per) - half) * step;
                rem /= per;
            }
            m = std::max(m, std::abs(f(x)));
        }
        return m;
    }
    const TensorGrid grid = TensorGrid(s, 120).dilated(width * std::sqrt(2.0 / r));
    Eigen::VectorXcd vals(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t k = 0; k < grid.size(); ++k) vals(static_cast<Eigen::Index>(k)) = f(grid.node(k));
    return weighted_lp_norm(grid, std::span<const cplx>(vals.data(), grid.size()), r);
}

KssResult kss_check(const BasisPtr& b, const Profile& f, const Profile& g, double alpha, double beta, double gamma,
                    double delta, double r, double width) {
    const double D = alpha * delta - beta * gamma;
    if (std::abs(D) < 1e-14) throw DomainError("kss_check: degenerate symplectic determinant");
    const DunklStructure& s = b->structure();
    const TensorGrid grid = oversampled_grid(*b);
    const OperatorMatrix A = mixed_xp_operator(b, f, alpha, beta, grid);
    const OperatorMatrix B = mixed_xp_operator(b, g, gamma, delta, grid);
    KssResult out;
    out.determinant = D;
    out.lhs = schatten_norm(A.a * B.a, r);
    if (std::isinf(r)) {
        out.rhs = profile_lp_norm(s, f, kInf, width) * profile_lp_norm(s, g, kInf, width);
    } else {
        out.rhs = std::pow(s.m_kappa(), 2.0 / r) * profile_lp_norm(s, f, r, width) * profile_lp_norm(s, g, r, width) /
                  std::pow(std::abs(D), s.d_eff() / r);
    }
    return out;
}

} // namespace dunkl
