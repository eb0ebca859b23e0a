#include "dunkl/strichartz.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/free_propagator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace dunkl {

double admissible_p(double q, double d_eff) {
    if (!(q >= 1.0)) throw DomainError("admissible_p: q must be >= 1");
    if (q == 1.0) return kInf;
    return 2.0 * q / (d_eff * (q - 1.0));
}

double admissible_q_max(double d_eff) { return d_eff <= 1.0 ? kInf : (d_eff + 1.0) / (d_eff - 1.0); }

ExponentPair make_exponent_pair(double q, double d_eff) {
    ExponentPair e;
    e.q = q;
    e.d_eff = d_eff;
    e.p = admissible_p(q, d_eff);
    e.admissible = q >= 1.0 && q < admissible_q_max(d_eff);
    return e;
}

double OrthonormalSystem::gram_error() const {
    const auto J = vectors.cols();
    return (vectors.adjoint() * vectors - Eigen::MatrixXcd::Identity(J, J)).cwiseAbs().maxCoeff();
}

OperatorMatrix OrthonormalSystem::as_operator() const {
    return {basis, vectors * coeffs.asDiagonal() * vectors.adjoint()};
}

std::string to_string(SystemKind k) {
    switch (k) {
    case SystemKind::basis_subset: return "basis_subset";
    case SystemKind::haar_rotation: return "haar_rotation";
    case SystemKind::gaussian_orthogonalized: return "gaussian_orthogonalized";
    }
    return "unknown";
}

SystemKind system_kind_from_string(const std::string& s) {
    if (s == "basis_subset") return SystemKind::basis_subset;
    if (s == "haar_rotation") return SystemKind::haar_rotation;
    if (s == "gaussian_orthogonalized") return SystemKind::gaussian_orthogonalized;
    throw DomainError("unknown system kind '" + s + "'");
}

namespace {

std::vector<std::size_t> energy_order(const HermiteBasis& b) {
    std::vector<std::size_t> order(b.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return b.total_degree(x) < b.total_degree(y); });
    return order;
}

// Thin Q of a QR factorization with the phases of diag(R) moved into Q (Haar measure for Gaussian input).
Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& z) {
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(z.rows(), z.cols());
    const Eigen::MatrixXcd r = qr.matrixQR();
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        const cplx d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

} // namespace

OrthonormalSystem generate_system(const BasisPtr& b, SystemKind kind, int J, std::uint64_t seed,
                                  const SystemOptions& opt) {
    const std::size_t span = opt.span == 0 ? b->size() : std::min(opt.span, b->size());
    if (J < 0 || static_cast<std::size_t>(J) > span)
        throw DomainError("generate_system: J=" + std::to_string(J) + " exceeds available span " + std::to_string(span));
    const auto order = energy_order(*b);
    const auto B = static_cast<Eigen::Index>(b->size());
    const auto S = static_cast<Eigen::Index>(span);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;

    Eigen::MatrixXcd local(S, J);
    switch (kind) {
    case SystemKind::basis_subset:
        local = Eigen::MatrixXcd::Identity(S, J);
        break;
    case SystemKind::haar_rotation:
    case SystemKind::gaussian_orthogonalized: {
        Eigen::MatrixXcd z(S, J);
        for (Eigen::Index j = 0; j < J; ++j)
            for (Eigen::Index i = 0; i < S; ++i) {
                const double re = normal(rng);
                const double im = normal(rng);
                double env = 1.0;
                if (kind == SystemKind::gaussian_orthogonalized)
                    env = std::exp(-0.25 * b->total_degree(order[static_cast<std::size_t>(i)]));
                z(i, j) = env * cplx(re, im);
            }
        local = orthonormalize(z);
        break;
    }
    }
    OrthonormalSystem sys{b, Eigen::MatrixXcd::Zero(B, J), Eigen::VectorXcd::Ones(J)};
    for (Eigen::Index i = 0; i < S; ++i) sys.vectors.row(static_cast<Eigen::Index>(order[static_cast<std::size_t>(i)])) = local.row(i);
    if (opt.random_coefficients) {
        std::uniform_real_distribution<double> mod(0.5, 1.5), ang(0.0, 2.0 * std::numbers::pi);
        for (Eigen::Index j = 0; j < J; ++j) {
            const double m = mod(rng);
            const double a = ang(rng);
            sys.coeffs(j) = std::polar(m, a);
        }
    }
    return sys;
}

TimeRule make_time_rule(const TimeSpec& spec) {
    const double period = std::numbers::pi / 2.0;
    const double k = (spec.hi - spec.lo) / period;
    if (std::abs(k - std::round(k)) < 1e-12 && std::round(k) >= 1.0) return trapezoid_rule(spec.lo, spec.hi, spec.nodes);
    return gauss_legendre_rule(spec.lo, spec.hi, spec.nodes);
}

namespace {

// |sum_j n_j |F_kj|^2| for the columns of F.
Eigen::VectorXd system_density(const Eigen::MatrixXcd& F, const Eigen::VectorXcd& n) {
    return (F.cwiseAbs2().cast<cplx>() * n).cwiseAbs();
}

double hermite_phi(const OrthonormalSystem& sys, const Eigen::MatrixXcd& phi, const TensorGrid& grid, double t,
                   double q) {
    const Eigen::VectorXcd ph =
        (sys.basis->eigenvalues() * (-t)).unaryExpr([](double x) { return std::exp(cplx(0.0, x)); });
    const Eigen::MatrixXcd F = phi * (ph.asDiagonal() * sys.vectors);
    return weighted_lp_norm(grid, system_density(F, sys.coeffs), q);
}

} // namespace

double strichartz_lhs(const OrthonormalSystem& sys, Propagator P, const ExponentPair& e, const TimeSpec& spec,
                      const TensorGrid& grid) {
    if (sys.size() == 0 || sys.coeffs.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    const Eigen::MatrixXcd phi = sys.basis->evaluate(grid).cast<cplx>();
    if (P == Propagator::hermite) {
        const TimeRule rule = make_time_rule(spec);
        std::vector<double> inner(rule.size());
        for (std::size_t i = 0; i < rule.size(); ++i) inner[i] = hermite_phi(sys, phi, grid, rule.nodes[i], e.q);
        return time_lp_norm(rule, inner, e.p);
    }
    // P = -Delta: ||rho_s||_q = (1+v^2)^{a(1/q - 1)} ||rho^H_tau||_q with a = d_eff/2, ds = (1+v^2) dtau.
    const double a = 0.5 * sys.basis->structure().d_eff();
    const double decay = a * (1.0 / e.q - 1.0);
    const double quarter = std::numbers::pi / 4.0;
    if (std::isinf(e.p)) {
        const TimeRule rule = trapezoid_rule(-quarter, quarter, spec.nodes);
        double m = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double v = std::tan(2.0 * rule.nodes[i]);
            m = std::max(m, std::pow(1.0 + v * v, decay) * hermite_phi(sys, phi, grid, rule.nodes[i], e.q));
        }
        return m;
    }
    const double expo = 1.0 + e.p * decay;
    const TimeRule rule = std::abs(expo) < 1e-12 ? trapezoid_rule(-quarter, quarter, spec.nodes)
                                                 : gauss_legendre_rule(-quarter, quarter, spec.nodes);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = std::tan(2.0 * rule.nodes[i]);
        sum += rule.weights[i] * std::pow(1.0 + v * v, expo) *
               std::pow(hermite_phi(sys, phi, grid, rule.nodes[i], e.q), e.p);
    }
    return std::pow(sum, 1.0 / e.p);
}

double strichartz_lhs_laplacian_direct(const OrthonormalSystem& sys, const ExponentPair& e, int time_nodes,
                                       const TensorGrid& eval_grid, const TensorGrid& kernel_grid) {
    if (std::isinf(e.p)) throw DomainError("strichartz_lhs_laplacian_direct: finite p required");
    const double quarter = std::numbers::pi / 4.0;
    const TimeRule rule = gauss_legendre_rule(-quarter, quarter, time_nodes);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = std::tan(2.0 * rule.nodes[i]);
        const double s = 0.5 * v;
        const TensorGrid phys = eval_grid.dilated(std::sqrt(1.0 + v * v));
        Eigen::MatrixXcd F(static_cast<Eigen::Index>(phys.size()), sys.size());
        for (Eigen::Index j = 0; j < sys.size(); ++j) {
            const StateVector f = sys.state(j);
            F.col(j) = std::abs(s) >= 0.5 ? free_evolve_via_kernel(s, f, phys.flat_nodes(), kernel_grid)
                                           : free_evolve_via_lens(v, f, phys.flat_nodes());
        }
        const double norm = weighted_lp_norm(phys, system_density(F, sys.coeffs), e.q);
        sum += rule.weights[i] * (1.0 + v * v) * std::pow(norm, e.p);
    }
    return std::pow(sum, 1.0 / e.p);
}

double schatten_rhs(const Eigen::VectorXcd& coeffs, double q) {
    if (!(q >= 1.0)) throw DomainError("schatten_rhs: q must be >= 1");
    const double r = 2.0 * q / (q + 1.0);
    double s = 0.0;
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) s += std::pow(std::abs(coeffs(j)), r);
    return std::pow(s, 1.0 / r);
}

StrichartzReport run_inequality(const StrichartzConfig& cfg) {
    const DunklStructure s(cfg.kappa);
    const BasisPtr b = build_basis(s, cfg.N);
    const int order = cfg.grid_order > 0 ? cfg.grid_order : 4 * (cfg.N + 1);
    return run_inequality(cfg, b, TensorGrid(s, order));
}

StrichartzReport run_inequality(const StrichartzConfig& cfg, const BasisPtr& b, const TensorGrid& grid) {
    const auto start = std::chrono::steady_clock::now();
    StrichartzReport r;
    r.config = cfg;
    r.exponents = make_exponent_pair(cfg.q, b->structure().d_eff());
    const OrthonormalSystem sys = generate_system(b, cfg.kind, cfg.J, cfg.seed, cfg.system);
    r.gram_error = sys.gram_error();
    r.lhs = strichartz_lhs(sys, cfg.P, r.exponents, cfg.time, grid);
    r.rhs = schatten_rhs(sys.coeffs, cfg.q);
    r.ratio = r.rhs == 0.0 ? 0.0 : r.lhs / r.rhs;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string report_csv_header() {
    return "d,kappa,N,grid_order,time_nodes,window_lo,window_hi,P,kind,seed,J,q,p,d_eff,admissible,lhs,rhs,ratio,"
           "gram_error,wall_seconds";
}

std::string report_csv_row(const StrichartzReport& r) {
    std::ostringstream os;
    os.precision(12);
    const auto& c = r.config;
    std::string kap;
    for (std::size_t j = 0; j < c.kappa.size(); ++j) kap += (j ? ";" : "") + std::to_string(c.kappa[j]);
    os << c.kappa.size() << ',' << kap << ',' << c.N << ',' << (c.grid_order > 0 ? c.grid_order : 4 * (c.N + 1)) << ','
       << c.time.nodes << ',' << c.time.lo << ',' << c.time.hi << ','
       << (c.P == Propagator::hermite ? "hermite" : "laplacian") << ',' << to_string(c.kind) << ',' << c.seed << ','
       << c.J << ',' << r.exponents.q << ',' << r.exponents.p << ',' << r.exponents.d_eff << ','
       << (r.exponents.admissible ? 1 : 0) << ',' << r.lhs << ',' << r.rhs << ',' << r.ratio << ',' << r.gram_error
       << ',' << r.wall_seconds;
    return os.str();
}

OperatorMatrix duhamel_state(const BasisPtr& b, const SourceFn& R, double t0, double t, int nodes) {
    OperatorMatrix acc = OperatorMatrix::zero(b);
    if (t == t0) return acc;
    const Rule rule = gauss_legendre(nodes, std::min(t0, t), std::max(t0, t));
    const double sign = t > t0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = rule.nodes[i];
        acc.a += sign * rule.weights[i] * conjugate_hermite(R(s), -(t - s)).a;
    }
    return acc;
}

OperatorMatrix duhamel_rank_one(const StateVector& f, double t0, double t) {
    const auto& lambda = f.basis->eigenvalues();
    const auto n = static_cast<Eigen::Index>(f.basis->size());
    OperatorMatrix out = OperatorMatrix::zero(f.basis);
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = 0; k < n; ++k) {
            const double dl = lambda(m) - lambda(k);
            const cplx factor = dl == 0.0 ? cplx(t - t0) : (std::exp(cplx(0.0, (t - t0) * dl)) - 1.0) / cplx(0.0, dl);
            out.a(m, k) = f.coeffs(m) * std::conj(f.coeffs(k)) * factor;
        }
    return out;
}

InhomogeneousResult inhomogeneous_check(const BasisPtr& b, const SourceFn& R, double t0, const ExponentPair& e,
                                        const TensorGrid& grid, const InhomogeneousOptions& opt) {
    const double pi = std::numbers::pi;
    const auto& lambda = b->eigenvalues();
    const double width = lambda.maxCoeff() - lambda.minCoeff();
    const Eigen::MatrixXd phi = b->evaluate(grid);

    const TimeRule outer = gauss_legendre_rule(-pi, pi, opt.time_nodes);
    std::vector<double> inner(outer.size());
    for (std::size_t i = 0; i < outer.size(); ++i) {
        const double t = outer.nodes[i];
        const int n = opt.duhamel_nodes > 0 ? opt.duhamel_nodes
                                            : static_cast<int>(std::ceil(0.5 * width * std::abs(t - t0))) + 30;
        const OperatorMatrix g = duhamel_state(b, R, t0, t, n);
        inner[i] = weighted_lp_norm(grid, density(g, phi), e.q);
    }
    InhomogeneousResult out;
    out.lhs = time_lp_norm(outer, inner, e.p);

    const TimeRule src = gauss_legendre_rule(-pi, pi, opt.source_nodes);
    OperatorMatrix acc = OperatorMatrix::zero(b);
    for (std::size_t i = 0; i < src.size(); ++i) {
        const OperatorMatrix r = R(src.nodes[i]);
        if (!r.is_self_adjoint(1e-10)) throw DomainError("inhomogeneous_check: source is not self-adjoint");
        acc.a += src.weights[i] * conjugate_hermite({b, operator_modulus(r.a)}, -src.nodes[i]).a;
    }
    out.rhs_self_adjoint_defect = acc.self_adjoint_defect();
    out.rhs = opt.constant * schatten_norm(acc, 2.0 * e.q / (e.q + 1.0));
    out.ratio = out.rhs == 0.0 ? 0.0 : out.lhs / out.rhs;
    return out;
}

} // namespace dunkl
