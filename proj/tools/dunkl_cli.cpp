// Command-line front end for the Z_2^d Dunkl toolkit.
// Exit codes: 0 all asserted checks pass, 2 an identity check failed, 64 configuration error.
#include "dunkl/config.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/free_propagator.hpp"
#include "dunkl/hartree.hpp"
#include "dunkl/mhls.hpp"
#include "dunkl/strichartz.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>

using namespace dunkl;
using nlohmann::json;

namespace {

constexpr int kExitCheck = 2;
constexpr int kExitConfig = 64;

// Everything the subcommands read, as key/value text. File values first, flags on top.
struct Context {
    KeyValueConfig cfg;
    std::filesystem::path out_dir = ".";

    [[nodiscard]] DunklStructure structure() const {
        std::vector<double> k = cfg.get_doubles("kappa", {0.5});
        int d = cfg.get_int("d", static_cast<int>(k.size()));
        if (cfg.has("group")) {
            const std::string g = cfg.get_string("group", "");
            const auto caret = g.find('^');
            if (g.rfind("Z2", 0) != 0 || caret == std::string::npos)
                throw ConfigError("group must look like Z2^d, got '" + g + "'");
            KeyValueConfig tmp;
            tmp.set("group_d", g.substr(caret + 1));
            const int gd = tmp.get_int("group_d", 0);
            if (cfg.has("d") && gd != d) throw ConfigError("group " + g + " disagrees with d = " + std::to_string(d));
            d = gd;
        }
        if (d < 1 || d > 3) throw ConfigError("d must be 1, 2 or 3");
        if (k.size() == 1) k.assign(static_cast<std::size_t>(d), k[0]);
        if (static_cast<int>(k.size()) != d) throw ConfigError("kappa needs 1 or d entries");
        for (double v : k)
            if (!(v >= 0.0)) throw ConfigError("kappa entries must be >= 0");
        return DunklStructure(k);
    }
    [[nodiscard]] int positive_int(const std::string& key, int fallback) const {
        const int v = cfg.get_int(key, fallback);
        if (v < 1) throw ConfigError(key + " must be positive");
        return v;
    }
    [[nodiscard]] std::filesystem::path path(const std::string& name) const { return out_dir / name; }
};

json config_echo(const KeyValueConfig& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg.entries()) j[k] = v;
    return j;
}

void write_json(const Context& ctx, const std::string& name, json summary) {
    summary["config"] = config_echo(ctx.cfg);
    std::ofstream f(ctx.path(name));
    f << summary.dump(2) << '\n';
}

std::ofstream open_csv(const Context& ctx, const std::string& name, const std::string& header) {
    std::ofstream f(ctx.path(name));
    if (!f) throw ConfigError("cannot write " + ctx.path(name).string());
    std::istringstream echo(ctx.cfg.echo());
    for (std::string line; std::getline(echo, line);) f << "# " << line << '\n';
    f << header << '\n';
    return f;
}

int verdict(bool ok, json& summary) {
    summary["pass"] = ok;
    return ok ? 0 : kExitCheck;
}

// verify-kernels: lens relation, K_it symmetries and bound, Mehler series against the closed form
int verify_kernels(const Context& ctx) {
    const DunklStructure s = ctx.structure();
    const auto d = static_cast<std::size_t>(s.dim());
    const std::vector<double> vs = ctx.cfg.get_doubles("v_values", {0.1, 0.5, 1.0, 2.0, 10.0});
    const std::vector<double> ws = ctx.cfg.get_doubles("mehler_w", {0.3, 0.5, 0.7});
    const int mehler_N = ctx.positive_int("mehler_N", 60);
    const double a = s.half_dim();
    const double pi = std::numbers::pi;
    const std::vector<double> wide{-4.0, -2.0, 0.0, 2.0, 4.0}, narrow{-1.0, -0.5, 0.0, 0.5, 1.0};
    double lens = 0.0, conj = 0.0, shift = 0.0, bound = 0.0, mehler = 0.0;
    auto lattice = [&](const std::vector<double>& axis, auto&& f) {
        std::vector<double> x(d), y(d);
        for (double xa : axis)
            for (double ya : axis) {
                for (std::size_t j = 0; j < d; ++j) {
                    x[j] = xa / static_cast<double>(j + 1);
                    y[j] = (j % 2 == 0 ? ya : -ya) / static_cast<double>(j + 1);
                }
                f(x, y);
            }
    };
    for (double v : vs)
        lattice(wide, [&](const auto& x, const auto& y) { lens = std::max(lens, lens_relation_relative_residual(s, v, x, y)); });
    const double C = s.m_kappa() * std::pow(pi / 4.0, a);
    for (double t : {0.1, 0.3, 0.5, 0.7})
        lattice(wide, [&](const auto& x, const auto& y) {
            const cplx K = kernel_Kit(s, t, x, y);
            const double sc = std::max(1.0, std::abs(K));
            std::vector<double> mx(x);
            for (double& c : mx) c = -c;
            conj = std::max(conj, std::abs(kernel_Kit(s, -t, x, y) - std::conj(K)) / sc);
            shift = std::max(shift, std::abs(kernel_Kit(s, t + pi / 2.0, x, y) -
                                             std::exp(cplx(0.0, pi * a)) * kernel_Kit(s, t, mx, y)) / sc);
            bound = std::max(bound, std::abs(K) * std::pow(t, a) / C);
        });
    for (double w : ws) {
        if (!(std::abs(w) < 1.0)) throw ConfigError("mehler_w entries must lie in (-1, 1)");
        lattice(narrow, [&](const auto& x, const auto& y) {
            const cplx c = mehler_closed_form(s, w, x, y);
            mehler = std::max(mehler, std::abs(mehler_series(s, mehler_N, w, x, y) - c) / std::abs(c));
        });
    }
    json out{{"lens_relative_residual", lens}, {"conjugation", conj},     {"shift", shift},
             {"bound_ratio", bound},           {"mehler_relative", mehler}};
    const bool ok = lens < 1e-10 && conj < 1e-12 && shift < 1e-12 && bound <= 1.0 && mehler < 1e-10;
    const int code = verdict(ok, out);
    write_json(ctx, "verify_kernels.json", out);
    std::cout << out.dump(2) << '\n';
    return code;
}

StrichartzConfig strichartz_config(const Context& ctx) {
    StrichartzConfig c;
    const DunklStructure s = ctx.structure();
    c.kappa.assign(s.kappa().begin(), s.kappa().end());
    c.N = ctx.positive_int("N", 48);
    c.grid_order = ctx.cfg.get_int("grid_order", 0);
    c.time.nodes = ctx.positive_int("time_nodes", 512);
    c.time.lo = ctx.cfg.get_double("window_lo", -std::numbers::pi);
    c.time.hi = ctx.cfg.get_double("window_hi", std::numbers::pi);
    if (!(c.time.hi > c.time.lo)) throw ConfigError("window_hi must exceed window_lo");
    const std::string op = ctx.cfg.get_string("operator", "hermite");
    if (op == "hermite")
        c.P = Propagator::hermite;
    else if (op == "laplacian")
        c.P = Propagator::laplacian;
    else
        throw ConfigError("operator must be hermite or laplacian");
    c.J = ctx.positive_int("J", 8);
    c.seed = static_cast<std::uint64_t>(ctx.cfg.get_int("seed", 1));
    try {
        c.kind = system_kind_from_string(ctx.cfg.get_string("kind", "haar_rotation"));
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    c.system.span = static_cast<std::size_t>(ctx.cfg.get_int("span", 0));
    c.system.random_coefficients = ctx.cfg.get_int("random_coefficients", 0) != 0;

    const double d_eff = s.d_eff();
    const bool has_q = ctx.cfg.has("q"), has_p = ctx.cfg.has("p");
    c.q = ctx.cfg.get_double("q", 1.5);
    if (has_p) {
        const double p = ctx.cfg.get_double("p", 0.0);
        if (!(p > 2.0 / d_eff)) throw ConfigError("p must exceed 2/d_eff");
        const double q_from_p = std::isinf(p) ? 1.0 : p * d_eff / (p * d_eff - 2.0);
        if (has_q && std::abs(q_from_p - c.q) > 1e-9)
            throw ConfigError("p and q are not on the admissible line 2/p + d_eff/q = d_eff");
        c.q = q_from_p;
    }
    if (!(c.q >= 1.0)) throw ConfigError("q must be >= 1");
    return c;
}

int strichartz(const Context& ctx) {
    const StrichartzConfig c = strichartz_config(ctx);
    const StrichartzReport r = run_inequality(c);
    std::ofstream csv = open_csv(ctx, "strichartz.csv", report_csv_header());
    csv << report_csv_row(r) << '\n';
    json out{{"q", r.exponents.q},       {"p", r.exponents.p},   {"d_eff", r.exponents.d_eff},
             {"admissible", r.exponents.admissible}, {"lhs", r.lhs}, {"rhs", r.rhs},
             {"ratio", r.ratio},         {"gram_error", r.gram_error}, {"wall_seconds", r.wall_seconds}};
    // asserted: orthonormality, and the q = 1 bound that holds with constant 1
    bool ok = r.gram_error < 1e-10;
    if (c.q == 1.0) ok = ok && r.ratio <= 1.0 + 1e-8;
    const int code = verdict(ok, out);
    write_json(ctx, "strichartz.json", out);
    std::cout << out.dump(2) << '\n';
    return code;
}

int sweep(const Context& ctx) {
    StrichartzConfig c = strichartz_config(ctx);
    const double q_min = ctx.cfg.get_double("q_min", 1.1);
    const double q_max = ctx.cfg.get_double("q_max", 1.9);
    const int steps = ctx.positive_int("steps", 9);
    if (!(q_min >= 1.0) || !(q_max >= q_min)) throw ConfigError("need 1 <= q_min <= q_max");
    const std::vector<int> Js = ctx.cfg.get_ints("J_list", {1, 2, 4, 8, 16, 32});
    const std::vector<int> seeds = ctx.cfg.get_ints("seeds", {1, 2, 3, 4, 5});
    const DunklStructure s(c.kappa);
    const BasisPtr b = build_basis(s, c.N);
    const TensorGrid g(s, c.grid_order > 0 ? c.grid_order : 4 * (c.N + 1));
    std::ofstream csv = open_csv(ctx, "sweep.csv", report_csv_header());
    std::ofstream dat(ctx.path("ratio_vs_q.dat"));
    dat << "# q max_ratio_over_J_and_seeds\n";
    json curve = json::array();
    bool ok = true;
    for (int i = 0; i < steps; ++i) {
        c.q = steps == 1 ? q_min : q_min + (q_max - q_min) * i / (steps - 1);
        double best = 0.0;
        for (int J : Js)
            for (int seed : seeds) {
                c.J = J;
                c.seed = static_cast<std::uint64_t>(seed);
                const StrichartzReport r = run_inequality(c, b, g);
                csv << report_csv_row(r) << '\n';
                best = std::max(best, r.ratio);
                ok = ok && r.gram_error < 1e-10;
            }
        dat << c.q << ' ' << best << '\n';
        curve.push_back({{"q", c.q}, {"max_ratio", best}, {"admissible", make_exponent_pair(c.q, s.d_eff()).admissible}});
    }
    json out{{"curve", curve}};
    const int code = verdict(ok, out);
    write_json(ctx, "sweep.json", out);
    std::cout << out.dump(2) << '\n';
    return code;
}

int dual_schatten(const Context& ctx) {
    const DunklStructure s = ctx.structure();
    const BasisPtr b = build_basis(s, ctx.positive_int("N", 16));
    const TensorGrid grid = oversampled_grid(*b);
    const int nodes = ctx.positive_int("time_nodes", 128);
    const double qprime = ctx.cfg.get_double("qprime", 1.0 + s.d_eff() / 2.0);
    if (!(qprime >= 1.0)) throw ConfigError("qprime must be >= 1");
    const double pi = std::numbers::pi;
    auto samples = [&](const TimeRule& time) {
        Eigen::MatrixXd V(static_cast<Eigen::Index>(time.size()), static_cast<Eigen::Index>(grid.size()));
        for (std::size_t i = 0; i < time.size(); ++i)
            for (std::size_t k = 0; k < grid.size(); ++k) {
                double r2 = 0.0;
                for (double x : grid.node(k)) r2 += x * x;
                V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = (1.0 + 0.5 * std::cos(time.nodes[i])) * std::exp(-r2);
            }
        return V;
    };
    const TimeRule t1 = trapezoid_rule(-pi, pi, nodes), t2 = trapezoid_rule(-pi, pi, 2 * nodes);
    const Eigen::MatrixXd V1 = samples(t1);
    double bound = 0.0;
    for (Eigen::Index i = 0; i < V1.rows(); ++i) bound += t1.weights[static_cast<std::size_t>(i)] * V1.row(i).cwiseAbs().maxCoeff();
    const double op = dual_functional(b, t1, grid, V1, kInf);
    const double v1 = dual_functional(b, t1, grid, V1, qprime);
    const double v2 = dual_functional(b, t2, grid, samples(t2), qprime);
    json out{{"qprime", qprime}, {"value", v1}, {"value_doubled_time_grid", v2}, {"operator_norm", op}, {"triangle_bound", bound}};
    const int code = verdict(op <= bound * (1.0 + 1e-8) && std::abs(v1 - v2) <= 1e-4 * v2, out);
    write_json(ctx, "dual_schatten.json", out);
    std::cout << out.dump(2) << '\n';
    return code;
}

int inhomogeneous(const Context& ctx) {
    const DunklStructure s = ctx.structure();
    const int N = ctx.positive_int("N", 16);
    const BasisPtr b = build_basis(s, N);
    const TensorGrid grid(s, ctx.cfg.get_int("grid_order", 2 * N + 2));
    const double q = ctx.cfg.get_double("q", 1.5);
    const double t0 = ctx.cfg.get_double("t0", 0.0);
    const auto seed = static_cast<std::uint64_t>(ctx.cfg.get_int("seed", 4));
    const int rank = ctx.positive_int("rank", 3);
    std::vector<StateVector> g;
    for (int k = 0; k < rank; ++k) g.push_back(random_band_limited_state(b, N / 2, seed + static_cast<std::uint64_t>(k)));
    const SourceFn src = [&](double t) {
        OperatorMatrix m = OperatorMatrix::zero(b);
        for (int k = 0; k < rank; ++k)
            m.a += std::cos((k + 1) * t + k) * OperatorMatrix::rank_one(g[static_cast<std::size_t>(k)], g[static_cast<std::size_t>(k)]).a;
        return m;
    };
    const InhomogeneousResult r = inhomogeneous_check(b, src, t0, make_exponent_pair(q, s.d_eff()), grid);
    // oracle: constant rank-1 source
    const OperatorMatrix R = OperatorMatrix::rank_one(g[0], g[0]);
    const double t = t0 + 1.3;
    const int nodes = static_cast<int>(std::ceil(0.5 * (4 * N + 2 * s.d_eff()) * 1.3)) + 30;
    const double oracle = (duhamel_state(b, [&](double) { return R; }, t0, t, nodes).a - duhamel_rank_one(g[0], t0, t).a)
                              .cwiseAbs()
                              .maxCoeff();
    json out{{"lhs", r.lhs}, {"rhs", r.rhs}, {"ratio", r.ratio}, {"rhs_self_adjoint_defect", r.rhs_self_adjoint_defect},
             {"duhamel_oracle_error", oracle}};
    const int code = verdict(oracle < 1e-8 && std::isfinite(r.ratio), out);
    write_json(ctx, "inhomogeneous.json", out);
    std::cout << out.dump(2) << '\n';
    return code;
}

int kss(const Context& ctx) {
    const DunklStructure s = ctx.structure();
    if (s.dim() != 1) throw ConfigError("kss runs in d = 1");
    const BasisPtr b = build_basis(s, ctx.positive_int("N", 128));
    const std::vector<double> quad = ctx.cfg.get_doubles("quadruple", {1.0, 0.5, 0.2, 1.0});
    if (quad.size() != 4) throw ConfigError("quadruple needs alpha, beta, gamma, delta");
    const double r = ctx.cfg.get_double("r", 2.0);
    const Profile f = [](Point x) { return cplx(std::exp(-0.5 * x[0] * x[0])); };
    const Profile g = [](Point x) { return cplx(std::exp(-0.25 * x[0] * x[0])); };
    KssResult res;
    try {
        res = kss_check(b, f, g, quad[0], quad[1], quad[2], quad[3], r, 2.0);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    json out{{"lhs", res.lhs}, {"rhs", res.rhs}, {"ratio", res.ratio()}, {"determinant", res.determinant}, {"r", r}};
    // kappa = 0 at r = 2 is an equality, held to the truncation tolerance
    const bool classical = s.kappa(0) == 0.0 && r == 2.0;
    const bool ok = classical ? std::abs(res.ratio() - 1.0) < 1e-3 : res.ratio() <= 1.0;
    const int code = verdict(ok, out);
    write_json(ctx, "kss.json", out);
    std::cout << out.dump(2) << '\n';
    return code;
}

int mhls(const Context& ctx) {
    const int N = ctx.cfg.get_int("hls_N", 2);
    if (N != 2 && N != 3) throw ConfigError("hls_N must be 2 or 3");
    const double r = ctx.cfg.get_double("r", N == 2 ? 1.5 : 2.0);
    const int nodes = ctx.positive_int("nodes", 48);
    const double lambda = ctx.cfg.get_double("lambda", 2.7);
    HlsExponents e;
    try {
        e = symmetric_hls_exponents(N, r);
    } catch (const DomainError& err) {
        throw ConfigError(err.what());
    }
    std::vector<HlsProfile> f, g;
    for (int k = 0; k < N; ++k) {
        const double c = 0.5 * k;
        f.push_back({[c](double t) {
                         if (t <= 0.0 || t >= 1.0) return 0.0;
                         return (1.0 + c * t) * std::exp(-1.0 / (t * (1.0 - t)));
                     },
                     0.0, 1.0});
        g.push_back(f.back().dilated(lambda));
    }
    const HlsResult base = mhls_check(f, e, {nodes});
    const double Il = mhls_integral(g, e, {nodes + 7});
    const double cov = std::abs(Il / std::pow(lambda, N / r) - base.lhs) / base.lhs;
    json out{{"lhs", base.lhs}, {"rhs", base.rhs}, {"ratio", base.ratio()}, {"dilation_covariance", cov}};
    const int code = verdict(std::isfinite(base.lhs) && cov < 1e-6, out);
    write_json(ctx, "mhls.json", out);
    std::cout << out.dump(2) << '\n';
    return code;
}

int hartree(const Context& ctx) {
    const DunklStructure s = ctx.structure();
    if (s.dim() != 1) throw ConfigError("hartree runs in d = 1");
    const int N = ctx.positive_int("N", 16);
    const BasisPtr b = build_basis(s, N);
    const StateVector u = random_band_limited_state(b, N / 2, static_cast<std::uint64_t>(ctx.cfg.get_int("seed", 5)));
    HartreeConfig c;
    c.gamma0 = OperatorMatrix::rank_one(u, u);
    c.T = ctx.cfg.get_double("T", 0.1);
    c.steps = ctx.cfg.get_int("hartree_steps", 16);
    c.coupling = ctx.cfg.get_double("coupling", 1.0);
    c.q = ctx.cfg.get_double("q", 1.5);
    const std::string profile = ctx.cfg.get_string("w_profile", "gaussian");
    if (profile == "gaussian") {
        c.w = gaussian_interaction(s.kappa(0), ctx.cfg.get_double("strength", 1.0), ctx.cfg.get_double("width", 0.5));
    } else if (profile == "cos_potential") {
        c.interaction = InteractionKind::multiplication;
        c.potential = [](Point x) { return cplx(std::cos(x[0])); };
    } else {
        throw ConfigError("w_profile must be gaussian or cos_potential");
    }
    HartreeResult r;
    try {
        r = solve_hartree(c);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    std::ofstream csv = open_csv(ctx, "hartree.csv",
                                 "iteration,residual,contraction,trace_drift,self_adjoint_defect,schatten_max");
    csv.precision(17);
    double defect = 0.0;
    for (const IterationRecord& it : r.log) {
        csv << it.iteration << ',' << it.residual << ',' << it.contraction << ',' << it.trace_drift << ','
            << it.self_adjoint_defect << ',' << it.schatten_max << '\n';
        defect = std::max(defect, it.self_adjoint_defect);
    }
    json out{{"converged", r.converged},
             {"iterations", r.log.size()},
             {"interaction", to_string(c.interaction)},
             {"final_residual", r.log.empty() ? 0.0 : r.log.back().residual},
             {"trace_drift", r.log.empty() ? 0.0 : r.log.back().trace_drift},
             {"self_adjoint_defect", defect},
             {"potential_imag_residual", r.potential_imag_residual}};
    const bool ok = r.converged && !r.log.empty() && r.log.back().trace_drift < 1e-8 && defect < 1e-10;
    const int code = verdict(ok, out);
    write_json(ctx, "hartree.json", out);
    std::cout << out.dump(2) << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dunkl harmonic analysis toolkit on Z_2^d"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, out_dir = ".";
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--out-dir", out_dir, "directory for CSV, JSON and .dat outputs");

    // flags land in the config under their key; the subcommand reads only the config
    std::map<std::string, std::string> flags;
    std::vector<std::pair<CLI::Option*, std::string>> bound;
    auto bind = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
        bound.emplace_back(sub->add_option(flag, flags[key], help), key);
    };
    auto common = [&](CLI::App* sub) {
        bind(sub, "--d", "d", "dimension");
        bind(sub, "--kappa", "kappa", "multiplicities, comma separated");
        bind(sub, "--group", "group", "reflection group, Z2^d");
        bind(sub, "--N", "N", "basis degree");
        bind(sub, "--seed", "seed", "RNG seed");
    };

    CLI::App* vk = app.add_subcommand("verify-kernels", "Mehler formula, kernel relation, K_it symmetries");
    common(vk);
    bind(vk, "--mehler-w", "mehler_w", "Mehler parameters w in (-1, 1), comma separated");
    bind(vk, "--mehler-N", "mehler_N", "Mehler series truncation degree");
    CLI::App* st = app.add_subcommand("strichartz", "one orthonormal Strichartz evaluation");
    common(st);
    bind(st, "--p", "p", "time exponent (sets q through the admissible line)");
    bind(st, "--q", "q", "space exponent");
    bind(st, "--J", "J", "system size");
    bind(st, "--operator", "operator", "hermite or laplacian");
    bind(st, "--kind", "kind", "basis_subset, haar_rotation or gaussian_orthogonalized");
    bind(st, "--time-nodes", "time_nodes", "time quadrature nodes");
    CLI::App* ds = app.add_subcommand("dual-schatten", "dual Schatten functional");
    common(ds);
    bind(ds, "--qprime", "qprime", "dual exponent q'");
    CLI::App* ih = app.add_subcommand("inhomogeneous", "inhomogeneous corollary with a random finite-rank source");
    common(ih);
    bind(ih, "--q", "q", "space exponent");
    bind(ih, "--rank", "rank", "source rank");
    CLI::App* ks = app.add_subcommand("kss", "Kato-Seiler-Simon type trace bound");
    common(ks);
    bind(ks, "--r", "r", "Schatten exponent");
    bind(ks, "--quadruple", "quadruple", "alpha,beta,gamma,delta");
    CLI::App* mh = app.add_subcommand("mhls", "multilinear Hardy-Littlewood-Sobolev check");
    bind(mh, "--hls-N", "hls_N", "number of factors, 2 or 3");
    bind(mh, "--r", "r", "common exponent r");
    bind(mh, "--nodes", "nodes", "Gauss-Jacobi nodes per variable");
    CLI::App* sw = app.add_subcommand("sweep", "ratio against q over systems and seeds");
    common(sw);
    bind(sw, "--q-min", "q_min", "smallest q");
    bind(sw, "--q-max", "q_max", "largest q");
    bind(sw, "--steps", "steps", "number of q values");
    bind(sw, "--kind", "kind", "system kind");
    bind(sw, "--J-list", "J_list", "system sizes, comma separated");
    bind(sw, "--seeds", "seeds", "seeds, comma separated");
    CLI::App* ht = app.add_subcommand("hartree", "Picard iteration for the Hartree equation, d = 1");
    common(ht);
    bind(ht, "--w-profile", "w_profile", "gaussian or cos_potential");
    bind(ht, "--coupling", "coupling", "interaction strength");
    bind(ht, "--T", "T", "time horizon");
    bind(ht, "--steps", "hartree_steps", "Lobatto time nodes");
    bind(ht, "--width", "width", "Gaussian interaction width (standard deviation)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    Context ctx;
    try {
        if (!config_path.empty()) ctx.cfg = KeyValueConfig::load(config_path);
        for (const auto& [opt, key] : bound)
            if (opt->count() > 0) ctx.cfg.set(key, flags[key]);
        ctx.out_dir = out_dir;
        std::filesystem::create_directories(ctx.out_dir);
        if (vk->parsed()) return verify_kernels(ctx);
        if (st->parsed()) return strichartz(ctx);
        if (ds->parsed()) return dual_schatten(ctx);
        if (ih->parsed()) return inhomogeneous(ctx);
        if (ks->parsed()) return kss(ctx);
        if (mh->parsed()) return mhls(ctx);
        if (sw->parsed()) return sweep(ctx);
        if (ht->parsed()) return hartree(ctx);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        // parameters outside the supported domain
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
