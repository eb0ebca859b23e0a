#pragma once

#include "dunkl/schatten.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dunkl {

struct ExponentPair {
    double q = 1.0;
    double p = kInf;
    double d_eff = 1.0;
    bool admissible = true;
};

// p = 2q / (d_eff (q - 1)); q = 1 gives p = inf. Throws for q < 1.
[[nodiscard]] double admissible_p(double q, double d_eff);
// Upper end of the window 1 <= q < (d_eff + 1)/(d_eff - 1); infinite for d_eff <= 1.
[[nodiscard]] double admissible_q_max(double d_eff);
[[nodiscard]] ExponentPair make_exponent_pair(double q, double d_eff);

struct OrthonormalSystem {
    BasisPtr basis;
    Eigen::MatrixXcd vectors;  // one column per f_j
    Eigen::VectorXcd coeffs;   // n_j

    [[nodiscard]] Eigen::Index size() const noexcept { return vectors.cols(); }
    [[nodiscard]] double gram_error() const;
    [[nodiscard]] StateVector state(Eigen::Index j) const { return {basis, vectors.col(j)}; }
    // sum_j n_j |f_j><f_j|
    [[nodiscard]] OperatorMatrix as_operator() const;
};

enum class SystemKind { basis_subset, haar_rotation, gaussian_orthogonalized };
[[nodiscard]] std::string to_string(SystemKind k);
[[nodiscard]] SystemKind system_kind_from_string(const std::string& s);

struct SystemOptions {
    // number of lowest-energy basis functions the system may use; 0 means the whole basis
    std::size_t span = 0;
    // draw n_j as unit-modulus random phases times uniform moduli in [0.5, 1.5] instead of all ones
    bool random_coefficients = false;
};

[[nodiscard]] OrthonormalSystem generate_system(const BasisPtr& b, SystemKind kind, int J, std::uint64_t seed,
                                                const SystemOptions& opt = {});

struct TimeSpec {
    double lo = -3.141592653589793;
    double hi = 3.141592653589793;
    int nodes = 512;
};
// Midpoint trapezoid when the window length is a multiple of pi/2 (the density norms have that period),
// Gauss-Legendre otherwise.
[[nodiscard]] TimeRule make_time_rule(const TimeSpec& spec);

// ||sum_j n_j |e^{-itP} f_j|^2||_{L^p_t L^q_x}. Hermite: over spec's window. Laplacian (P = -Delta): over the
// whole real line through the lens substitution, ignoring the window.
[[nodiscard]] double strichartz_lhs(const OrthonormalSystem& sys, Propagator P, const ExponentPair& e,
                                    const TimeSpec& spec, const TensorGrid& grid);
// Laplacian lhs evaluated at physical points: direct L_{it} kernel quadrature for |t| >= 0.5, lens values below
// (the phase e^{i|z|^2/4t} outruns practical grids at smaller |t|).
[[nodiscard]] double strichartz_lhs_laplacian_direct(const OrthonormalSystem& sys, const ExponentPair& e,
                                                     int time_nodes, const TensorGrid& eval_grid,
                                                     const TensorGrid& kernel_grid);

// (sum_j |n_j|^{2q/(q+1)})^{(q+1)/(2q)}
[[nodiscard]] double schatten_rhs(const Eigen::VectorXcd& coeffs, double q);

struct StrichartzConfig {
    std::vector<double> kappa{0.5};
    int N = 48;
    int grid_order = 0;  // 0: 4(N + 1), where doubling moves integer-power norms by < 1e-10
    TimeSpec time{};
    Propagator P = Propagator::hermite;
    double q = 1.5;
    int J = 8;
    SystemKind kind = SystemKind::haar_rotation;
    std::uint64_t seed = 1;
    SystemOptions system{};
};

struct StrichartzReport {
    StrichartzConfig config;
    ExponentPair exponents;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // lhs / rhs with lhs the mixed norm itself (the 1/p root taken)
    double gram_error = 0.0;
    double wall_seconds = 0.0;
};

// Reuses a prebuilt basis and grid when given.
[[nodiscard]] StrichartzReport run_inequality(const StrichartzConfig& cfg);
[[nodiscard]] StrichartzReport run_inequality(const StrichartzConfig& cfg, const BasisPtr& b, const TensorGrid& grid);

[[nodiscard]] std::string report_csv_header();
[[nodiscard]] std::string report_csv_row(const StrichartzReport& r);

// Inhomogeneous problem with source R(s), self-adjoint for every s.
using SourceFn = std::function<OperatorMatrix(double)>;

// gamma(t) = int_{t0}^{t} e^{i(t-s)H} R(s) e^{-i(t-s)H} ds by Gauss-Legendre with `nodes` points.
[[nodiscard]] OperatorMatrix duhamel_state(const BasisPtr& b, const SourceFn& R, double t0, double t, int nodes);
// Same for R = |f><f| constant in time, from the eigenphases.
[[nodiscard]] OperatorMatrix duhamel_rank_one(const StateVector& f, double t0, double t);

struct InhomogeneousOptions {
    int time_nodes = 64;     // outer Gauss-Legendre nodes on (-pi, pi)
    int duhamel_nodes = 0;   // 0: chosen from the spectral width of the basis
    int source_nodes = 256;  // Gauss-Legendre nodes for the right-hand side time integral
    double constant = 1.0;   // C, taken from a homogeneous run
};

struct InhomogeneousResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double rhs_self_adjoint_defect = 0.0;
};

[[nodiscard]] InhomogeneousResult inhomogeneous_check(const BasisPtr& b, const SourceFn& R, double t0,
                                                      const ExponentPair& e, const TensorGrid& grid,
                                                      const InhomogeneousOptions& opt = {});

} // namespace dunkl
