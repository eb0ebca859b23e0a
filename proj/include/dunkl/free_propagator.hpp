#pragma once

#include "dunkl/hermite.hpp"
#include "dunkl/quadrature.hpp"

#include <Eigen/Dense>

namespace dunkl {

// Heat kernel of e^{t Delta}, t > 0.
[[nodiscard]] double heat_kernel(const DunklStructure& s, double t, Point x, Point y);

// Kernel of e^{it Delta}: M (2it)^{-(d/2+gamma)} e^{i(|x|^2+|y|^2)/(4t)} E(x/(2it), y), principal branch.
// The complex overload continues it off the real axis; t = -i s reproduces the heat kernel.
[[nodiscard]] cplx kernel_Lit(const DunklStructure& s, double t, Point x, Point y);
[[nodiscard]] cplx kernel_Lit(const DunklStructure& s, cplx t, Point x, Point y);

// Lens substitution v = tan(2 t_hermite) between the Hermite and free propagators.
struct LensMap {
    double v = 0.0;
    double t_hermite = 0.0;   // arctan(v) / 2
    double scale = 1.0;       // (1 + v^2)^{1/2}
    double amplitude = 1.0;   // (1 + v^2)^{(d + 2 gamma)/4}
    double phase_param = 0.0; // v / 2, the free time

    LensMap(const DunklStructure& s, double v);
};

// |K_{it}(x,y) - (1+v^2)^{(d+2g)/4} e^{-iv|x|^2/2} L_{iv/2}(x sqrt(1+v^2), y)| with t = arctan(v)/2.
[[nodiscard]] double lens_relation_residual(const DunklStructure& s, double v, Point x, Point y);
// Same residual divided by |K_{it}(x, y)|.
[[nodiscard]] double lens_relation_relative_residual(const DunklStructure& s, double v, Point x, Point y);

// (e^{i(v/2)Delta} u)(y) = (1+v^2)^{-(d+2g)/4} e^{iv|y|^2/(2(1+v^2))} (e^{-itH} u)(y / sqrt(1+v^2)).
// Valid for every real v; points are a flat array of count*d coordinates.
[[nodiscard]] Eigen::VectorXcd free_evolve_via_lens(double v, const StateVector& u, std::span<const double> points);

// Direct quadrature int L_{is}(y, z) u(z) h^2(z) dz over `grid` (use a grid dilated to the Gaussian decay of u).
[[nodiscard]] Eigen::VectorXcd free_evolve_via_kernel(double s_time, const StateVector& u,
                                                      std::span<const double> points, const TensorGrid& grid);
// Direct quadrature int K_{it}(y, z) u(z) h^2(z) dz.
[[nodiscard]] Eigen::VectorXcd hermite_evolve_via_kernel(double t, const StateVector& u,
                                                         std::span<const double> points, const TensorGrid& grid);

struct NormTransport {
    double lhs = 0.0;            // int_0^{pi/4} phi(t)^p dt, spectral path
    double rhs = 0.0;            // int_0^inf ||rho of e^{is Delta} u||_q^p ds, lens path with v = tan 2t
    double full_window = 0.0;    // int_{-pi}^{pi} phi(t)^p dt
    double full_line = 0.0;      // int_R ||rho of e^{is Delta} u||_q^p ds
    [[nodiscard]] double relative_gap() const { return lhs == 0.0 ? 0.0 : std::abs(lhs - rhs) / lhs; }
    [[nodiscard]] double factor4_gap() const {
        return full_window == 0.0 ? 0.0 : std::abs(full_window - 4.0 * full_line) / full_window;
    }
};

struct NormTransportOptions {
    int time_nodes = 256;
    int space_order = 0;  // 0: twice the basis degree + 2
};

// p = inf is not supported (the identities integrate phi^p).
[[nodiscard]] NormTransport norm_transport_check(const StateVector& u, double p, double q,
                                                 const NormTransportOptions& opt = {});

} // namespace dunkl
