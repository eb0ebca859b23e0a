#include "dunkl/dunkl_operator.hpp"

#include "dunkl/errors.hpp"

#include <cmath>

namespace dunkl {
namespace {

void require_exact(const QuadratureRule1D& rule, int poly_degree, const char* who) {
    // the rule integrates polynomials of degree <= 4n - 1 against |x|^{2 kappa} e^{-x^2}
    if (poly_degree > 4 * rule.order - 1)
        throw QuadratureError(std::string(who) + ": quadrature order " + std::to_string(rule.order) +
                              " below exactness threshold for degree " + std::to_string(poly_degree));
}

Eigen::MatrixXd hermite_table_1d(double kappa, int n_max, std::span<const double> x) {
    Eigen::MatrixXd t(static_cast<Eigen::Index>(x.size()), n_max + 1);
    std::vector<double> buf(static_cast<std::size_t>(n_max + 1));
    for (std::size_t i = 0; i < x.size(); ++i) {
        hermite_functions_1d(kappa, x[i], buf);
        for (int n = 0; n <= n_max; ++n) t(static_cast<Eigen::Index>(i), n) = buf[static_cast<std::size_t>(n)];
    }
    return t;
}

} // namespace

Eigen::MatrixXd dunkl_action_table_1d(double kappa, int n_max, std::span<const double> x) {
    const int half = n_max / 2 + 1;
    Eigen::MatrixXd out(static_cast<Eigen::Index>(x.size()), n_max + 1);
    std::vector<double> l0(static_cast<std::size_t>(half)), l1(static_cast<std::size_t>(half)),
        l2(static_cast<std::size_t>(half));
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        const double u = xi * xi;
        laguerre_functions(kappa - 0.5, u, l0);
        laguerre_functions(kappa + 0.5, u, l1);
        laguerre_functions(kappa + 1.5, u, l2);
        for (int n = 0; n <= n_max; ++n) {
            const auto m = static_cast<std::size_t>(n / 2);
            const double sm = std::sqrt(static_cast<double>(m));
            double v;
            if (n % 2 == 0) {
                // even: derivative only, 2 sqrt(m) phi_{2m-1} - x phi_{2m}
                v = -xi * l0[m];
                if (m > 0) v += 2.0 * sm * xi * l1[m - 1];
            } else {
                // odd x q(u) e^{-u/2}: ((1 + 2 kappa) q + 2 u q' - u q) e^{-u/2}
                v = (1.0 + 2.0 * kappa - u) * l1[m];
                if (m > 0) v += 2.0 * u * sm * l2[m - 1];
            }
            out(static_cast<Eigen::Index>(i), n) = v;
        }
    }
    return out;
}

Eigen::MatrixXd dunkl_operator_matrix_1d(const QuadratureRule1D& rule, int rows, int cols) {
    require_exact(rule, rows + cols - 1, "dunkl_operator_matrix");
    const Eigen::MatrixXd phi = hermite_table_1d(rule.kappa, rows - 1, rule.nodes);
    const Eigen::MatrixXd tphi = dunkl_action_table_1d(rule.kappa, cols - 1, rule.nodes);
    const Eigen::Map<const Eigen::VectorXd> w(rule.plain_weights.data(), static_cast<Eigen::Index>(rule.plain_weights.size()));
    return phi.transpose() * w.asDiagonal() * tphi;
}

Eigen::MatrixXd position_matrix_1d(const QuadratureRule1D& rule, int rows, int cols) {
    require_exact(rule, rows + cols - 1, "position_matrix");
    const int n = std::max(rows, cols) - 1;
    const Eigen::MatrixXd phi = hermite_table_1d(rule.kappa, n, rule.nodes);
    Eigen::VectorXd wx(static_cast<Eigen::Index>(rule.nodes.size()));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        wx(static_cast<Eigen::Index>(i)) = rule.plain_weights[i] * rule.nodes[i];
    return phi.leftCols(rows).transpose() * wx.asDiagonal() * phi.leftCols(cols);
}

Eigen::MatrixXd hermite_form_1d(const QuadratureRule1D& rule, int N) {
    require_exact(rule, 2 * N + 2, "hermite_form");
    const Eigen::MatrixXd phi = hermite_table_1d(rule.kappa, N, rule.nodes);
    const Eigen::MatrixXd tphi = dunkl_action_table_1d(rule.kappa, N, rule.nodes);
    Eigen::VectorXd w(static_cast<Eigen::Index>(rule.nodes.size())), wx2(w.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        w(static_cast<Eigen::Index>(i)) = rule.plain_weights[i];
        wx2(static_cast<Eigen::Index>(i)) = rule.plain_weights[i] * rule.nodes[i] * rule.nodes[i];
    }
    return tphi.transpose() * w.asDiagonal() * tphi + phi.transpose() * wx2.asDiagonal() * phi;
}

Eigen::MatrixXd embed_coordinate(const HermiteBasis& b, const Eigen::MatrixXd& m1d, int j) {
    const int d = b.dim();
    if (j < 0 || j >= d) throw DomainError("coordinate index out of range");
    const auto n = static_cast<Eigen::Index>(b.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    const auto& idx = b.indices();
    const auto jj = static_cast<std::size_t>(j);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& mu = idx[static_cast<std::size_t>(r)];
        // columns differing from mu only in coordinate j
        MultiIndex nu = mu;
        for (int v = 0; v <= b.degree(); ++v) {
            nu[jj] = v;
            const double val = m1d(mu[jj], v);
            if (val != 0.0) out(r, static_cast<Eigen::Index>(b.index_of(nu))) = val;
        }
    }
    return out;
}

OperatorMatrix dunkl_operator_matrix(const BasisPtr& bp, int j) {
    const HermiteBasis& b = *bp;
    if (j < 0 || j >= b.dim()) throw DomainError("dunkl_operator_matrix: coordinate index out of range");
    const auto& rule = b.grid().rules()[static_cast<std::size_t>(j)];
    const int n = b.degree() + 1;
    const Eigen::MatrixXd t1 = dunkl_operator_matrix_1d(rule, n, n);
    return {bp, embed_coordinate(b, t1, j).cast<cplx>()};
}

OperatorMatrix position_matrix(const BasisPtr& bp, int j) {
    const HermiteBasis& b = *bp;
    if (j < 0 || j >= b.dim()) throw DomainError("position_matrix: coordinate index out of range");
    const auto& rule = b.grid().rules()[static_cast<std::size_t>(j)];
    const int n = b.degree() + 1;
    const Eigen::MatrixXd x1 = position_matrix_1d(rule, n, n);
    return {bp, embed_coordinate(b, x1, j).cast<cplx>()};
}

OperatorMatrix hermite_operator_matrix(const BasisPtr& bp, HermiteAssembly how) {
    const HermiteBasis& b = *bp;
    const auto n = static_cast<Eigen::Index>(b.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    const int N = b.degree();
    for (int j = 0; j < b.dim(); ++j) {
        const auto& rule = b.grid().rules()[static_cast<std::size_t>(j)];
        Eigen::MatrixXd form;
        if (how == HermiteAssembly::quadrature_form) {
            form = hermite_form_1d(rule, N);
        } else {
            const Eigen::MatrixXd t = dunkl_operator_matrix_1d(rule, N + 2, N + 1);
            const Eigen::MatrixXd x = position_matrix_1d(rule, N + 2, N + 1);
            form = t.transpose() * t + x.transpose() * x;
        }
        h += embed_coordinate(b, form, j);
    }
    return {bp, h.cast<cplx>()};
}

} // namespace dunkl
