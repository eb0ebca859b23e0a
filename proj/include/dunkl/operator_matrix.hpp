#pragma once

#include "dunkl/hermite.hpp"

#include <Eigen/Dense>

namespace dunkl {

// Operator on the truncated basis, a(mu, nu) = <A phi_nu, phi_mu>.
struct OperatorMatrix {
    BasisPtr basis;
    Eigen::MatrixXcd a;

    [[nodiscard]] double self_adjoint_defect() const { return (a - a.adjoint()).cwiseAbs().maxCoeff(); }
    [[nodiscard]] bool is_self_adjoint(double tol = 1e-12) const { return self_adjoint_defect() <= tol; }
    [[nodiscard]] cplx trace() const { return a.trace(); }

    static OperatorMatrix zero(BasisPtr b);
    // |f><g|
    static OperatorMatrix rank_one(const StateVector& f, const StateVector& g);
};

} // namespace dunkl
