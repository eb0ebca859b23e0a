#include "dunkl/operator_matrix.hpp"

#include "dunkl/errors.hpp"

namespace dunkl {

OperatorMatrix OperatorMatrix::zero(BasisPtr b) {
    const auto n = static_cast<Eigen::Index>(b->size());
    return {std::move(b), Eigen::MatrixXcd::Zero(n, n)};
}

OperatorMatrix OperatorMatrix::rank_one(const StateVector& f, const StateVector& g) {
    if (f.basis != g.basis) throw DomainError("rank_one: states live on different bases");
    return {f.basis, f.coeffs * g.coeffs.adjoint()};
}

} // namespace dunkl
