#include "lpembed/lift.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <string>

#include "lpembed/errors.hpp"
#include "lpembed/util.hpp"

namespace lpembed {

void Subspace::validate(const NumericPolicy&) const {
    const Eigen::Index m = ambient_dim();
    const Eigen::Index k = dim();
    if (k < 1) throw ValidationError("subspace needs at least one basis vector");
    if (m < k)
        throw ValidationError("subspace dimension k = " + std::to_string(k) +
                              " exceeds ambient dimension m = " + std::to_string(m));
    if (!basis.allFinite()) throw ValidationError("basis contains non-finite entries");
    Eigen::Index rank = 0;
    try {
        rank = orthonormal_column_basis(basis).second;
    } catch (const RankDeficiency&) {
        throw ValidationError("basis is identically zero");
    }
    if (rank < k)
        throw ValidationError("basis columns are linearly dependent: numerical rank " +
                              std::to_string(rank) + " < k = " + std::to_string(k));
}

std::vector<MonomialIndex> enumerate_monomials(int k, int q, const NumericPolicy& policy) {
    if (k < 1 || q < 1) throw ValidationError("monomial enumeration needs k >= 1 and q >= 1");
    const std::int64_t count = binomial(k + q - 1, q);
    if (count > policy.monomial_cap)
        throw CapacityError("monomial count D = " + std::to_string(count) +
                            " exceeds the cap of " + std::to_string(policy.monomial_cap));

    std::vector<MonomialIndex> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<int> exponents(static_cast<std::size_t>(k), 0);
    // Descending assignment of the leading exponent yields descending
    // lexicographic order: (2,0), (1,1), (0,2).
    auto recurse = [&](auto&& self, int position, int remaining) -> void {
        if (position == k - 1) {
            exponents[static_cast<std::size_t>(position)] = remaining;
            out.push_back(MonomialIndex{exponents});
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            exponents[static_cast<std::size_t>(position)] = e;
            self(self, position + 1, remaining - e);
        }
        exponents[static_cast<std::size_t>(position)] = 0;
    };
    recurse(recurse, 0, q);
    return out;
}

Eigen::VectorXd monomial_vector(const Eigen::MatrixXd& basis, const MonomialIndex& idx) {
    if (static_cast<Eigen::Index>(idx.exponents.size()) != basis.cols())
        throw ValidationError("monomial index has " + std::to_string(idx.exponents.size()) +
                              " exponents for a basis of " + std::to_string(basis.cols()) +
                              " vectors");
    Eigen::VectorXd out = Eigen::VectorXd::Ones(basis.rows());
    for (Eigen::Index j = 0; j < basis.cols(); ++j)
        for (int rep = 0; rep < idx.exponents[static_cast<std::size_t>(j)]; ++rep)
            out = out.cwiseProduct(basis.col(j));
    return out;
}

std::pair<Eigen::MatrixXd, Eigen::Index> orthonormal_column_basis(const Eigen::MatrixXd& matrix,
                                                                  double tau) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix, Eigen::ComputeThinU);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0)
        throw RankDeficiency("cannot orthonormalize an all-zero matrix");
    if (tau <= 0.0) {
        const double dim = static_cast<double>(std::max(matrix.rows(), matrix.cols()));
        tau = dim * std::numeric_limits<double>::epsilon() * sv(0);
    }
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > tau) ++rank;
    if (rank == 0) throw RankDeficiency("all singular values fall below the rank tolerance");
    return {svd.matrixU().leftCols(rank), rank};
}

LiftedSpace build_lift(const Subspace& subspace, int p, const NumericPolicy& policy) {
    if (p < 2 || p % 2 != 0)
        throw ValidationError("p must be even and >= 2, got " + std::to_string(p));
    const int q = p / 2;
    const int k = static_cast<int>(subspace.dim());
    const auto monomials = enumerate_monomials(k, q, policy);

    LiftedSpace lifted;
    lifted.columns.resize(subspace.ambient_dim(), static_cast<Eigen::Index>(monomials.size()));
    for (std::size_t d = 0; d < monomials.size(); ++d)
        lifted.columns.col(static_cast<Eigen::Index>(d)) =
            monomial_vector(subspace.basis, monomials[d]);

    auto [ortho, rank] = orthonormal_column_basis(lifted.columns);
    lifted.ortho = std::move(ortho);
    lifted.rank = rank;
    return lifted;
}

DimensionBounds dimension_bounds(int k, int p) {
    if (k < 1 || p < 2 || p % 2 != 0)
        throw ValidationError("dimension bounds need k >= 1 and even p >= 2");
    const int q = p / 2;
    DimensionBounds out;
    out.exact = binomial(k + q - 1, q);
    out.paper_bound = std::pow(10.0 * k / p, q);
    out.naive_bound = std::pow(static_cast<double>(k), q);
    if (p <= k && static_cast<double>(out.exact) > out.paper_bound)
        throw NumericalError("monomial count exceeds its closed-form bound for k = " +
                             std::to_string(k) + ", p = " + std::to_string(p));
    return out;
}

} // namespace lpembed
