#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "lpembed/policy.hpp"

namespace lpembed {

/// A k-dimensional subspace of R^m given by a basis matrix (columns span it).
struct Subspace {
    Eigen::MatrixXd basis; // m x k

    Eigen::Index ambient_dim() const { return basis.rows(); } // m
    Eigen::Index dim() const { return basis.cols(); }         // k

    /// Throws ValidationError unless m >= k >= 1, entries finite, and the
    /// columns are linearly independent at the SVD rank tolerance.
    void validate(const NumericPolicy& policy = default_policy()) const;
};

/// Exponent vector of one degree-q monomial in k variables (entries sum to q).
struct MonomialIndex {
    std::vector<int> exponents;

    int degree() const {
        int sum = 0;
        for (int e : exponents) sum += e;
        return sum;
    }
};

/**
 * @brief The coordinatewise-power lift of a subspace.
 *
 * `columns` holds one m-vector per degree-q monomial of the basis under
 * coordinatewise multiplication (q = p/2), in the enumeration order of
 * enumerate_monomials. `ortho` is an orthonormal basis of their span and
 * `rank` its dimension.
 */
struct LiftedSpace {
    Eigen::MatrixXd columns; // m x D
    Eigen::MatrixXd ortho;   // m x rank, orthonormal columns
    Eigen::Index rank = 0;

    Eigen::Index ambient_dim() const { return columns.rows(); }   // m
    Eigen::Index monomial_count() const { return columns.cols(); } // D
};

/**
 * @brief All exponent vectors of total degree q in k variables.
 *
 * Ordered lexicographically with the leading exponent decreasing, e.g.
 * (k=2, q=2) gives (2,0), (1,1), (0,2). The list has C(k+q-1, q) entries;
 * a count above policy.monomial_cap throws CapacityError naming it.
 */
std::vector<MonomialIndex> enumerate_monomials(int k, int q,
                                               const NumericPolicy& policy = default_policy());

/// Coordinatewise product of basis columns with the given multiplicities:
/// coordinate i of the result is prod_j basis(i,j)^exponents[j].
Eigen::VectorXd monomial_vector(const Eigen::MatrixXd& basis, const MonomialIndex& idx);

/**
 * @brief Orthonormal basis of the column space of a matrix.
 *
 * Computed from a thin SVD; directions with singular value at or below tau
 * are discarded. Pass tau <= 0 to use max(m, D) * machine_eps * sigma_max.
 * Throws RankDeficiency on all-zero input.
 */
std::pair<Eigen::MatrixXd, Eigen::Index> orthonormal_column_basis(const Eigen::MatrixXd& matrix,
                                                                  double tau = -1.0);

/// Builds the degree-p/2 monomial columns and their orthonormal basis.
LiftedSpace build_lift(const Subspace& subspace, int p,
                       const NumericPolicy& policy = default_policy());

/// Exact monomial count next to the two closed-form estimates for it.
struct DimensionBounds {
    std::int64_t exact = 0;    // C(k + p/2 - 1, p/2)
    double paper_bound = 0.0;  // (10k/p)^(p/2)
    double naive_bound = 0.0;  // k^(p/2)
};

DimensionBounds dimension_bounds(int k, int p);

} // namespace lpembed
