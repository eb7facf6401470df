#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "lpembed/policy.hpp"

namespace lpembed {

/**
 * @brief A finite set of vectors whose outer products sum to the identity.
 *
 * Rows of `vectors` are the candidates v_1, ..., v_M in R^r, and the
 * defining property is sum_i v_i v_i^T = I_r. Such sets arise as the rows
 * of any matrix with orthonormal columns.
 */
struct IsotropicSet {
    Eigen::MatrixXd vectors; // M x r, one candidate per row

    Eigen::Index count() const { return vectors.rows(); }     // M
    Eigen::Index dimension() const { return vectors.cols(); } // r

    /// Throws ValidationError unless M >= r, entries finite, and
    /// ||V^T V - I||_F <= tol * sqrt(r).
    void validate(const NumericPolicy& policy = default_policy()) const;
};

/**
 * @brief Barrier-schedule parameters of the weighted selection loop.
 *
 * The balanced choice delta_lower = 1, delta_upper = (1+theta)/(1-theta),
 * eps_lower = theta, eps_upper = theta(1-theta)/(1+theta) satisfies
 * 1/delta_upper + eps_upper = 1/delta_lower - eps_lower = 1 - theta,
 * which is what makes an admissible candidate exist at every step while
 * finishing in ceil(r/theta^2) steps.
 */
struct SparsifierParams {
    double theta = 0.0;
    double density = 0.0;     // 1/theta^2
    double delta_lower = 0.0; // lower-barrier shift per step
    double delta_upper = 0.0; // upper-barrier shift per step
    double eps_lower = 0.0;   // running bound on the lower potential
    double eps_upper = 0.0;   // running bound on the upper potential
    std::int64_t steps = 0;   // N = ceil(density * r)

    /// The balanced schedule for dimension r and accuracy theta in (0,1).
    static SparsifierParams balanced(Eigen::Index r, double theta);
};

/**
 * @brief Running state of the selection loop.
 *
 * Invariants while the loop runs: lower < lambda_min(A) <= lambda_max(A)
 * < upper, both potentials stay below their eps bounds, and all
 * accumulated weights are nonnegative.
 */
struct BarrierState {
    Eigen::MatrixXd A;       // r x r symmetric PSD accumulator
    double upper = 0.0;      // upper barrier u
    double lower = 0.0;      // lower barrier l
    Eigen::VectorXd weights; // length M, weight accumulated per candidate
    std::int64_t step = 0;
};

/**
 * @brief Output of the sparsifier: support, weights and certificate.
 *
 * Indices in `sigma` are 0-based and sorted ascending; `weights` is
 * aligned with `sigma` and strictly positive. After rescaling, the
 * weighted sum sum_{i in sigma} s_i v_i v_i^T has minimum eigenvalue 1
 * and maximum eigenvalue kappa <= ((1+theta)/(1-theta))^2.
 */
struct SparseWeights {
    std::vector<Eigen::Index> sigma;
    std::vector<double> weights;
    double rescale = 1.0; // divisor applied to all weights
    double kappa = 1.0;   // lambda_max / lambda_min of the pre-rescale sum
};

/// Upper barrier potential trace((uI - A)^(-1)). Requires u > lambda_max(A).
double upper_potential(const Eigen::MatrixXd& A, double u);

/// Lower barrier potential trace((A - lI)^(-1)). Requires l < lambda_min(A).
double lower_potential(const Eigen::MatrixXd& A, double l);

/// Per-candidate admissibility functionals with shifted barriers.
struct StepBounds {
    double upper = 0.0; // U(v): any weight t with 1/t >= U keeps the upper potential from rising
    double lower = 0.0; // L(v): any weight t with 1/t <= L keeps the lower potential from rising
};

/**
 * Evaluates, for a single candidate v against the current state,
 *   U(v) = v^T (u'I - A)^(-2) v / (phi_u(A) - phi_u'(A)) + v^T (u'I - A)^(-1) v
 *   L(v) = v^T (A - l'I)^(-2) v / (phi_l'(A) - phi_l(A)) - v^T (A - l'I)^(-1) v
 * with u' = u + delta_upper, l' = l + delta_lower. A candidate is
 * admissible when L(v) > 0 and U(v) <= L(v).
 */
StepBounds step_bounds(const BarrierState& state, const SparsifierParams& params,
                       const Eigen::VectorXd& v);

/// Fresh state: A = 0, upper = r/eps_upper, lower = -r/eps_lower, zero weights.
BarrierState initial_state(const IsotropicSet& iso, const SparsifierParams& params);

/**
 * @brief One step of the selection loop.
 *
 * Scans all candidates, picks the smallest index maximizing L - U among
 * admissible ones, adds t v v^T with t = 2/(U+L) (t = 1/U on a tie within
 * weight_tie_tol), shifts both barriers, and verifies that neither
 * potential increased beyond potential_tol.
 *
 * Throws InfeasibleStep naming the step when no candidate is admissible,
 * BarrierViolation if a barrier is breached.
 */
BarrierState select_and_add(const BarrierState& state, const IsotropicSet& iso,
                            const SparsifierParams& params,
                            const NumericPolicy& policy = default_policy());

/**
 * @brief Normalizes accumulated weights so the weighted sum has unit floor.
 *
 * Assembles A~ = sum_i s_i v_i v_i^T from scratch, divides every weight by
 * lambda_min(A~), and records the divisor and kappa = lambda_max/lambda_min.
 * Throws RankDeficiency when A~ is singular.
 */
SparseWeights rescale_to_unit_floor(const BarrierState& state, const IsotropicSet& iso,
                                    const NumericPolicy& policy = default_policy());

/**
 * @brief Full sparsifier: ceil(r/theta^2) selection steps plus rescaling.
 *
 * On success the support has at most min(M, ceil(r/theta^2)) indices and
 * for all x: ||x||^2 <= x^T A~ x <= ((1+theta)/(1-theta))^2 ||x||^2.
 */
SparseWeights sparsify(const IsotropicSet& iso, double theta,
                       const NumericPolicy& policy = default_policy());

} // namespace lpembed
