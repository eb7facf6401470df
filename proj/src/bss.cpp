#include "lpembed/bss.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "lpembed/errors.hpp"
#include "lpembed/util.hpp"

namespace lpembed {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensolve(const Eigen::MatrixXd& A,
                                                          bool vectors = true) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.compute(A, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("symmetric eigendecomposition failed to converge");
    return solver;
}

double potential_from_eigenvalues_upper(const Eigen::VectorXd& lam, double u) {
    if (u - lam.maxCoeff() <= 0.0)
        throw BarrierViolation("upper barrier u = " + std::to_string(u) +
                               " does not exceed lambda_max = " +
                               std::to_string(lam.maxCoeff()));
    return (u - lam.array()).inverse().sum();
}

double potential_from_eigenvalues_lower(const Eigen::VectorXd& lam, double l) {
    if (lam.minCoeff() - l <= 0.0)
        throw BarrierViolation("lower barrier l = " + std::to_string(l) +
                               " is not below lambda_min = " +
                               std::to_string(lam.minCoeff()));
    return (lam.array() - l).inverse().sum();
}

} // namespace

void IsotropicSet::validate(const NumericPolicy& policy) const {
    const Eigen::Index M = count();
    const Eigen::Index r = dimension();
    if (r < 1) throw ValidationError("isotropic set needs dimension r >= 1");
    if (M < r)
        throw ValidationError("isotropic set needs at least r vectors, got M = " +
                              std::to_string(M) + " < r = " + std::to_string(r));
    if (!vectors.allFinite()) throw ValidationError("isotropic set contains non-finite entries");
    const Eigen::MatrixXd gram = vectors.transpose() * vectors;
    const double deviation =
        (gram - Eigen::MatrixXd::Identity(r, r)).norm() / std::sqrt(static_cast<double>(r));
    if (deviation > policy.isotropy_tol)
        throw ValidationError("vectors are not isotropic: relative Frobenius deviation " +
                              std::to_string(deviation));
}

SparsifierParams SparsifierParams::balanced(Eigen::Index r, double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw ValidationError("theta must lie in (0, 1), got " + std::to_string(theta));
    if (r < 1) throw ValidationError("dimension r must be >= 1");
    SparsifierParams p;
    p.theta = theta;
    p.density = 1.0 / (theta * theta);
    p.delta_lower = 1.0;
    p.delta_upper = (1.0 + theta) / (1.0 - theta);
    p.eps_lower = theta;
    p.eps_upper = theta * (1.0 - theta) / (1.0 + theta);
    p.steps = int_ceil(p.density * static_cast<double>(r));
    return p;
}

double upper_potential(const Eigen::MatrixXd& A, double u) {
    return potential_from_eigenvalues_upper(eigensolve(A, false).eigenvalues(), u);
}

double lower_potential(const Eigen::MatrixXd& A, double l) {
    return potential_from_eigenvalues_lower(eigensolve(A, false).eigenvalues(), l);
}

StepBounds step_bounds(const BarrierState& state, const SparsifierParams& params,
                       const Eigen::VectorXd& v) {
    if (!v.allFinite()) throw ValidationError("candidate vector has non-finite entries");
    const auto solver = eigensolve(state.A);
    const Eigen::VectorXd lam = solver.eigenvalues();
    const double u_next = state.upper + params.delta_upper;
    const double l_next = state.lower + params.delta_lower;
    if (u_next - lam.maxCoeff() <= 0.0)
        throw BarrierViolation("shifted upper barrier does not clear the spectrum");
    if (lam.minCoeff() - l_next <= 0.0)
        throw BarrierViolation("shifted lower barrier does not stay below the spectrum");

    const Eigen::ArrayXd gap_u = u_next - lam.array();      // u' - lambda_j > 0
    const Eigen::ArrayXd gap_l = lam.array() - l_next;      // lambda_j - l' > 0
    const Eigen::ArrayXd gap_u0 = state.upper - lam.array();
    const Eigen::ArrayXd gap_l0 = lam.array() - state.lower;

    // Potential drops written as single sums; the naive difference of two
    // potentials cancels catastrophically once the barriers are far away.
    const double drop_upper = (params.delta_upper / (gap_u0 * gap_u)).sum();
    const double rise_lower = (params.delta_lower / (gap_l0 * gap_l)).sum();

    const Eigen::ArrayXd w2 = (solver.eigenvectors().transpose() * v).array().square();
    const double quad_u1 = (w2 / gap_u).sum();
    const double quad_u2 = (w2 / (gap_u * gap_u)).sum();
    const double quad_l1 = (w2 / gap_l).sum();
    const double quad_l2 = (w2 / (gap_l * gap_l)).sum();

    StepBounds out;
    out.upper = quad_u2 / drop_upper + quad_u1;
    out.lower = quad_l2 / rise_lower - quad_l1;
    return out;
}

BarrierState initial_state(const IsotropicSet& iso, const SparsifierParams& params) {
    const Eigen::Index r = iso.dimension();
    BarrierState state;
    state.A = Eigen::MatrixXd::Zero(r, r);
    state.upper = static_cast<double>(r) / params.eps_upper;
    state.lower = -static_cast<double>(r) / params.eps_lower;
    state.weights = Eigen::VectorXd::Zero(iso.count());
    state.step = 0;
    return state;
}

BarrierState select_and_add(const BarrierState& state, const IsotropicSet& iso,
                            const SparsifierParams& params, const NumericPolicy& policy) {
    if (state.step >= params.steps)
        throw ValidationError("selection loop already ran its " +
                              std::to_string(params.steps) + " steps");

    const auto solver = eigensolve(state.A);
    const Eigen::VectorXd lam = solver.eigenvalues();
    const double phi_upper = potential_from_eigenvalues_upper(lam, state.upper);
    const double phi_lower = potential_from_eigenvalues_lower(lam, state.lower);
    if (phi_upper > params.eps_upper + policy.potential_bound_tol)
        throw NumericalError("upper potential " + std::to_string(phi_upper) +
                             " exceeds its bound at step " + std::to_string(state.step));
    if (phi_lower > params.eps_lower + policy.potential_bound_tol)
        throw NumericalError("lower potential " + std::to_string(phi_lower) +
                             " exceeds its bound at step " + std::to_string(state.step));

    const double u_next = state.upper + params.delta_upper;
    const double l_next = state.lower + params.delta_lower;
    if (lam.minCoeff() - l_next <= 0.0)
        throw BarrierViolation("shifted lower barrier reaches the spectrum at step " +
                               std::to_string(state.step));

    const Eigen::ArrayXd gap_u = u_next - lam.array();
    const Eigen::ArrayXd gap_l = lam.array() - l_next;
    const Eigen::ArrayXd gap_u0 = state.upper - lam.array();
    const Eigen::ArrayXd gap_l0 = lam.array() - state.lower;
    const double drop_upper = (params.delta_upper / (gap_u0 * gap_u)).sum();
    const double rise_lower = (params.delta_lower / (gap_l0 * gap_l)).sum();

    // All candidates at once: with P = V Q, row i of P.^2 gives the spectral
    // coefficients of v_i, so each quadratic form is one weighted row sum.
    const Eigen::MatrixXd projected = iso.vectors * solver.eigenvectors();
    const Eigen::ArrayXXd coeffs = projected.array().square();
    const Eigen::ArrayXd quad_u1 = (coeffs.rowwise() * gap_u.inverse().transpose()).rowwise().sum();
    const Eigen::ArrayXd quad_u2 =
        (coeffs.rowwise() * (gap_u * gap_u).inverse().transpose()).rowwise().sum();
    const Eigen::ArrayXd quad_l1 = (coeffs.rowwise() * gap_l.inverse().transpose()).rowwise().sum();
    const Eigen::ArrayXd quad_l2 =
        (coeffs.rowwise() * (gap_l * gap_l).inverse().transpose()).rowwise().sum();
    const Eigen::ArrayXd bound_u = quad_u2 / drop_upper + quad_u1;
    const Eigen::ArrayXd bound_l = quad_l2 / rise_lower - quad_l1;

    Eigen::Index best = -1;
    double best_gap = 0.0;
    for (Eigen::Index i = 0; i < iso.count(); ++i) {
        if (!(bound_l(i) > 0.0) || bound_u(i) > bound_l(i) + policy.admissibility_tol) continue;
        const double gap = bound_l(i) - bound_u(i);
        if (best < 0 || gap > best_gap) {
            best = i;
            best_gap = gap;
        }
    }
    if (best < 0)
        throw InfeasibleStep("no admissible candidate at step " + std::to_string(state.step));

    const double bu = bound_u(best);
    const double bl = bound_l(best);
    const double weight = (std::abs(bu - bl) <= policy.weight_tie_tol) ? 1.0 / bu : 2.0 / (bu + bl);

    BarrierState next;
    next.A = state.A + weight * (iso.vectors.row(best).transpose() * iso.vectors.row(best));
    next.upper = u_next;
    next.lower = l_next;
    next.weights = state.weights;
    next.weights(best) += weight;
    next.step = state.step + 1;

    const Eigen::VectorXd lam_next = eigensolve(next.A, false).eigenvalues();
    if (lam_next.minCoeff() - next.lower <= 0.0 || next.upper - lam_next.maxCoeff() <= 0.0)
        throw BarrierViolation("spectrum escaped the barriers at step " +
                               std::to_string(state.step));
    const double phi_upper_next = potential_from_eigenvalues_upper(lam_next, next.upper);
    const double phi_lower_next = potential_from_eigenvalues_lower(lam_next, next.lower);
    if (phi_upper_next > phi_upper + policy.potential_tol ||
        phi_lower_next > phi_lower + policy.potential_tol)
        throw NumericalError("potential increased at step " + std::to_string(state.step));

    return next;
}

SparseWeights rescale_to_unit_floor(const BarrierState& state, const IsotropicSet& iso,
                                    const NumericPolicy& policy) {
    SparseWeights out;
    for (Eigen::Index i = 0; i < state.weights.size(); ++i)
        if (state.weights(i) > 0.0) out.sigma.push_back(i);
    if (out.sigma.empty()) throw RankDeficiency("no weights were accumulated");

    const Eigen::Index r = iso.dimension();
    Eigen::MatrixXd weighted_sum = Eigen::MatrixXd::Zero(r, r);
    for (const Eigen::Index i : out.sigma)
        weighted_sum += state.weights(i) * (iso.vectors.row(i).transpose() * iso.vectors.row(i));

    const Eigen::VectorXd lam = eigensolve(weighted_sum, false).eigenvalues();
    const double floor = lam.minCoeff();
    if (floor <= 0.0)
        throw RankDeficiency("weighted sum is singular: lambda_min = " + std::to_string(floor));

    out.rescale = floor;
    out.kappa = lam.maxCoeff() / floor;
    out.weights.reserve(out.sigma.size());
    for (const Eigen::Index i : out.sigma) out.weights.push_back(state.weights(i) / floor);

    const double scaled_floor = eigensolve(weighted_sum / floor, false).eigenvalues().minCoeff();
    if (std::abs(scaled_floor - 1.0) > policy.spectral_floor_tol)
        throw NumericalError("rescaled spectral floor is " + std::to_string(scaled_floor) +
                             " instead of 1");
    return out;
}

SparseWeights sparsify(const IsotropicSet& iso, double theta, const NumericPolicy& policy) {
    iso.validate(policy);
    const auto params = SparsifierParams::balanced(iso.dimension(), theta);
    BarrierState state = initial_state(iso, params);
    for (std::int64_t step = 0; step < params.steps; ++step)
        state = select_and_add(state, iso, params, policy);

    SparseWeights result = rescale_to_unit_floor(state, iso, policy);
    const auto support_cap =
        std::min<std::int64_t>(params.steps, static_cast<std::int64_t>(iso.count()));
    if (static_cast<std::int64_t>(result.sigma.size()) > support_cap)
        throw NumericalError("support size exceeds its cap; selection loop is inconsistent");
    const double ratio = (1.0 + theta) / (1.0 - theta);
    if (result.kappa > ratio * ratio + policy.kappa_tol)
        throw NumericalError("certified condition number " + std::to_string(result.kappa) +
                             " exceeds its bound " + std::to_string(ratio * ratio));
    return result;
}

} // namespace lpembed
