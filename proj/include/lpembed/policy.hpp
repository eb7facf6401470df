#pragma once

#include <cstdint>

namespace lpembed {

/**
 * @brief Numeric tolerances and caps used across the library.
 *
 * One record so that every knob is visible and adjustable in a single place.
 * The defaults are the contract values used by the test suites.
 */
struct NumericPolicy {
    /// Per-step slack allowed on the non-increase of the barrier potentials.
    double potential_tol = 1e-8;
    /// Slack on potentials against their running bounds (eps_upper / eps_lower).
    double potential_bound_tol = 1e-6;
    /// Post-rescale minimum eigenvalue must equal 1 within this.
    double spectral_floor_tol = 1e-9;
    /// Candidate admissibility: accept U <= L + admissibility_tol.
    double admissibility_tol = 1e-10;
    /// Treat U and L as equal when |U - L| <= weight_tie_tol.
    double weight_tie_tol = 1e-12;
    /// Slack on the certified condition number against its theoretical bound.
    double kappa_tol = 1e-6;
    /// Relative Frobenius tolerance for the isotropy check sum v_i v_i^T = I.
    double isotropy_tol = 1e-8;
    /// Orthonormality tolerance for Gram-identity checks.
    double ortho_tol = 1e-10;
    /// Relative residual tolerance for span-membership checks.
    double span_residual_tol = 1e-8;
    /// Hard cap on the number of monomial columns materialized by the lift.
    std::int64_t monomial_cap = 1'000'000;
};

inline const NumericPolicy& default_policy() {
    static const NumericPolicy policy{};
    return policy;
}

} // namespace lpembed
