#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "lpembed/lift.hpp"
#include "lpembed/policy.hpp"

namespace lpembed {

/**
 * @brief A weighted coordinate restriction certified as a (1+eps) embedding.
 *
 * The map sends x in the subspace to (weights[j]^(1/p) * x(sigma[j]))_j, so
 * its l_p norm is (sum_j weights[j] * x(sigma[j])^p)^(1/p). The certified
 * bounds hold for every x in the subspace, not just sampled ones:
 *   cert_lower * ||x||_p <= ||Tx||_p <= cert_upper * ||x||_p.
 */
struct Embedding {
    int p = 0;
    double eps = 0.0;
    double eps_inner = 0.0; // accuracy used at the lifted level
    double theta = 0.0;     // sparsifier accuracy derived from eps_inner
    std::vector<Eigen::Index> sigma; // selected coordinates, 0-based ascending
    std::vector<double> weights;     // aligned with sigma, strictly positive
    double cert_lower = 0.0;
    double cert_upper = 0.0;
    // provenance
    Eigen::Index k = 0;
    Eigen::Index m = 0;
    std::int64_t monomials = 0; // D
    Eigen::Index rank = 0;      // r

    Eigen::Index n() const { return static_cast<Eigen::Index>(sigma.size()); }
};

/// Observed distortion extremes over random draws from the subspace.
struct DistortionReport {
    int trials = 0;
    std::uint64_t seed = 0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    bool within_cert = false;
};

/// Eigenvalue certificate of an embedding against its lifted space.
struct CertBounds {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double lower = 0.0; // lambda_min^(1/p)
    double upper = 0.0; // lambda_max^(1/p)
};

/**
 * @brief Full pipeline: lift, sample coordinates, certify.
 *
 * Lifts the subspace to degree p/2, treats the rows of the lifted
 * orthonormal basis as an isotropic set, sparsifies it with
 * theta = eps''/(2 + eps'') where eps'' = min(eps*p/4, 1/2), and certifies
 * the resulting weighted restriction. Guarantees cert_upper <= 1 + eps.
 */
Embedding embed(const Subspace& subspace, int p, double eps,
                const NumericPolicy& policy = default_policy());

/// Applies the weighted restriction to one ambient vector.
Eigen::VectorXd apply_embedding(const Embedding& embedding, const Eigen::VectorXd& x);

/**
 * @brief Recomputes the eigenvalue certificate of an embedding.
 *
 * Assembles sum_{i in sigma} s_i w_i w_i^T from the rows w_i of the lifted
 * orthonormal basis and takes p-th roots of its extreme eigenvalues. These
 * bound ||Tx||_p / ||x||_p over the whole subspace. Throws ValidationError
 * when the embedding does not match the lifted space dimensions.
 */
CertBounds certify(const Embedding& embedding, const LiftedSpace& lifted);

/// Min/max of ||Tx||_p / ||x||_p over seeded Gaussian draws from the subspace.
DistortionReport empirical_distortion(const Embedding& embedding, const Subspace& subspace,
                                      int trials, std::uint64_t seed);

/**
 * @brief Largest subspace dimension this pipeline handles within n coordinates.
 *
 * Inverts the realized size bound ceil((2+eps'')^2/eps''^2 * C(k+p/2-1, p/2))
 * <= n over k; returns 0 when not even k = 1 fits.
 */
std::int64_t capacity(std::int64_t n, int p, double eps);

} // namespace lpembed
