#include "lpembed/embedding.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lpembed/bss.hpp"
#include "lpembed/errors.hpp"
#include "lpembed/random.hpp"
#include "lpembed/util.hpp"

namespace lpembed {

namespace {

void validate_p_eps(int p, double eps) {
    if (p % 2 != 0) throw ValidationError("p must be even, got " + std::to_string(p));
    if (p < 2) throw ValidationError("p must be >= 2, got " + std::to_string(p));
    if (!(eps > 0.0 && eps < 1.0))
        throw ValidationError("eps must lie in (0, 1), got " + std::to_string(eps));
}

double inner_accuracy(int p, double eps) { return std::min(eps * p / 4.0, 0.5); }

} // namespace

Embedding embed(const Subspace& subspace, int p, double eps, const NumericPolicy& policy) {
    validate_p_eps(p, eps);
    subspace.validate(policy);

    const LiftedSpace lifted = build_lift(subspace, p, policy);
    const double eps_inner = inner_accuracy(p, eps);
    const double theta = eps_inner / (2.0 + eps_inner);

    // Rows of the lifted orthonormal basis sum to the identity in outer
    // product, which is exactly the input the sparsifier wants.
    IsotropicSet iso{lifted.ortho};
    const SparseWeights sparse = sparsify(iso, theta, policy);

    Embedding out;
    out.p = p;
    out.eps = eps;
    out.eps_inner = eps_inner;
    out.theta = theta;
    out.sigma = sparse.sigma;
    out.weights = sparse.weights;
    out.k = subspace.dim();
    out.m = subspace.ambient_dim();
    out.monomials = lifted.monomial_count();
    out.rank = lifted.rank;

    const CertBounds cert = certify(out, lifted);
    out.cert_lower = cert.lower;
    out.cert_upper = cert.upper;
    if (out.cert_upper > 1.0 + eps)
        throw NumericalError("certified distortion " + std::to_string(out.cert_upper) +
                             " exceeds 1 + eps = " + std::to_string(1.0 + eps));

    const auto params = SparsifierParams::balanced(lifted.rank, theta);
    if (out.n() > std::min<std::int64_t>(params.steps, out.m))
        throw NumericalError("support size exceeds min(m, step count)");
    return out;
}

Eigen::VectorXd apply_embedding(const Embedding& embedding, const Eigen::VectorXd& x) {
    if (x.size() != embedding.m)
        throw ValidationError("vector has " + std::to_string(x.size()) +
                              " coordinates, embedding expects " + std::to_string(embedding.m));
    Eigen::VectorXd out(embedding.n());
    for (Eigen::Index j = 0; j < out.size(); ++j)
        out(j) = std::pow(embedding.weights[static_cast<std::size_t>(j)],
                          1.0 / embedding.p) *
                 x(embedding.sigma[static_cast<std::size_t>(j)]);
    return out;
}

CertBounds certify(const Embedding& embedding, const LiftedSpace& lifted) {
    if (embedding.m != lifted.ambient_dim() ||
        embedding.monomials != static_cast<std::int64_t>(lifted.monomial_count()) ||
        embedding.rank != lifted.rank)
        throw ValidationError("embedding provenance does not match the lifted space");
    if (embedding.sigma.size() != embedding.weights.size())
        throw ValidationError("sigma and weights are not aligned");

    const Eigen::Index r = lifted.rank;
    Eigen::MatrixXd sampled_gram = Eigen::MatrixXd::Zero(r, r);
    for (std::size_t j = 0; j < embedding.sigma.size(); ++j) {
        const Eigen::Index i = embedding.sigma[j];
        if (i < 0 || i >= embedding.m)
            throw ValidationError("sigma index " + std::to_string(i) + " out of range");
        if (!(embedding.weights[j] > 0.0))
            throw ValidationError("weights must be strictly positive");
        sampled_gram += embedding.weights[j] *
                        (lifted.ortho.row(i).transpose() * lifted.ortho.row(i));
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sampled_gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigendecomposition of the sampled Gram failed");

    CertBounds cert;
    cert.lambda_min = solver.eigenvalues().minCoeff();
    cert.lambda_max = solver.eigenvalues().maxCoeff();
    if (cert.lambda_min <= 0.0)
        throw RankDeficiency("sampled Gram is singular; the restriction crushes a direction");
    cert.lower = std::pow(cert.lambda_min, 1.0 / embedding.p);
    cert.upper = std::pow(cert.lambda_max, 1.0 / embedding.p);
    return cert;
}

DistortionReport empirical_distortion(const Embedding& embedding, const Subspace& subspace,
                                      int trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    if (subspace.ambient_dim() != embedding.m || subspace.dim() != embedding.k)
        throw ValidationError("subspace does not match the embedding dimensions");

    NormalSampler sampler(seed);
    DistortionReport report;
    report.trials = trials;
    report.seed = seed;
    report.min_ratio = std::numeric_limits<double>::infinity();
    report.max_ratio = 0.0;
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd x;
        double norm = 0.0;
        do {
            x = subspace.basis * sampler.normal_vector(subspace.dim());
            norm = lp_norm(x, embedding.p);
        } while (norm == 0.0);
        const double ratio = lp_norm(apply_embedding(embedding, x), embedding.p) / norm;
        report.min_ratio = std::min(report.min_ratio, ratio);
        report.max_ratio = std::max(report.max_ratio, ratio);
    }
    report.within_cert = report.min_ratio >= embedding.cert_lower - 1e-9 &&
                         report.max_ratio <= embedding.cert_upper + 1e-9;
    return report;
}

std::int64_t capacity(std::int64_t n, int p, double eps) {
    validate_p_eps(p, eps);
    if (n < 1) throw ValidationError("n must be >= 1");
    const double eps_inner = inner_accuracy(p, eps);
    const double factor = (2.0 + eps_inner) * (2.0 + eps_inner) / (eps_inner * eps_inner);
    const int q = p / 2;
    std::int64_t best = 0;
    // The monomial count is strictly increasing in k, so the first failure
    // is final; the scan stops long before any overflow risk.
    for (int k = 1;; ++k) {
        const std::int64_t monomials = binomial(k + q - 1, q);
        if (int_ceil(factor * static_cast<double>(monomials)) > n) break;
        best = k;
    }
    return best;
}

} // namespace lpembed
