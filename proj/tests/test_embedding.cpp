#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

#include "lpembed/bss.hpp"
#include "lpembed/embedding.hpp"
#include "lpembed/errors.hpp"
#include "lpembed/lift.hpp"
#include "lpembed/subspace_gen.hpp"
#include "lpembed/util.hpp"
#include "test_util.hpp"

using namespace lpembed;
using lpembed::testing::eig_range;

namespace {

Embedding identity_embedding(Eigen::Index m, Eigen::Index k, int p, const LiftedSpace& lifted) {
    Embedding embedding;
    embedding.p = p;
    embedding.eps = 0.5;
    embedding.eps_inner = 0.5;
    embedding.theta = 0.2;
    for (Eigen::Index i = 0; i < m; ++i) {
        embedding.sigma.push_back(i);
        embedding.weights.push_back(1.0);
    }
    embedding.cert_lower = 1.0;
    embedding.cert_upper = 1.0;
    embedding.k = k;
    embedding.m = m;
    embedding.monomials = lifted.monomial_count();
    embedding.rank = lifted.rank;
    return embedding;
}

} // namespace

TEST_CASE("p = 2 pipeline equals direct sampling of the subspace") {
    const auto subspace = gen_subspace(SubspaceKind::Gaussian, 3, 40, 314);
    const double eps = 0.5;
    const auto embedding = embed(subspace, 2, eps);

    CHECK(embedding.eps_inner == doctest::Approx(eps / 2.0).epsilon(1e-15));
    const double theta = embedding.eps_inner / (2.0 + embedding.eps_inner);

    // Direct route: orthonormalize the basis itself and sparsify its rows.
    const auto [ortho, rank] = orthonormal_column_basis(subspace.basis);
    REQUIRE(rank == 3);
    const auto direct = sparsify(IsotropicSet{ortho}, theta);

    REQUIRE(embedding.sigma == direct.sigma);
    for (std::size_t j = 0; j < direct.weights.size(); ++j)
        CHECK(embedding.weights[j] == direct.weights[j]); // bitwise
    const double eps_inner = eps / 2.0;
    CHECK(static_cast<double>(embedding.n()) <= 9.0 * 3 / (eps_inner * eps_inner));
}

TEST_CASE("coordinate subspaces keep exactly their support") {
    const Eigen::Index k = 3, m = 10;
    const auto subspace = gen_subspace(SubspaceKind::Coordinate, k, m, 0);
    for (int p : {2, 4, 6}) {
        const double eps = 0.5;
        const auto embedding = embed(subspace, p, eps);
        CHECK(embedding.sigma == std::vector<Eigen::Index>{0, 1, 2});
        CHECK(embedding.cert_upper <= 1.0 + eps);
        CHECK(embedding.cert_lower >= 1.0 - 1e-9);
        for (double weight : embedding.weights) CHECK(weight > 0.0);

        // The restricted map is diagonal on the support.
        Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
        x(1) = 2.0;
        const Eigen::VectorXd image = apply_embedding(embedding, x);
        CHECK(image(0) == 0.0);
        CHECK(image(2) == 0.0);
        CHECK(image(1) == doctest::Approx(std::pow(embedding.weights[1], 1.0 / p) * 2.0));
    }
}

TEST_CASE("seeded Gaussian instance keeps the certified contract") {
    const auto subspace = gen_subspace(SubspaceKind::Gaussian, 2, 500, 2026);
    const double eps = 0.5;
    const auto embedding = embed(subspace, 4, eps);

    CHECK(embedding.monomials == 3);
    CHECK(embedding.rank == 3);
    CHECK(embedding.n() <= 75); // ceil((2+eps'')^2/eps''^2 * 3) with eps'' = 1/2
    CHECK(embedding.cert_upper <= 1.0 + eps);
    CHECK(embedding.cert_lower >= 1.0 - 1e-9);

    // Certificate against a test-side assembly of the sampled Gram.
    const auto lifted = build_lift(subspace, 4);
    const Eigen::MatrixXd gram =
        lpembed::testing::assemble_weighted_sum(lifted.ortho, embedding.sigma, embedding.weights);
    const auto [lambda_min, lambda_max] = eig_range(gram);
    CHECK(std::pow(lambda_min, 0.25) == doctest::Approx(embedding.cert_lower).epsilon(1e-12));
    CHECK(std::pow(lambda_max, 0.25) == doctest::Approx(embedding.cert_upper).epsilon(1e-12));
}

TEST_CASE("applying the embedding") {
    LiftedSpace dummy;
    dummy.columns = Eigen::MatrixXd::Zero(2, 1);
    dummy.ortho = Eigen::MatrixXd::Zero(2, 1);
    dummy.rank = 1;

    Embedding embedding;
    embedding.p = 4;
    embedding.m = 2;
    embedding.k = 1;
    embedding.sigma = {0};
    embedding.weights = {2.0};

    Eigen::VectorXd x(2);
    x << 5.0, 7.0;
    const Eigen::VectorXd image = apply_embedding(embedding, x);
    REQUIRE(image.size() == 1);
    CHECK(image(0) == doctest::Approx(std::pow(2.0, 0.25) * 5.0).epsilon(1e-15));

    Eigen::VectorXd wrong(3);
    wrong << 1.0, 2.0, 3.0;
    CHECK_THROWS_AS(apply_embedding(embedding, wrong), ValidationError);
}

TEST_CASE("identity sampling is the identity map") {
    const auto subspace = gen_subspace(SubspaceKind::Gaussian, 2, 6, 404);
    const auto lifted = build_lift(subspace, 4);
    const auto embedding = identity_embedding(6, 2, 4, lifted);

    NormalSampler sampler(405);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::VectorXd x = subspace.basis * sampler.normal_vector(2);
        CHECK(apply_embedding(embedding, x) == x); // weights 1, sigma everything
    }

    const auto cert = certify(embedding, lifted);
    CHECK(cert.lambda_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.lambda_max == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.upper == doctest::Approx(1.0).epsilon(1e-12));

    const auto report = empirical_distortion(embedding, subspace, 50, 7);
    CHECK(report.min_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.within_cert);
}

TEST_CASE("linearity of the restriction map") {
    const auto subspace = gen_subspace(SubspaceKind::Gaussian, 2, 30, 550);
    const auto embedding = embed(subspace, 4, 0.5);
    NormalSampler sampler(551);
    const Eigen::VectorXd x = subspace.basis * sampler.normal_vector(2);
    const Eigen::VectorXd direct = apply_embedding(embedding, -3.0 * x);
    const Eigen::VectorXd scaled = -3.0 * apply_embedding(embedding, x);
    CHECK((direct - scaled).norm() <= 1e-12 * scaled.norm());
}

TEST_CASE("certify validates provenance") {
    const auto subspace = gen_subspace(SubspaceKind::Gaussian, 2, 20, 8);
    const auto embedding = embed(subspace, 4, 0.5);
    const auto lifted_wrong_p = build_lift(subspace, 6);
    CHECK_THROWS_AS(certify(embedding, lifted_wrong_p), ValidationError);

    const auto other = gen_subspace(SubspaceKind::Gaussian, 2, 21, 8);
    CHECK_THROWS_AS(certify(embedding, build_lift(other, 4)), ValidationError);
}

TEST_CASE("grid oracle stays inside and close to the certificate") {
    const auto subspace = gen_subspace(SubspaceKind::Gaussian, 2, 500, 2035);
    const auto embedding = embed(subspace, 4, 0.5);
    CHECK(embedding.n() == 6);
    CHECK(embedding.cert_upper == doctest::Approx(1.010550330998834).epsilon(1e-6));

    const int grid = 100000;
    double grid_min = std::numeric_limits<double>::infinity();
    double grid_max = 0.0;
    for (int g = 0; g < grid; ++g) {
        const double angle = 2.0 * M_PI * g / grid;
        const Eigen::VectorXd x =
            std::cos(angle) * subspace.basis.col(0) + std::sin(angle) * subspace.basis.col(1);
        double restricted = 0.0;
        for (std::size_t j = 0; j < embedding.sigma.size(); ++j) {
            const double square = x(embedding.sigma[j]) * x(embedding.sigma[j]);
            restricted += embedding.weights[j] * square * square;
        }
        double full = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double square = x(i) * x(i);
            full += square * square;
        }
        const double ratio = std::pow(restricted / full, 0.25);
        grid_min = std::min(grid_min, ratio);
        grid_max = std::max(grid_max, ratio);
    }
    CHECK(grid_min >= embedding.cert_lower - 1e-9);
    CHECK(grid_max <= embedding.cert_upper + 1e-9);
    // The certificate covers the whole lifted space, so it dominates the
    // diagonal extremes; on this instance it is also tight to them.
    CHECK(embedding.cert_upper - grid_max <= 1e-3);
    CHECK(grid_max == doctest::Approx(1.0103850663899512).epsilon(1e-6));
    CHECK(grid_min == doctest::Approx(1.0007056610977092).epsilon(1e-6));
}

TEST_CASE("sampled ratios respect the certificate and reproduce") {
    const auto subspace = gen_subspace(SubspaceKind::Gaussian, 2, 100, 606);
    const auto embedding = embed(subspace, 4, 0.5);
    const auto report = empirical_distortion(embedding, subspace, 10000, 607);
    CHECK(report.within_cert);
    CHECK(report.min_ratio >= embedding.cert_lower - 1e-9);
    CHECK(report.max_ratio <= embedding.cert_upper + 1e-9);
    // Frozen from the first run of this instance.
    CHECK(report.min_ratio == doctest::Approx(1.0025935001863535).epsilon(1e-6));
    CHECK(report.max_ratio == doctest::Approx(1.0131964652740908).epsilon(1e-6));

    const auto replay = empirical_distortion(embedding, subspace, 10000, 607);
    CHECK(replay.min_ratio == report.min_ratio); // bitwise, same stream
    CHECK(replay.max_ratio == report.max_ratio);

    CHECK_THROWS_AS(empirical_distortion(embedding, subspace, 0, 1), ValidationError);
}

TEST_CASE("capacity inverts the size bound") {
    // p = 4, eps = 0.5: the k = 1 pipeline needs ceil(25 * 1) coordinates.
    CHECK(capacity(24, 4, 0.5) == 0);
    CHECK(capacity(25, 4, 0.5) == 1);
    CHECK(capacity(74, 4, 0.5) == 1);
    CHECK(capacity(75, 4, 0.5) == 2);

    // p = 2, eps = 0.5: factor is exactly 81, so capacity is floor(n / 81).
    CHECK(capacity(1000, 2, 0.5) == 12);
    for (std::int64_t n : {100, 1000, 10000, 100000}) {
        CHECK(capacity(n, 2, 0.5) == n / 81);
        CHECK(capacity(2 * n, 2, 0.5) >= capacity(n, 2, 0.5));
        CHECK(capacity(2 * n, 4, 0.5) >= capacity(n, 4, 0.5));
    }

    // Brute-force cross-check on a small sweep.
    for (std::int64_t n : {30, 90, 377, 2048}) {
        const std::int64_t reported = capacity(n, 4, 0.25);
        const double factor = 81.0; // (2 + 0.25)^2 / 0.25^2
        std::int64_t expected = 0;
        for (int k = 1; k <= 64; ++k)
            if (factor * static_cast<double>(binomial(k + 1, 2)) <= static_cast<double>(n))
                expected = k;
        CHECK(reported == expected);
    }
}

TEST_CASE("scaling the basis leaves the result unchanged") {
    const auto subspace = gen_subspace(SubspaceKind::Gaussian, 2, 60, 909);
    const auto base = embed(subspace, 4, 0.5);
    for (double alpha : {2.5, -1.75, 1e-3}) {
        Subspace scaled{alpha * subspace.basis};
        const auto other = embed(scaled, 4, 0.5);
        CHECK(other.sigma == base.sigma);
        CHECK(other.cert_lower == doctest::Approx(base.cert_lower).epsilon(1e-9));
        CHECK(other.cert_upper == doctest::Approx(base.cert_upper).epsilon(1e-9));
    }
    // Odd lift degree flips signs when alpha < 0; the outcome still matches.
    const auto base6 = embed(subspace, 6, 0.5);
    const auto scaled6 = embed(Subspace{-2.0 * subspace.basis}, 6, 0.5);
    CHECK(scaled6.sigma == base6.sigma);
    CHECK(scaled6.cert_upper == doctest::Approx(base6.cert_upper).epsilon(1e-9));
}

TEST_CASE("tiny ambient dimension may keep every coordinate") {
    // m is far below the step budget, so the support can be all of {1..m};
    // the result is still a certified embedding.
    const auto subspace = gen_subspace(SubspaceKind::Gaussian, 2, 4, 64);
    const auto embedding = embed(subspace, 4, 0.5);
    CHECK(embedding.n() <= 4);
    CHECK(embedding.cert_upper <= 1.5);
    CHECK(embedding.cert_lower >= 1.0 - 1e-9);
    const auto report = empirical_distortion(embedding, subspace, 500, 65);
    CHECK(report.within_cert);
}

TEST_CASE("embed validates its arguments") {
    const auto subspace = gen_subspace(SubspaceKind::Gaussian, 2, 10, 1);
    CHECK_THROWS_WITH_AS(embed(subspace, 3, 0.5), doctest::Contains("even"), ValidationError);
    CHECK_THROWS_AS(embed(subspace, 4, 0.0), ValidationError);
    CHECK_THROWS_AS(embed(subspace, 4, 1.0), ValidationError);
    CHECK_THROWS_AS(embed(subspace, 0, 0.5), ValidationError);
    CHECK_THROWS_AS(capacity(0, 4, 0.5), ValidationError);
}
