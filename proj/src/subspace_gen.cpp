#include "lpembed/subspace_gen.hpp"

#include <Eigen/QR>

#include "lpembed/errors.hpp"
#include "lpembed/random.hpp"

namespace lpembed {

SubspaceKind subspace_kind_from_string(const std::string& name) {
    if (name == "gaussian") return SubspaceKind::Gaussian;
    if (name == "l2k") return SubspaceKind::L2k;
    if (name == "coordinate") return SubspaceKind::Coordinate;
    throw ValidationError("unknown subspace kind '" + name +
                          "' (expected gaussian, l2k, or coordinate)");
}

std::string to_string(SubspaceKind kind) {
    switch (kind) {
        case SubspaceKind::Gaussian: return "gaussian";
        case SubspaceKind::L2k: return "l2k";
        case SubspaceKind::Coordinate: return "coordinate";
    }
    return "unknown";
}

Subspace gen_subspace(SubspaceKind kind, Eigen::Index k, Eigen::Index m, std::uint64_t seed) {
    if (k < 1 || m < k)
        throw ValidationError("need 1 <= k <= m, got k = " + std::to_string(k) +
                              ", m = " + std::to_string(m));
    switch (kind) {
        case SubspaceKind::Gaussian: {
            NormalSampler sampler(seed);
            return Subspace{sampler.normal_matrix(m, k)};
        }
        case SubspaceKind::L2k: {
            NormalSampler sampler(seed);
            const Eigen::MatrixXd raw = sampler.normal_matrix(m, k);
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
            Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, k);
            const Eigen::MatrixXd r =
                qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
            for (Eigen::Index j = 0; j < k; ++j)
                if (r(j, j) < 0.0) q.col(j) = -q.col(j);
            return Subspace{std::move(q)};
        }
        case SubspaceKind::Coordinate:
            return Subspace{Eigen::MatrixXd::Identity(m, k)};
    }
    throw ValidationError("unhandled subspace kind");
}

} // namespace lpembed
