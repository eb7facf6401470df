#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace lpembed {

/**
 * @brief Deterministic standard-normal stream: mt19937_64 + Box-Muller.
 *
 * std::normal_distribution is implementation-defined, so reports pinned on
 * one standard library would not reproduce on another. This sampler fixes
 * the whole pipeline: uniforms are (x >> 11 | 1) * 2^-53 in (0, 1], pairs
 * of normals come from the classic Box-Muller transform, and the second
 * member of each pair is cached. Identified in reports as generator_name().
 */
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    static std::string generator_name() { return "mt19937_64-boxmuller-v1"; }

    double uniform01() {
        // In (0, 1]: the low bit is forced so log() never sees zero.
        return static_cast<double>((rng_() >> 11) | 1ULL) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Matrix of i.i.d. standard normals, filled column by column.
    Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols) {
        Eigen::MatrixXd out(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i)
                out(i, j) = normal();
        return out;
    }

    Eigen::VectorXd normal_vector(Eigen::Index size) {
        Eigen::VectorXd out(size);
        for (Eigen::Index i = 0; i < size; ++i) out(i) = normal();
        return out;
    }

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace lpembed
