#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>

#include "lpembed/errors.hpp"

namespace lpembed {

/**
 * @brief Ceiling that forgives floating-point overshoot.
 *
 * Quantities like r/theta^2 are integers in exact arithmetic for the
 * parameter choices used here (theta = 1/3 gives 9r), but the rounded
 * double can land a few ulps above the integer and a plain std::ceil
 * would then overshoot by one. The slack is far below the spacing of
 * any count we ever take a ceiling of.
 */
inline std::int64_t int_ceil(double x) {
    const double slack = 1e-9 + 1e-12 * std::abs(x);
    return static_cast<std::int64_t>(std::ceil(x - slack));
}

/// Binomial coefficient C(n, k) as int64, throwing on overflow.
inline std::int64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // result * (n - k + i) is exactly divisible by i at each step.
        const __int128 next = static_cast<__int128>(result) * (n - k + i) / i;
        if (next > std::numeric_limits<std::int64_t>::max())
            throw ValidationError("binomial coefficient overflows 64-bit range");
        result = static_cast<std::int64_t>(next);
    }
    return result;
}

/**
 * @brief l_p norm for even integer p, scaled to avoid overflow.
 *
 * For even p the p-th powers are nonnegative, so no absolute values are
 * needed in the sum; the max-rescaling keeps intermediate powers tame.
 */
inline double lp_norm(const Eigen::VectorXd& x, int p) {
    const double top = x.cwiseAbs().maxCoeff();
    if (top == 0.0) return 0.0;
    const Eigen::ArrayXd scaled = x.array() / top;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < scaled.size(); ++i)
        sum += std::pow(scaled(i), p);
    return top * std::pow(sum, 1.0 / p);
}

} // namespace lpembed
