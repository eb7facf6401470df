#pragma once

#include <Eigen/Dense>

#include <string>

#include "lpembed/embedding.hpp"

namespace lpembed {

/**
 * CSV matrix format: one row per ambient coordinate (m rows), one column
 * per basis vector, comma separated decimal floating point. Values are
 * written with round-trip precision; lines starting with '#' are skipped
 * on read.
 */
Eigen::MatrixXd read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix);

/**
 * Embedding JSON object: {p, eps, eps_inner, theta, sigma, weights,
 * cert_lower, cert_upper, k, m, D, r} with sigma 1-based ascending and
 * weights aligned to it.
 */
void write_embedding_json(const std::string& path, const Embedding& embedding);
Embedding read_embedding_json(const std::string& path);

/// Everything one pipeline run reports, serialized as a flat JSON object.
struct RunReport {
    std::string kind;   // gaussian | l2k | coordinate | csv:<path>
    Eigen::Index k = 0;
    Eigen::Index m = 0;
    int p = 0;
    double eps = 0.0;
    std::uint64_t seed = 0;

    Eigen::Index n = 0;
    std::int64_t monomials = 0; // D
    Eigen::Index rank = 0;      // r
    double theta = 0.0;
    double eps_inner = 0.0;
    double cert_lower = 0.0;
    double cert_upper = 0.0;
    DistortionReport empirical;
    bool pass = false;
    double wall_time_s = 0.0;
    std::string generator;
};

void write_run_report_json(const std::string& path, const RunReport& report);

} // namespace lpembed
