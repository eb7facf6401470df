#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lpembed/embedding.hpp"
#include "lpembed/errors.hpp"
#include "lpembed/io.hpp"
#include "lpembed/random.hpp"
#include "lpembed/subspace_gen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct EmbedOptions {
    std::string input_csv;
    std::string kind = "gaussian";
    bool kind_given = false;
    std::int64_t k = 0;
    std::int64_t m = 0;
    std::uint64_t seed = 0;
    int p = 0;
    double eps = 0.0;
    int trials = 10000;
    std::string out_json;
    std::string report_json;
};

struct CertifyOptions {
    std::string embedding_json;
    std::string input_csv;
};

struct ScalingOptions {
    int p = 0;
    double eps = 0.0;
    std::int64_t kmin = 0;
    std::int64_t kmax = 0;
    std::int64_t m = 0;
    std::uint64_t seed = 0;
    std::string out_csv;
};

int run_embed(const EmbedOptions& opt) {
    lpembed::Subspace subspace;
    std::string kind_label;
    if (!opt.input_csv.empty()) {
        subspace.basis = lpembed::read_matrix_csv(opt.input_csv);
        kind_label = "csv:" + opt.input_csv;
    } else {
        const auto kind = lpembed::subspace_kind_from_string(opt.kind);
        subspace = lpembed::gen_subspace(kind, opt.k, opt.m, opt.seed);
        kind_label = opt.kind;
    }

    const auto start = std::chrono::steady_clock::now();
    const lpembed::Embedding embedding = lpembed::embed(subspace, opt.p, opt.eps);
    // Trials use an offset stream so they do not replay the generation draws.
    const auto empirical =
        lpembed::empirical_distortion(embedding, subspace, opt.trials, opt.seed + 1);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    const bool pass = embedding.cert_upper <= 1.0 + opt.eps;
    std::cout << "n = " << embedding.n() << ", D = " << embedding.monomials
              << ", r = " << embedding.rank << ", cert = [" << embedding.cert_lower << ", "
              << embedding.cert_upper << "], empirical = [" << empirical.min_ratio << ", "
              << empirical.max_ratio << "], " << (pass ? "pass" : "fail") << "\n";

    if (!opt.out_json.empty()) lpembed::write_embedding_json(opt.out_json, embedding);
    if (!opt.report_json.empty()) {
        lpembed::RunReport report;
        report.kind = kind_label;
        report.k = subspace.dim();
        report.m = subspace.ambient_dim();
        report.p = opt.p;
        report.eps = opt.eps;
        report.seed = opt.seed;
        report.n = embedding.n();
        report.monomials = embedding.monomials;
        report.rank = embedding.rank;
        report.theta = embedding.theta;
        report.eps_inner = embedding.eps_inner;
        report.cert_lower = embedding.cert_lower;
        report.cert_upper = embedding.cert_upper;
        report.empirical = empirical;
        report.pass = pass;
        report.wall_time_s = elapsed.count();
        report.generator = lpembed::NormalSampler::generator_name();
        lpembed::write_run_report_json(opt.report_json, report);
    }
    return pass ? kExitOk : kExitNumerical;
}

int run_certify(const CertifyOptions& opt) {
    const lpembed::Embedding embedding = lpembed::read_embedding_json(opt.embedding_json);
    lpembed::Subspace subspace{lpembed::read_matrix_csv(opt.input_csv)};
    subspace.validate();
    if (subspace.ambient_dim() != embedding.m || subspace.dim() != embedding.k)
        throw lpembed::ValidationError("CSV basis dimensions do not match the embedding");

    const lpembed::LiftedSpace lifted = lpembed::build_lift(subspace, embedding.p);
    const lpembed::CertBounds cert = lpembed::certify(embedding, lifted);
    const double drift = std::max(std::abs(cert.lower - embedding.cert_lower),
                                  std::abs(cert.upper - embedding.cert_upper));
    std::cout << "stored cert = [" << embedding.cert_lower << ", " << embedding.cert_upper
              << "], recomputed = [" << cert.lower << ", " << cert.upper << "]\n";
    if (drift > 1e-8) {
        std::cerr << "certificates drift by " << drift << " (tolerance 1e-8)\n";
        return kExitValidation;
    }
    std::cout << "certificates match within 1e-8\n";
    return kExitOk;
}

int run_scaling(const ScalingOptions& opt) {
    if (opt.kmin < 1 || opt.kmax < opt.kmin)
        throw lpembed::ValidationError("need 1 <= kmin <= kmax");

    std::vector<std::string> rows;
    std::vector<double> log_k;
    std::vector<double> log_n;
    for (std::int64_t k = opt.kmin; k <= opt.kmax; ++k) {
        const auto subspace =
            lpembed::gen_subspace(lpembed::SubspaceKind::Gaussian, k, opt.m,
                                  opt.seed + static_cast<std::uint64_t>(k));
        const auto embedding = lpembed::embed(subspace, opt.p, opt.eps);
        rows.push_back(std::to_string(k) + "," + std::to_string(embedding.monomials) + "," +
                       std::to_string(embedding.rank) + "," + std::to_string(embedding.n()) +
                       "," + std::to_string(embedding.cert_upper));
        log_k.push_back(std::log(static_cast<double>(k)));
        log_n.push_back(std::log(static_cast<double>(embedding.n())));
    }

    std::optional<double> slope;
    if (log_k.size() >= 2) {
        double mean_x = 0.0, mean_y = 0.0;
        for (std::size_t i = 0; i < log_k.size(); ++i) {
            mean_x += log_k[i];
            mean_y += log_n[i];
        }
        mean_x /= static_cast<double>(log_k.size());
        mean_y /= static_cast<double>(log_k.size());
        double covariance = 0.0, variance = 0.0;
        for (std::size_t i = 0; i < log_k.size(); ++i) {
            covariance += (log_k[i] - mean_x) * (log_n[i] - mean_y);
            variance += (log_k[i] - mean_x) * (log_k[i] - mean_x);
        }
        if (variance > 0.0) slope = covariance / variance;
    }

    std::ofstream out(opt.out_csv);
    if (!out) throw lpembed::IoError("cannot open '" + opt.out_csv + "' for writing");
    out << "k,D,r,n,cert_upper\n";
    for (const auto& row : rows) out << row << '\n';
    out << "# slope," << (slope ? std::to_string(*slope) : std::string("null")) << '\n';
    if (!out) throw lpembed::IoError("failed writing '" + opt.out_csv + "'");

    std::cout << "slope of log n vs log k: " << (slope ? std::to_string(*slope) : "null")
              << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted coordinate restrictions of l_p subspaces, even p, "
                 "with exact distortion certificates"};
    app.require_subcommand(1);

    EmbedOptions embed_opt;
    auto* embed_cmd = app.add_subcommand(
        "embed", "Build and certify an embedding for a generated or CSV subspace");
    auto* input_flag =
        embed_cmd->add_option("--input", embed_opt.input_csv, "basis CSV (m rows, k columns)");
    auto* kind_flag = embed_cmd->add_option("--kind", embed_opt.kind,
                                            "subspace family: gaussian | l2k | coordinate");
    embed_cmd->add_option("--k", embed_opt.k, "subspace dimension");
    embed_cmd->add_option("--m", embed_opt.m, "ambient dimension");
    embed_cmd->add_option("--seed", embed_opt.seed, "64-bit generator seed");
    embed_cmd->add_option("--p", embed_opt.p, "even norm exponent")->required();
    embed_cmd->add_option("--eps", embed_opt.eps, "target accuracy in (0,1)")->required();
    embed_cmd->add_option("--trials", embed_opt.trials, "distortion sampling trials");
    embed_cmd->add_option("--out", embed_opt.out_json, "embedding JSON output path");
    embed_cmd->add_option("--report", embed_opt.report_json, "run report JSON output path");
    input_flag->excludes(kind_flag);

    CertifyOptions certify_opt;
    auto* certify_cmd =
        app.add_subcommand("certify", "Recompute certificates of a stored embedding");
    certify_cmd->add_option("--embedding", certify_opt.embedding_json, "embedding JSON")
        ->required();
    certify_cmd->add_option("--input", certify_opt.input_csv, "basis CSV")->required();

    ScalingOptions scaling_opt;
    auto* scaling_cmd =
        app.add_subcommand("scaling", "Sweep k and report the growth of n with k");
    scaling_cmd->add_option("--p", scaling_opt.p, "even norm exponent")->required();
    scaling_cmd->add_option("--eps", scaling_opt.eps, "target accuracy")->required();
    scaling_cmd->add_option("--kmin", scaling_opt.kmin, "first k")->required();
    scaling_cmd->add_option("--kmax", scaling_opt.kmax, "last k")->required();
    scaling_cmd->add_option("--m", scaling_opt.m, "ambient dimension")->required();
    scaling_cmd->add_option("--seed", scaling_opt.seed, "64-bit generator seed");
    scaling_cmd->add_option("--out", scaling_opt.out_csv, "sweep CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        return app.exit(error) == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (embed_cmd->parsed()) {
            if (embed_opt.input_csv.empty() && (embed_opt.k < 1 || embed_opt.m < 1))
                throw lpembed::ValidationError("provide --input or --kind with --k and --m");
            return run_embed(embed_opt);
        }
        if (certify_cmd->parsed()) return run_certify(certify_opt);
        if (scaling_cmd->parsed()) return run_scaling(scaling_opt);
    } catch (const lpembed::ValidationError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitValidation;
    } catch (const lpembed::NumericalError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitNumerical;
    } catch (const lpembed::IoError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitIo;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitNumerical;
    }
    return kExitValidation;
}
