#include "lpembed/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "lpembed/errors.hpp"

namespace lpembed {

namespace {

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            try {
                std::size_t consumed = 0;
                const double value = std::stod(field, &consumed);
                while (consumed < field.size() &&
                       std::isspace(static_cast<unsigned char>(field[consumed])))
                    ++consumed;
                if (consumed != field.size()) throw std::invalid_argument(field);
                row.push_back(value);
            } catch (const std::exception&) {
                throw IoError("malformed CSV in '" + path + "' at line " +
                              std::to_string(line_number) + ": '" + field + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw IoError("ragged CSV in '" + path + "' at line " + std::to_string(line_number));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("CSV file '" + path + "' holds no data");

    Eigen::MatrixXd matrix(static_cast<Eigen::Index>(rows.size()),
                           static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return matrix;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix) {
    auto out = open_for_write(path);
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_double(matrix(i, j));
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

void write_embedding_json(const std::string& path, const Embedding& embedding) {
    nlohmann::json doc;
    doc["p"] = embedding.p;
    doc["eps"] = embedding.eps;
    doc["eps_inner"] = embedding.eps_inner;
    doc["theta"] = embedding.theta;
    std::vector<std::int64_t> sigma_one_based;
    sigma_one_based.reserve(embedding.sigma.size());
    for (const Eigen::Index i : embedding.sigma) sigma_one_based.push_back(i + 1);
    doc["sigma"] = sigma_one_based;
    doc["weights"] = embedding.weights;
    doc["cert_lower"] = embedding.cert_lower;
    doc["cert_upper"] = embedding.cert_upper;
    doc["k"] = embedding.k;
    doc["m"] = embedding.m;
    doc["D"] = embedding.monomials;
    doc["r"] = embedding.rank;

    auto out = open_for_write(path);
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

Embedding read_embedding_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& error) {
        throw IoError("malformed JSON in '" + path + "': " + error.what());
    }

    Embedding embedding;
    try {
        embedding.p = doc.at("p").get<int>();
        embedding.eps = doc.at("eps").get<double>();
        embedding.eps_inner = doc.at("eps_inner").get<double>();
        embedding.theta = doc.at("theta").get<double>();
        embedding.cert_lower = doc.at("cert_lower").get<double>();
        embedding.cert_upper = doc.at("cert_upper").get<double>();
        embedding.k = doc.at("k").get<Eigen::Index>();
        embedding.m = doc.at("m").get<Eigen::Index>();
        embedding.monomials = doc.at("D").get<std::int64_t>();
        embedding.rank = doc.at("r").get<Eigen::Index>();
        for (const auto& value : doc.at("sigma"))
            embedding.sigma.push_back(value.get<Eigen::Index>() - 1);
        embedding.weights = doc.at("weights").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& error) {
        throw IoError("embedding JSON in '" + path + "' misses a field: " + error.what());
    }

    if (embedding.sigma.size() != embedding.weights.size())
        throw ValidationError("embedding JSON has misaligned sigma and weights");
    for (std::size_t j = 0; j < embedding.sigma.size(); ++j) {
        if (embedding.sigma[j] < 0 || embedding.sigma[j] >= embedding.m)
            throw ValidationError("embedding JSON sigma index out of range");
        if (j > 0 && embedding.sigma[j] <= embedding.sigma[j - 1])
            throw ValidationError("embedding JSON sigma must be strictly ascending");
        if (!(embedding.weights[j] > 0.0))
            throw ValidationError("embedding JSON weights must be strictly positive");
    }
    return embedding;
}

void write_run_report_json(const std::string& path, const RunReport& report) {
    nlohmann::json doc;
    doc["input"] = {{"kind", report.kind}, {"k", report.k},       {"m", report.m},
                    {"p", report.p},       {"eps", report.eps},   {"seed", report.seed}};
    doc["n"] = report.n;
    doc["D"] = report.monomials;
    doc["r"] = report.rank;
    doc["theta"] = report.theta;
    doc["eps_inner"] = report.eps_inner;
    doc["cert_lower"] = report.cert_lower;
    doc["cert_upper"] = report.cert_upper;
    doc["empirical"] = {{"trials", report.empirical.trials},
                        {"seed", report.empirical.seed},
                        {"min_ratio", report.empirical.min_ratio},
                        {"max_ratio", report.empirical.max_ratio},
                        {"within_cert", report.empirical.within_cert}};
    doc["pass"] = report.pass;
    doc["wall_time_s"] = report.wall_time_s;
    doc["generator"] = report.generator;

    auto out = open_for_write(path);
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace lpembed
