#include <fstream>

#include <fmt/core.h>
#include <json.hpp>

#include "psvm/lssvm.hpp"

namespace psvm {

namespace {

constexpr const char* kFormatName = "psvm-lssvm-model";
constexpr int kFormatVersion = 1;

} // namespace

void LssvmModel::save(const std::filesystem::path& path) const {
    nlohmann::json j;
    j["format"] = kFormatName;
    j["format_version"] = kFormatVersion;
    j["variant"] = to_string(variant_);
    j["gamma"] = hyper_.gamma;
    j["sigma"] = hyper_.sigma;
    j["bias"] = bias_;
    j["n_features"] = x_train_.cols();

    j["alpha"] = std::vector<double>(alpha_.data(), alpha_.data() + alpha_.size());
    auto rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < x_train_.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < x_train_.cols(); ++c) row.push_back(x_train_(i, c));
        rows.push_back(std::move(row));
    }
    j["x_train"] = std::move(rows);

    if (standardization_) {
        auto stats = nlohmann::json::array();
        for (const auto& s : *standardization_) {
            stats.push_back({{"mean", s.mean}, {"stddev", s.stddev}});
        }
        j["standardization"] = std::move(stats);
    } else {
        j["standardization"] = nullptr;
    }

    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error(fmt::format("failed writing model to '{}'", path.string()));
    }
}

LssvmModel LssvmModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open model file '{}'", path.string()));
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(
            fmt::format("model file '{}' is not valid JSON: {}", path.string(), e.what()));
    }
    if (j.value("format", "") != kFormatName) {
        throw std::runtime_error(fmt::format("'{}' is not a model file", path.string()));
    }
    if (j.value("format_version", -1) != kFormatVersion) {
        throw std::runtime_error(
            fmt::format("model file '{}' has unsupported format_version {}", path.string(),
                        j.value("format_version", -1)));
    }

    const auto alpha_vec = j.at("alpha").get<std::vector<double>>();
    const auto& rows = j.at("x_train");
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto d = j.at("n_features").get<Eigen::Index>();
    if (n != static_cast<Eigen::Index>(alpha_vec.size())) {
        throw std::runtime_error(
            fmt::format("model file '{}': {} support values for {} training rows",
                        path.string(), alpha_vec.size(), n));
    }
    Eigen::MatrixXd x_train(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != d) {
            throw std::runtime_error(
                fmt::format("model file '{}': row {} has {} features, expected {}",
                            path.string(), i, row.size(), d));
        }
        for (Eigen::Index c = 0; c < d; ++c) {
            x_train(i, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
    }
    Eigen::VectorXd alpha =
        Eigen::Map<const Eigen::VectorXd>(alpha_vec.data(),
                                          static_cast<Eigen::Index>(alpha_vec.size()));

    std::optional<std::vector<ColumnStats>> standardization;
    if (!j.at("standardization").is_null()) {
        std::vector<ColumnStats> stats;
        for (const auto& s : j.at("standardization")) {
            stats.push_back({s.at("mean").get<double>(), s.at("stddev").get<double>()});
        }
        standardization = std::move(stats);
    }

    LssvmHyperParams hyper{j.at("gamma").get<double>(), j.at("sigma").get<double>()};
    return LssvmModel(std::move(x_train), std::move(alpha), j.at("bias").get<double>(), hyper,
                      variant_from_string(j.at("variant").get<std::string>()),
                      std::move(standardization));
}

} // namespace psvm
