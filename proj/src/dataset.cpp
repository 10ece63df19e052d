#include "psvm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include <fmt/core.h>

#include "psvm/rng.hpp"

namespace psvm {

const std::array<const char*, kPimaFeatureCount> kPimaFeatureNames = {
    "pregnancies",      "plasma_glucose", "diastolic_bp", "triceps_skinfold",
    "serum_insulin",    "bmi",            "pedigree",     "age",
};

namespace {

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view token, double& out) {
    token = trim(token);
    if (token.empty()) return false;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

bool all_numeric(const std::vector<std::string_view>& fields) {
    double ignored;
    for (const auto& f : fields) {
        if (!parse_double(f, ignored)) return false;
    }
    return true;
}

struct CsvRow {
    std::vector<double> values;
    std::size_t line_number = 0;
};

// Shared line reader: returns numeric rows, skipping blank lines and an
// optional leading header line.
std::vector<CsvRow> read_numeric_rows(const std::filesystem::path& path,
                                      const ParseOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(fmt::format("cannot open '{}'", path.string()));
    }
    std::vector<CsvRow> rows;
    std::string line;
    std::size_t line_number = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        auto fields = split_csv(trim(line));
        if (first_content_line && options.detect_header && !all_numeric(fields)) {
            first_content_line = false;
            continue; // header
        }
        first_content_line = false;
        CsvRow row;
        row.line_number = line_number;
        row.values.reserve(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            double v;
            if (!parse_double(fields[i], v)) {
                throw ParseError(fmt::format("{}:{}: field {} is not numeric ('{}')",
                                             path.string(), line_number, i + 1,
                                             std::string(trim(fields[i]))));
            }
            row.values.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::vector<RawRecord> parse_pima_csv(const std::filesystem::path& path,
                                      const ParseOptions& options) {
    const auto rows = read_numeric_rows(path, options);
    if (rows.empty()) {
        throw ParseError(fmt::format("'{}' contains no data rows", path.string()));
    }
    std::vector<RawRecord> records;
    records.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.values.size() != kPimaFeatureCount + 1) {
            throw ParseError(fmt::format("{}:{}: expected {} fields, got {}", path.string(),
                                         row.line_number, kPimaFeatureCount + 1,
                                         row.values.size()));
        }
        RawRecord rec;
        for (int j = 0; j < kPimaFeatureCount; ++j) {
            rec.features[static_cast<std::size_t>(j)] = row.values[static_cast<std::size_t>(j)];
        }
        const double label = row.values.back();
        if (label != 0.0 && label != 1.0) {
            throw ParseError(fmt::format("{}:{}: class label must be 0 or 1, got {}",
                                         path.string(), row.line_number, label));
        }
        rec.class_label = static_cast<int>(label);
        records.push_back(rec);
    }
    return records;
}

FeatureRows parse_feature_rows(const std::filesystem::path& path, const ParseOptions& options) {
    const auto rows = read_numeric_rows(path, options);
    FeatureRows out;
    if (rows.empty()) {
        out.x.resize(0, kPimaFeatureCount);
        return out;
    }
    const std::size_t width = rows.front().values.size();
    if (width != kPimaFeatureCount && width != kPimaFeatureCount + 1) {
        throw ParseError(fmt::format("{}:{}: expected {} or {} fields, got {}", path.string(),
                                     rows.front().line_number, kPimaFeatureCount,
                                     kPimaFeatureCount + 1, width));
    }
    out.has_labels = (width == kPimaFeatureCount + 1);
    out.x.resize(static_cast<Eigen::Index>(rows.size()), kPimaFeatureCount);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.values.size() != width) {
            throw ParseError(fmt::format("{}:{}: expected {} fields, got {}", path.string(),
                                         row.line_number, width, row.values.size()));
        }
        for (int j = 0; j < kPimaFeatureCount; ++j) {
            out.x(static_cast<Eigen::Index>(i), j) = row.values[static_cast<std::size_t>(j)];
        }
        if (out.has_labels) {
            const double label = row.values.back();
            if (label != 0.0 && label != 1.0) {
                throw ParseError(fmt::format("{}:{}: class label must be 0 or 1, got {}",
                                             path.string(), row.line_number, label));
            }
            out.labels.push_back(static_cast<int>(label));
        }
    }
    return out;
}

Dataset build_dataset(const std::vector<RawRecord>& records, bool standardize) {
    if (records.empty()) {
        throw std::invalid_argument("build_dataset: empty record list");
    }
    const auto n = static_cast<Eigen::Index>(records.size());
    Dataset ds;
    ds.x.resize(n, kPimaFeatureCount);
    ds.y.reserve(records.size());
    ds.zero_flags.resize(n, kPimaFeatureCount);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& rec = records[static_cast<std::size_t>(i)];
        for (int j = 0; j < kPimaFeatureCount; ++j) {
            const double v = rec.features[static_cast<std::size_t>(j)];
            ds.x(i, j) = v;
            ds.zero_flags(i, j) = (v == 0.0);
        }
        ds.y.push_back(rec.class_label == 0 ? -1 : +1);
    }
    if (standardize) {
        std::vector<ColumnStats> stats(kPimaFeatureCount);
        for (int j = 0; j < kPimaFeatureCount; ++j) {
            const double mean = ds.x.col(j).mean();
            const double var = (ds.x.col(j).array() - mean).square().sum() /
                               static_cast<double>(n);
            const double stddev = std::sqrt(var);
            if (stddev == 0.0) {
                throw std::invalid_argument(
                    fmt::format("build_dataset: column '{}' is constant, cannot standardize",
                                kPimaFeatureNames[static_cast<std::size_t>(j)]));
            }
            stats[static_cast<std::size_t>(j)] = {mean, stddev};
            ds.x.col(j) = (ds.x.col(j).array() - mean) / stddev;
        }
        ds.standardization = std::move(stats);
    }
    return ds;
}

FoldPlan stratified_kfold(std::span<const int> labels, int k, std::uint64_t seed) {
    if (k < 2) {
        throw std::invalid_argument(fmt::format("stratified_kfold: k must be >= 2, got {}", k));
    }
    std::vector<std::size_t> neg_idx;
    std::vector<std::size_t> pos_idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == -1) {
            neg_idx.push_back(i);
        } else if (labels[i] == +1) {
            pos_idx.push_back(i);
        } else {
            throw std::invalid_argument(
                fmt::format("stratified_kfold: non-bipolar label at index {}", i));
        }
    }
    for (const auto* cls : {&neg_idx, &pos_idx}) {
        if (cls->size() < static_cast<std::size_t>(k)) {
            throw std::invalid_argument(
                fmt::format("stratified_kfold: a class has {} members, fewer than k = {}",
                            cls->size(), k));
        }
    }

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.assign(labels.size(), -1);

    // Per class: shuffle its indices, then hand each fold its quota. Each
    // class's remainder slots go to the currently lightest folds, which keeps
    // overall fold sizes within one of each other.
    std::vector<std::size_t> fold_load(static_cast<std::size_t>(k), 0);
    int class_tag = 0;
    for (auto* cls : {&neg_idx, &pos_idx}) {
        auto rng = substream(seed, static_cast<std::uint64_t>(class_tag++));
        seeded_shuffle(*cls, rng);

        const std::size_t base = cls->size() / static_cast<std::size_t>(k);
        const std::size_t extras = cls->size() % static_cast<std::size_t>(k);
        std::vector<std::size_t> quota(static_cast<std::size_t>(k), base);
        std::vector<std::size_t> order(static_cast<std::size_t>(k));
        for (std::size_t f = 0; f < order.size(); ++f) order[f] = f;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return fold_load[a] < fold_load[b];
        });
        for (std::size_t e = 0; e < extras; ++e) quota[order[e]] += 1;

        std::size_t cursor = 0;
        for (std::size_t f = 0; f < static_cast<std::size_t>(k); ++f) {
            for (std::size_t c = 0; c < quota[f]; ++c) {
                plan.assignments[(*cls)[cursor++]] = static_cast<int>(f);
            }
            fold_load[f] += quota[f];
        }
    }
    return plan;
}

Eigen::VectorXd standardize_row(const std::vector<ColumnStats>& stats,
                                Eigen::Ref<const Eigen::VectorXd> raw) {
    if (static_cast<std::size_t>(raw.size()) != stats.size()) {
        throw std::invalid_argument(
            fmt::format("standardize_row: dimension mismatch ({} vs {})", raw.size(),
                        stats.size()));
    }
    Eigen::VectorXd out(raw.size());
    for (Eigen::Index j = 0; j < raw.size(); ++j) {
        const auto& s = stats[static_cast<std::size_t>(j)];
        out[j] = (raw[j] - s.mean) / s.stddev;
    }
    return out;
}

Eigen::VectorXd destandardize_row(const std::vector<ColumnStats>& stats,
                                  Eigen::Ref<const Eigen::VectorXd> standardized) {
    if (static_cast<std::size_t>(standardized.size()) != stats.size()) {
        throw std::invalid_argument(
            fmt::format("destandardize_row: dimension mismatch ({} vs {})",
                        standardized.size(), stats.size()));
    }
    Eigen::VectorXd out(standardized.size());
    for (Eigen::Index j = 0; j < standardized.size(); ++j) {
        const auto& s = stats[static_cast<std::size_t>(j)];
        out[j] = standardized[j] * s.stddev + s.mean;
    }
    return out;
}

} // namespace psvm
