#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace psvm {

inline constexpr int kPimaFeatureCount = 8;

/// Column names in file order; the ninth CSV column is the class label.
extern const std::array<const char*, kPimaFeatureCount> kPimaFeatureNames;

/// One CSV data row: eight features plus the 0/1 class label
/// (0 = patient, 1 = healthy).
struct RawRecord {
    std::array<double, kPimaFeatureCount> features{};
    int class_label = 0;
};

struct ParseOptions {
    /// Skip a leading non-numeric line (column headers).
    bool detect_header = true;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ColumnStats {
    double mean = 0.0;
    double stddev = 1.0; // population stddev (divide by N)
};

/// Feature matrix with bipolar labels. When standardization statistics are
/// present, x already holds the transformed values.
struct Dataset {
    Eigen::MatrixXd x;   // N x 8
    std::vector<int> y;  // -1 (patient) / +1 (healthy)
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> zero_flags; // raw cell was exactly 0
    std::optional<std::vector<ColumnStats>> standardization;

    Eigen::Index rows() const { return x.rows(); }
    Eigen::Index cols() const { return x.cols(); }
};

/// Deterministic stratified fold assignment.
struct FoldPlan {
    int k = 0;
    std::vector<int> assignments; // fold index per row, in [0, k)
    std::uint64_t seed = 0;
};

/// Parse a Pima-schema CSV: 9 comma-separated numeric fields per row, final
/// field the 0/1 class label. Zero feature cells are kept verbatim.
/// Throws ParseError naming the 1-based line number on malformed rows, and
/// on files with no data rows.
std::vector<RawRecord> parse_pima_csv(const std::filesystem::path& path,
                                      const ParseOptions& options = {});

/// Rows of features only (8 columns, or 9 with a trailing label column that
/// is parsed but not required). Used by the predict path; an empty file
/// yields zero rows rather than an error.
struct FeatureRows {
    Eigen::MatrixXd x;
    std::vector<int> labels; // populated only when has_labels
    bool has_labels = false;
};

FeatureRows parse_feature_rows(const std::filesystem::path& path,
                               const ParseOptions& options = {});

/// Map labels to bipolar form and optionally standardize each column to zero
/// mean / unit variance (population stddev). Zero cells participate in the
/// statistics like any other value. Throws on an empty record list and on a
/// constant column under standardization (names the column).
Dataset build_dataset(const std::vector<RawRecord>& records, bool standardize);

/// Seeded stratified k-fold assignment over bipolar labels. Fold sizes differ
/// by at most 1 overall and per class. Throws when k < 2 or either class has
/// fewer than k members.
FoldPlan stratified_kfold(std::span<const int> labels, int k, std::uint64_t seed);

/// Apply stored per-column statistics to a raw feature row.
Eigen::VectorXd standardize_row(const std::vector<ColumnStats>& stats,
                                Eigen::Ref<const Eigen::VectorXd> raw);

/// Invert standardize_row.
Eigen::VectorXd destandardize_row(const std::vector<ColumnStats>& stats,
                                  Eigen::Ref<const Eigen::VectorXd> standardized);

} // namespace psvm
