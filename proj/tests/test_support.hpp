#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "psvm/dataset.hpp"

namespace test_support {

inline psvm::Dataset make_dataset(Eigen::MatrixXd x, std::vector<int> y) {
    psvm::Dataset ds;
    ds.zero_flags.resize(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            ds.zero_flags(i, j) = (x(i, j) == 0.0);
        }
    }
    ds.x = std::move(x);
    ds.y = std::move(y);
    return ds;
}

/// Two well-separated Gaussian-ish blobs; LS-SVM classifies them perfectly
/// at sane hyperparameters.
inline psvm::Dataset separable_blobs(int per_class, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto noise = [&] { return ((rng() >> 11) * 0x1.0p-53 - 0.5) * 0.4; };
    Eigen::MatrixXd x(2 * per_class, 2);
    std::vector<int> y;
    for (int i = 0; i < per_class; ++i) {
        x(i, 0) = 0.0 + noise();
        x(i, 1) = 0.0 + noise();
        y.push_back(+1);
    }
    for (int i = 0; i < per_class; ++i) {
        x(per_class + i, 0) = 4.0 + noise();
        x(per_class + i, 1) = 4.0 + noise();
        y.push_back(-1);
    }
    return make_dataset(std::move(x), std::move(y));
}

/// Independent linear-solve oracle: Gauss-Jordan elimination with partial
/// pivoting, written without Eigen's solvers on purpose.
inline Eigen::VectorXd gauss_jordan_solve(Eigen::MatrixXd a, Eigen::VectorXd b) {
    const Eigen::Index n = a.rows();
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        a.row(col).swap(a.row(pivot));
        std::swap(b[col], b[pivot]);
        const double p = a(col, col);
        a.row(col) /= p;
        b[col] /= p;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = a(r, col);
            a.row(r) -= factor * a.row(col);
            b[r] -= factor * b[col];
        }
    }
    return b;
}

class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        path_ = base / ("psvm_test_" + std::to_string(rd()) + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write_file(const std::string& name, const std::string& content) {
        auto p = path_ / name;
        std::ofstream out(p);
        out << content;
        return p;
    }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace test_support
