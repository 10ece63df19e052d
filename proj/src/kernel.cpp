#include "psvm/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace psvm {

namespace {

void check_sigma(double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument(fmt::format("rbf: sigma must be positive, got {}", sigma));
    }
}

// Single definition of the kernel arithmetic so scalar and matrix paths are
// bitwise identical.
inline double rbf_from_sq_dist(double sq_dist, double sigma) {
    return std::exp(-sq_dist / (sigma * sigma));
}

} // namespace

double rbf(Eigen::Ref<const Eigen::VectorXd> x, Eigen::Ref<const Eigen::VectorXd> z,
           double sigma) {
    check_sigma(sigma);
    if (x.size() != z.size()) {
        throw std::invalid_argument(
            fmt::format("rbf: dimension mismatch ({} vs {})", x.size(), z.size()));
    }
    return rbf_from_sq_dist((x - z).squaredNorm(), sigma);
}

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& x, const KernelSpec& spec) {
    check_sigma(spec.sigma);
    const Eigen::Index n = x.rows();
    if (n < 1) {
        throw std::invalid_argument("gram_matrix: need at least one row");
    }
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = rbf_from_sq_dist((x.row(i) - x.row(j)).squaredNorm(), spec.sigma);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

Eigen::MatrixXd cross_kernel(const Eigen::MatrixXd& x_new, const Eigen::MatrixXd& x_train,
                             const KernelSpec& spec) {
    check_sigma(spec.sigma);
    if (x_new.rows() > 0 && x_new.cols() != x_train.cols()) {
        throw std::invalid_argument(
            fmt::format("cross_kernel: feature dimension mismatch ({} vs {})", x_new.cols(),
                        x_train.cols()));
    }
    Eigen::MatrixXd k(x_new.rows(), x_train.rows());
    for (Eigen::Index i = 0; i < x_new.rows(); ++i) {
        for (Eigen::Index j = 0; j < x_train.rows(); ++j) {
            k(i, j) = rbf_from_sq_dist((x_new.row(i) - x_train.row(j)).squaredNorm(), spec.sigma);
        }
    }
    return k;
}

} // namespace psvm
