#pragma once

#include <Eigen/Dense>

namespace psvm {

enum class KernelKind { Rbf };

struct KernelSpec {
    KernelKind kind = KernelKind::Rbf;
    double sigma = 1.0; // RBF width; the exponent denominator is sigma^2
};

/// exp(-|x - z|^2 / sigma^2). Result in (0, 1]; 1 exactly at zero distance.
/// Throws std::invalid_argument on dimension mismatch or sigma <= 0.
double rbf(Eigen::Ref<const Eigen::VectorXd> x, Eigen::Ref<const Eigen::VectorXd> z,
           double sigma);

/// N x N kernel matrix over the rows of x. Symmetric with unit diagonal.
Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& x, const KernelSpec& spec);

/// M x N matrix of kernel values between rows of x_new and rows of x_train.
Eigen::MatrixXd cross_kernel(const Eigen::MatrixXd& x_new, const Eigen::MatrixXd& x_train,
                             const KernelSpec& spec);

} // namespace psvm
