#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "psvm/dataset.hpp"
#include "psvm/kernel.hpp"

namespace psvm {

struct LssvmHyperParams {
    double gamma = 1.0; // regularization factor; larger fits the data tighter
    double sigma = 1.0; // RBF width
};

/// AsPrinted solves (K + I/gamma) alpha = y with the bias fixed at 0.
/// Bordered solves the saddle system with the bias row/column appended
/// (sum(alpha) = 0, bias determined jointly).
enum class LssvmVariant { AsPrinted, Bordered };

/// Raised when the dual system stays singular or the condition estimate
/// exceeds 1e14 after jitter recovery.
class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LssvmSolution {
    Eigen::VectorXd alpha;
    double bias = 0.0;
};

/// Solve the dual system for a precomputed kernel block. Strategy: Cholesky
/// (LDLT for the bordered saddle system), one diagonal-jitter retry of
/// 1e-10 * trace/N, then partial-pivot LU gated on the condition estimate.
/// The returned solution satisfies the residual bound |A alpha - y|_inf < 1e-8
/// against the unjittered system, or SingularSystemError is thrown.
LssvmSolution solve_dual(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& y,
                         double gamma, LssvmVariant variant);

class LssvmModel {
public:
    LssvmModel() = default;
    LssvmModel(Eigen::MatrixXd x_train, Eigen::VectorXd alpha, double bias,
               LssvmHyperParams hyper, LssvmVariant variant,
               std::optional<std::vector<ColumnStats>> standardization);

    /// sum_k alpha_k K(x, x_k) + bias. Expects x in the model's own feature
    /// space (i.e. already standardized when the model was trained that way).
    double decision_value(Eigen::Ref<const Eigen::VectorXd> x) const;

    /// Sign of the decision value; exact zero resolves to +1.
    int classify(Eigen::Ref<const Eigen::VectorXd> x) const;

    /// Raw-space entry points: apply the stored column statistics first.
    double decision_value_raw(Eigen::Ref<const Eigen::VectorXd> raw) const;
    int classify_raw(Eigen::Ref<const Eigen::VectorXd> raw) const;

    /// Self-describing JSON persistence with a format-version field.
    /// Round-trip reproduces predictions to within 1e-12.
    void save(const std::filesystem::path& path) const;
    static LssvmModel load(const std::filesystem::path& path);

    const Eigen::MatrixXd& x_train() const { return x_train_; }
    const Eigen::VectorXd& alpha() const { return alpha_; }
    double bias() const { return bias_; }
    const LssvmHyperParams& hyper() const { return hyper_; }
    LssvmVariant variant() const { return variant_; }
    const std::optional<std::vector<ColumnStats>>& standardization() const {
        return standardization_;
    }

private:
    Eigen::MatrixXd x_train_;
    Eigen::VectorXd alpha_;
    double bias_ = 0.0;
    LssvmHyperParams hyper_{};
    LssvmVariant variant_ = LssvmVariant::AsPrinted;
    std::optional<std::vector<ColumnStats>> standardization_;
};

/// Train on a full dataset. Requires N >= 2 and both classes present.
LssvmModel train(const Dataset& data, const LssvmHyperParams& hyper,
                 LssvmVariant variant = LssvmVariant::AsPrinted);

const char* to_string(LssvmVariant v);
LssvmVariant variant_from_string(const std::string& s);

} // namespace psvm
