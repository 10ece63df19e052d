#include "psvm/lssvm.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace psvm {

namespace {

constexpr double kResidualBound = 1e-8;
constexpr double kConditionLimit = 1e14;
constexpr double kJitterScale = 1e-10;

// Assemble the saddle system  [0 1^T; 1 A] [b; alpha] = [0; y].
Eigen::MatrixXd bordered_matrix(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
    m(0, 0) = 0.0;
    m.block(0, 1, 1, n).setOnes();
    m.block(1, 0, n, 1).setOnes();
    m.block(1, 1, n, n) = a;
    return m;
}

double residual_inf(const Eigen::MatrixXd& a, const Eigen::VectorXd& alpha, double bias,
                    const Eigen::VectorXd& y, LssvmVariant variant) {
    Eigen::VectorXd r = a * alpha - y;
    if (variant == LssvmVariant::Bordered) {
        r.array() += bias;
        const double constraint = std::abs(alpha.sum());
        return std::max(r.cwiseAbs().maxCoeff(), constraint);
    }
    return r.cwiseAbs().maxCoeff();
}

struct SolveAttempt {
    bool ok = false;
    Eigen::VectorXd alpha;
    double bias = 0.0;
    double residual = 0.0;
};

SolveAttempt try_solve(const Eigen::MatrixXd& a_nominal, const Eigen::MatrixXd& a_solve,
                       const Eigen::VectorXd& y, LssvmVariant variant, bool use_lu,
                       double& condition_estimate) {
    SolveAttempt attempt;
    Eigen::VectorXd solution;
    if (variant == LssvmVariant::AsPrinted) {
        if (use_lu) {
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(a_solve);
            condition_estimate = 1.0 / lu.rcond();
            if (!(condition_estimate < kConditionLimit)) return attempt;
            solution = lu.solve(y);
        } else {
            Eigen::LLT<Eigen::MatrixXd> llt(a_solve);
            if (llt.info() != Eigen::Success) return attempt;
            solution = llt.solve(y);
        }
        attempt.alpha = std::move(solution);
        attempt.bias = 0.0;
    } else {
        const Eigen::MatrixXd m = bordered_matrix(a_solve);
        Eigen::VectorXd rhs(y.size() + 1);
        rhs[0] = 0.0;
        rhs.tail(y.size()) = y;
        if (use_lu) {
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
            condition_estimate = 1.0 / lu.rcond();
            if (!(condition_estimate < kConditionLimit)) return attempt;
            solution = lu.solve(rhs);
        } else {
            // The saddle system is symmetric indefinite; LDLT plays the role
            // Cholesky has for the plain system.
            Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
            if (ldlt.info() != Eigen::Success) return attempt;
            solution = ldlt.solve(rhs);
        }
        attempt.bias = solution[0];
        attempt.alpha = solution.tail(y.size());
    }
    attempt.residual = residual_inf(a_nominal, attempt.alpha, attempt.bias, y, variant);
    attempt.ok = attempt.residual < kResidualBound;
    return attempt;
}

} // namespace

LssvmSolution solve_dual(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& y,
                         double gamma, LssvmVariant variant) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument(fmt::format("solve_dual: gamma must be positive, got {}",
                                                gamma));
    }
    if (kernel.rows() != kernel.cols() || kernel.rows() != y.size()) {
        throw std::invalid_argument(
            fmt::format("solve_dual: kernel is {}x{} but y has {} entries", kernel.rows(),
                        kernel.cols(), y.size()));
    }
    const Eigen::Index n = kernel.rows();
    Eigen::MatrixXd a = kernel;
    a.diagonal().array() += 1.0 / gamma;

    const double jitter = kJitterScale * a.trace() / static_cast<double>(n);
    double condition_estimate = 0.0;

    // Factorization ladder: Cholesky/LDLT, one jitter retry, then LU with a
    // condition gate.
    auto attempt = try_solve(a, a, y, variant, /*use_lu=*/false, condition_estimate);
    if (!attempt.ok) {
        Eigen::MatrixXd a_jittered = a;
        a_jittered.diagonal().array() += jitter;
        attempt = try_solve(a, a_jittered, y, variant, /*use_lu=*/false, condition_estimate);
    }
    if (!attempt.ok) {
        attempt = try_solve(a, a, y, variant, /*use_lu=*/true, condition_estimate);
    }
    if (!attempt.ok) {
        throw SingularSystemError(
            fmt::format("dual system unsolvable within residual bound {} "
                        "(condition estimate {:.3e})",
                        kResidualBound, condition_estimate));
    }
    return {std::move(attempt.alpha), attempt.bias};
}

LssvmModel::LssvmModel(Eigen::MatrixXd x_train, Eigen::VectorXd alpha, double bias,
                       LssvmHyperParams hyper, LssvmVariant variant,
                       std::optional<std::vector<ColumnStats>> standardization)
    : x_train_(std::move(x_train)),
      alpha_(std::move(alpha)),
      bias_(bias),
      hyper_(hyper),
      variant_(variant),
      standardization_(std::move(standardization)) {
    if (alpha_.size() != x_train_.rows()) {
        throw std::invalid_argument(
            fmt::format("LssvmModel: {} support values for {} training rows", alpha_.size(),
                        x_train_.rows()));
    }
}

double LssvmModel::decision_value(Eigen::Ref<const Eigen::VectorXd> x) const {
    if (x.size() != x_train_.cols()) {
        throw std::invalid_argument(
            fmt::format("decision_value: input has {} features, model expects {}", x.size(),
                        x_train_.cols()));
    }
    const KernelSpec spec{KernelKind::Rbf, hyper_.sigma};
    const Eigen::MatrixXd k = cross_kernel(x.transpose(), x_train_, spec);
    return (k * alpha_)(0) + bias_;
}

int LssvmModel::classify(Eigen::Ref<const Eigen::VectorXd> x) const {
    return decision_value(x) >= 0.0 ? +1 : -1;
}

double LssvmModel::decision_value_raw(Eigen::Ref<const Eigen::VectorXd> raw) const {
    if (standardization_) {
        return decision_value(standardize_row(*standardization_, raw));
    }
    return decision_value(raw);
}

int LssvmModel::classify_raw(Eigen::Ref<const Eigen::VectorXd> raw) const {
    return decision_value_raw(raw) >= 0.0 ? +1 : -1;
}

LssvmModel train(const Dataset& data, const LssvmHyperParams& hyper, LssvmVariant variant) {
    const Eigen::Index n = data.rows();
    if (n < 2) {
        throw std::invalid_argument(fmt::format("train: need at least 2 rows, got {}", n));
    }
    bool has_pos = false;
    bool has_neg = false;
    for (const int label : data.y) {
        has_pos |= (label == +1);
        has_neg |= (label == -1);
    }
    if (!has_pos || !has_neg) {
        throw std::invalid_argument("train: both classes must be present");
    }
    if (!(hyper.sigma > 0.0)) {
        throw std::invalid_argument(fmt::format("train: sigma must be positive, got {}",
                                                hyper.sigma));
    }

    const KernelSpec spec{KernelKind::Rbf, hyper.sigma};
    const Eigen::MatrixXd k = gram_matrix(data.x, spec);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = static_cast<double>(data.y[static_cast<std::size_t>(i)]);

    auto solution = solve_dual(k, y, hyper.gamma, variant);
    return LssvmModel(data.x, std::move(solution.alpha), solution.bias, hyper, variant,
                      data.standardization);
}

const char* to_string(LssvmVariant v) {
    return v == LssvmVariant::AsPrinted ? "as-printed" : "bordered";
}

LssvmVariant variant_from_string(const std::string& s) {
    if (s == "as-printed") return LssvmVariant::AsPrinted;
    if (s == "bordered") return LssvmVariant::Bordered;
    throw std::invalid_argument(fmt::format("unknown LS-SVM variant '{}'", s));
}

} // namespace psvm
