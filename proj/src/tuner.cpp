#include "psvm/tuner.hpp"

#include <numeric>

#include <fmt/core.h>

#include "psvm/metrics.hpp"

namespace psvm {

namespace {

void validate_plan(const Dataset& data, const FoldPlan& plan) {
    if (static_cast<std::size_t>(data.rows()) != plan.assignments.size()) {
        throw std::invalid_argument(
            fmt::format("cv_fitness: plan covers {} rows but dataset has {}",
                        plan.assignments.size(), data.rows()));
    }
    for (const int f : plan.assignments) {
        if (f < 0 || f >= plan.k) {
            throw std::invalid_argument(
                fmt::format("cv_fitness: fold index {} outside [0, {})", f, plan.k));
        }
    }
}

} // namespace

CvOutcome cv_fitness(const Dataset& data, const FoldPlan& plan,
                     const LssvmHyperParams& hyper, LssvmVariant variant) {
    validate_plan(data, plan);
    const Eigen::Index n = data.rows();

    // One kernel matrix per candidate; every fold works on slices of it.
    // Entries are the same pure function of two rows either way, so this is
    // arithmetically identical to building each fold's blocks from scratch.
    const KernelSpec spec{KernelKind::Rbf, hyper.sigma};
    const Eigen::MatrixXd k_full = gram_matrix(data.x, spec);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        y[i] = static_cast<double>(data.y[static_cast<std::size_t>(i)]);
    }

    CvOutcome outcome;
    outcome.fold_accuracies.reserve(static_cast<std::size_t>(plan.k));
    for (int fold = 0; fold < plan.k; ++fold) {
        std::vector<Eigen::Index> train_idx;
        std::vector<Eigen::Index> test_idx;
        train_idx.reserve(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) {
            (plan.assignments[static_cast<std::size_t>(i)] == fold ? test_idx : train_idx)
                .push_back(i);
        }

        LssvmSolution solution;
        try {
            solution = solve_dual(k_full(train_idx, train_idx), y(train_idx), hyper.gamma,
                                  variant);
        } catch (const SingularSystemError&) {
            // A candidate whose system cannot be solved scores zero instead
            // of aborting the search.
            return {0.0, std::vector<double>(static_cast<std::size_t>(plan.k), 0.0)};
        }

        const Eigen::VectorXd decisions =
            k_full(test_idx, train_idx) * solution.alpha +
            Eigen::VectorXd::Constant(static_cast<Eigen::Index>(test_idx.size()),
                                      solution.bias);
        std::vector<int> predicted(test_idx.size());
        std::vector<int> actual(test_idx.size());
        for (std::size_t i = 0; i < test_idx.size(); ++i) {
            predicted[i] = decisions[static_cast<Eigen::Index>(i)] >= 0.0 ? +1 : -1;
            actual[i] = data.y[static_cast<std::size_t>(test_idx[i])];
        }
        outcome.fold_accuracies.push_back(accuracy(confusion(predicted, actual)));
    }
    outcome.mean_accuracy =
        std::accumulate(outcome.fold_accuracies.begin(), outcome.fold_accuracies.end(), 0.0) /
        static_cast<double>(plan.k);
    return outcome;
}

TuneResult tune(const Dataset& data, const TuneConfig& cfg,
                const IterationObserver& on_iteration) {
    if (cfg.space.dims() != 2) {
        throw std::invalid_argument(
            fmt::format("tune: search space must be 2-D (gamma, sigma), got {} dims",
                        cfg.space.dims()));
    }
    cfg.space.validate();

    const FoldPlan plan = stratified_kfold(data.y, cfg.folds, cfg.cv_seed);

    auto objective = [&](const Eigen::VectorXd& internal) {
        const Eigen::VectorXd external = cfg.space.to_external(internal);
        const LssvmHyperParams hyper{external[0], external[1]};
        return cv_fitness(data, plan, hyper, cfg.variant).mean_accuracy;
    };

    const OptimizeResult opt = optimize(objective, cfg.space, cfg.pso, on_iteration);

    const Eigen::VectorXd winner = cfg.space.to_external(opt.best_position);
    const LssvmHyperParams best{winner[0], winner[1]};
    CvOutcome at_winner = cv_fitness(data, plan, best, cfg.variant);

    TuneResult result;
    result.best_gamma = best.gamma;
    result.best_sigma = best.sigma;
    result.best_cv_accuracy = at_winner.mean_accuracy;
    result.fold_accuracies = std::move(at_winner.fold_accuracies);
    result.history = opt.history;
    result.final_model = train(data, best, cfg.variant);
    return result;
}

TuneConfig make_tune_config(TunePreset preset, std::uint64_t seed) {
    TuneConfig cfg;
    cfg.space.lower = Eigen::Vector2d(1e-2, 1e-2);
    cfg.space.upper = Eigen::Vector2d(1e3, 1e2);
    cfg.space.log_scale = {true, true};
    cfg.pso.c1 = 2.05;
    cfg.pso.c2 = 2.05;
    cfg.pso.inertia = {InertiaKind::LinearDecay, 0.0};
    cfg.pso.vmax_fraction = 0.5;
    cfg.pso.update_rule = UpdateRule::Modified;
    cfg.pso.seed = seed;
    cfg.pso.eval_threads = 1;
    if (preset == TunePreset::Desk) {
        cfg.pso.swarm_size = 30;
        cfg.pso.max_iters = 50;
    } else {
        cfg.pso.swarm_size = 768;
        cfg.pso.max_iters = 100;
    }
    cfg.folds = 10;
    cfg.cv_seed = splitmix64(seed);
    cfg.variant = LssvmVariant::AsPrinted;
    return cfg;
}

const char* to_string(TunePreset p) {
    return p == TunePreset::Desk ? "desk" : "paper";
}

} // namespace psvm
