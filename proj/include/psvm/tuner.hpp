#pragma once

#include <cstdint>
#include <vector>

#include "psvm/dataset.hpp"
#include "psvm/lssvm.hpp"
#include "psvm/pso.hpp"

namespace psvm {

/// Two-phase pipeline configuration: swarm search over (gamma, sigma) with
/// k-fold cross-validation accuracy as fitness.
struct TuneConfig {
    SearchSpace space;   // 2-D: (gamma, sigma)
    PsoConfig pso;
    int folds = 10;
    std::uint64_t cv_seed = 0;
    LssvmVariant variant = LssvmVariant::AsPrinted;
};

struct TuneResult {
    double best_gamma = 0.0;
    double best_sigma = 0.0;
    double best_cv_accuracy = 0.0;       // mean of fold_accuracies
    std::vector<double> fold_accuracies; // at the winning hyperparameters
    std::vector<double> history;         // per-iteration global best fitness
    LssvmModel final_model;              // retrained on all rows
};

struct CvOutcome {
    double mean_accuracy = 0.0;
    std::vector<double> fold_accuracies;
};

/// k-fold cross-validation accuracy at fixed hyperparameters: train on the
/// k-1 complement of each fold, classify the held-out fold. A singular
/// training system on any fold scores the whole candidate 0 instead of
/// aborting the search.
CvOutcome cv_fitness(const Dataset& data, const FoldPlan& plan,
                     const LssvmHyperParams& hyper, LssvmVariant variant);

/// Fixes one FoldPlan from (labels, folds, cv_seed), maximizes CV accuracy
/// with the swarm, then retrains the winner on all rows. Deterministic for
/// fixed seeds. The observer sees the swarm's per-iteration snapshots.
TuneResult tune(const Dataset& data, const TuneConfig& cfg,
                const IterationObserver& on_iteration = {});

/// desk: 30 particles x 50 iterations (tractable on a workstation).
/// paper: 768 particles x 100 iterations.
enum class TunePreset { Desk, Paper };

/// Preset TuneConfig: gamma in [1e-2, 1e3] and sigma in [1e-2, 1e2], both
/// log-scaled; c1 = c2 = 2.05; linearly decaying inertia; Modified rule;
/// 10 folds. The fold seed is derived from the run seed.
TuneConfig make_tune_config(TunePreset preset, std::uint64_t seed);

const char* to_string(TunePreset p);

} // namespace psvm
