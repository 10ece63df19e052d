#include "psvm/report.hpp"

#include <fmt/core.h>

#include "psvm/reference.hpp"

namespace psvm {

namespace {

nlohmann::json config_record(const nlohmann::json& effective_config) {
    return {{"type", "config"}, {"format_version", 1}, {"config", effective_config}};
}

std::string config_header(const nlohmann::json& effective_config) {
    return fmt::format("config: {}\n", effective_config.dump());
}

std::string fold_table(const std::vector<double>& fold_accuracies, double mean_accuracy) {
    std::string out = fmt::format("{:>5}  {:>10}  {:>10}\n", "fold", "measured", "reference");
    for (std::size_t i = 0; i < fold_accuracies.size(); ++i) {
        const std::string ref =
            i < kReferenceFoldAccuraciesPercent.size()
                ? fmt::format("{}%", kReferenceFoldAccuraciesPercent[i])
                : std::string("-");
        out += fmt::format("{:>5}  {:>9.3f}%  {:>10}\n", i + 1, fold_accuracies[i] * 100.0,
                           ref);
    }
    out += fmt::format("{:>5}  {:>9.3f}%  {:>9.3f}%\n", "mean", mean_accuracy * 100.0,
                       kReferenceMeanAccuracyPercent);
    return out;
}

std::string gap_block(double mean_accuracy) {
    const double measured_pct = mean_accuracy * 100.0;
    const double gap = measured_pct - kReferenceMeanAccuracyPercent;
    std::string out;
    out += fmt::format("published reference mean : {:.3f}%\n", kReferenceMeanAccuracyPercent);
    out += fmt::format("measured mean            : {:.3f}%\n", measured_pct);
    out += fmt::format("gap (measured - ref)     : {:+.3f} percentage points\n", gap);
    return out;
}

std::string reference_table() {
    std::string out = "published Pima results (for context):\n";
    for (const auto& row : kPimaReferenceResults) {
        out += fmt::format("  {:<32} {:>8}%  ({} records)\n", row.technique,
                           row.accuracy_percent, row.records);
    }
    return out;
}

void append_fold_records(std::vector<nlohmann::json>& records,
                         const std::vector<double>& fold_accuracies) {
    for (std::size_t i = 0; i < fold_accuracies.size(); ++i) {
        nlohmann::json rec{{"type", "fold"},
                           {"fold", i + 1},
                           {"accuracy", fold_accuracies[i]}};
        if (i < kReferenceFoldAccuraciesPercent.size()) {
            rec["reference_accuracy"] = kReferenceFoldAccuraciesPercent[i] / 100.0;
        }
        records.push_back(std::move(rec));
    }
}

} // namespace

ReportArtifacts render_cv_report(const nlohmann::json& effective_config,
                                 const LssvmHyperParams& hyper, bool standardized,
                                 const CvOutcome& primary, double alt_mean_accuracy) {
    ReportArtifacts art;
    art.records.push_back(config_record(effective_config));
    append_fold_records(art.records, primary.fold_accuracies);
    const double gap = primary.mean_accuracy - kReferenceMeanAccuracyPercent / 100.0;
    art.records.push_back({{"type", "summary"},
                           {"mean_accuracy", primary.mean_accuracy},
                           {"reference_mean_accuracy", kReferenceMeanAccuracyPercent / 100.0},
                           {"gap", gap},
                           {"gamma", hyper.gamma},
                           {"sigma", hyper.sigma},
                           {"folds", primary.fold_accuracies.size()},
                           {"standardize", standardized}});
    art.records.push_back({{"type", "alt_summary"},
                           {"standardize", !standardized},
                           {"mean_accuracy", alt_mean_accuracy}});

    art.text = "cross-validation report\n";
    art.text += config_header(effective_config);
    art.text += fmt::format("\n{}-fold cross-validation at gamma={}, sigma={} (standardize={})\n\n",
                            primary.fold_accuracies.size(), hyper.gamma, hyper.sigma,
                            standardized ? "on" : "off");
    art.text += fold_table(primary.fold_accuracies, primary.mean_accuracy);
    art.text += "\n";
    art.text += gap_block(primary.mean_accuracy);
    art.text += fmt::format("\nalternate mode (standardize={}): mean accuracy {:.3f}%\n",
                            standardized ? "off" : "on", alt_mean_accuracy * 100.0);
    return art;
}

ReportArtifacts render_tune_report(const nlohmann::json& effective_config,
                                   const TuneResult& result,
                                   const std::vector<TraceRow>& trace, double wall_time_s) {
    ReportArtifacts art;
    art.records.push_back(config_record(effective_config));
    for (const auto& row : trace) {
        art.records.push_back({{"type", "iteration"},
                               {"iteration", row.iteration},
                               {"best_fitness", row.best_fitness},
                               {"gamma", row.gamma},
                               {"sigma", row.sigma}});
    }
    append_fold_records(art.records, result.fold_accuracies);
    for (const auto& row : kPimaReferenceResults) {
        art.records.push_back({{"type", "reference"},
                               {"technique", row.technique},
                               {"accuracy", row.accuracy_percent / 100.0},
                               {"records", row.records}});
    }
    art.records.push_back({{"type", "summary"},
                           {"best_gamma", result.best_gamma},
                           {"best_sigma", result.best_sigma},
                           {"best_cv_accuracy", result.best_cv_accuracy},
                           {"reference_gamma", kReferenceGamma},
                           {"reference_sigma", kReferenceSigma},
                           {"reference_mean_accuracy", kReferenceMeanAccuracyPercent / 100.0},
                           {"iterations", result.history.empty() ? 0 : result.history.size() - 1},
                           {"wall_time_s", wall_time_s}});

    art.text = "hyperparameter tuning report\n";
    art.text += config_header(effective_config);
    art.text += fmt::format("\nwinner: gamma={:.6g}, sigma={:.6g}, cv accuracy {:.3f}%\n",
                            result.best_gamma, result.best_sigma,
                            result.best_cv_accuracy * 100.0);
    art.text += fmt::format("published winner: gamma={}, sigma={}\n", kReferenceGamma,
                            kReferenceSigma);
    art.text += "\n";
    art.text += fold_table(result.fold_accuracies, result.best_cv_accuracy);
    art.text += "\n";
    art.text += gap_block(result.best_cv_accuracy);
    if (!result.history.empty()) {
        art.text += fmt::format(
            "\nconvergence: initial best {:.3f}% -> final best {:.3f}% over {} iterations\n",
            result.history.front() * 100.0, result.history.back() * 100.0,
            result.history.size() - 1);
    }
    art.text += "\n";
    art.text += reference_table();
    art.text += fmt::format("\nwall time: {:.1f} s\n", wall_time_s);
    return art;
}

ReportArtifacts render_train_report(const nlohmann::json& effective_config,
                                    const LssvmHyperParams& hyper, bool standardized,
                                    const ConfusionMatrix& cm) {
    ReportArtifacts art;
    const double acc = accuracy(cm);
    const Rates r = rates(cm);
    nlohmann::json summary{{"type", "summary"},
                           {"gamma", hyper.gamma},
                           {"sigma", hyper.sigma},
                           {"standardize", standardized},
                           {"train_accuracy", acc},
                           {"tp", cm.tp},
                           {"tn", cm.tn},
                           {"fp", cm.fp},
                           {"fn", cm.fn}};
    summary["sensitivity"] = r.sensitivity ? nlohmann::json(*r.sensitivity) : nullptr;
    summary["specificity"] = r.specificity ? nlohmann::json(*r.specificity) : nullptr;
    art.records.push_back(config_record(effective_config));
    art.records.push_back(std::move(summary));

    art.text = "training report\n";
    art.text += config_header(effective_config);
    art.text += fmt::format("\ntrained at gamma={}, sigma={} (standardize={})\n", hyper.gamma,
                            hyper.sigma, standardized ? "on" : "off");
    art.text += fmt::format("training-set accuracy: {:.3f}%\n", acc * 100.0);
    art.text += fmt::format("confusion (positive = +1): tp={} tn={} fp={} fn={}\n", cm.tp,
                            cm.tn, cm.fp, cm.fn);
    art.text += fmt::format("sensitivity: {}\n",
                            r.sensitivity ? fmt::format("{:.3f}%", *r.sensitivity * 100.0)
                                          : "undefined (no positives)");
    art.text += fmt::format("specificity: {}\n",
                            r.specificity ? fmt::format("{:.3f}%", *r.specificity * 100.0)
                                          : "undefined (no negatives)");
    return art;
}

std::string render_predictions_csv(const nlohmann::json& effective_config,
                                   const std::vector<double>& decision_values,
                                   const std::vector<int>& labels) {
    std::string out = fmt::format("# config: {}\n", effective_config.dump());
    out += "row,decision_value,label,label01\n";
    for (std::size_t i = 0; i < decision_values.size(); ++i) {
        out += fmt::format("{},{},{},{}\n", i, decision_values[i], labels[i],
                           labels[i] == 1 ? 1 : 0);
    }
    return out;
}

} // namespace psvm
