#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "psvm/lssvm.hpp"
#include "psvm/metrics.hpp"
#include "psvm/tuner.hpp"

namespace psvm {

/// One report: a human-readable text body plus line-delimited records.
/// Rendering is pure so content can be tested without touching the
/// filesystem; the CLI owns all I/O.
struct ReportArtifacts {
    std::string text;
    std::vector<nlohmann::json> records;
};

/// Per-iteration tuning trace in external units.
struct TraceRow {
    int iteration = 0;
    double best_fitness = 0.0;
    double gamma = 0.0;
    double sigma = 0.0;
};

/// Fold table beside the published per-fold reference values, the
/// measured-vs-published gap, and the alternate standardization mode's mean.
ReportArtifacts render_cv_report(const nlohmann::json& effective_config,
                                 const LssvmHyperParams& hyper, bool standardized,
                                 const CvOutcome& primary, double alt_mean_accuracy);

/// Winner, fold table at the winner, convergence trace, published reference
/// table, and wall time.
ReportArtifacts render_tune_report(const nlohmann::json& effective_config,
                                   const TuneResult& result,
                                   const std::vector<TraceRow>& trace, double wall_time_s);

/// Training-set confusion, accuracy and rates for a freshly fitted model.
ReportArtifacts render_train_report(const nlohmann::json& effective_config,
                                    const LssvmHyperParams& hyper, bool standardized,
                                    const ConfusionMatrix& cm);

/// Predictions CSV: config echo as '#' comment lines, then one row per input
/// (decision value, bipolar label, 0/1 label).
std::string render_predictions_csv(const nlohmann::json& effective_config,
                                   const std::vector<double>& decision_values,
                                   const std::vector<int>& labels);

} // namespace psvm
