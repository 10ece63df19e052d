#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "psvm/dataset.hpp"
#include "psvm/lssvm.hpp"
#include "psvm/metrics.hpp"
#include "psvm/report.hpp"
#include "psvm/rng.hpp"
#include "psvm/tuner.hpp"

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string data_path;
    bool standardize = true;
    double gamma = 100.0;
    double sigma = 0.5;
    int folds = 10;
    std::uint64_t seed = 42;
    std::string preset = "desk";
    std::string variant = "as-printed";
    std::string rule = "modified";
    std::string out;
    int swarm_size = -1; // -1: take from preset
    int max_iters = -1;
    unsigned threads = 1;
    std::string model_path; // predict
    std::string input_path; // predict
};

// Tracks written files; on failure everything already written is removed so
// a nonzero exit never leaves a partial artifact behind.
class ArtifactWriter {
public:
    void write(const fs::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
        }
        written_.push_back(path);
    }

    void write_jsonl(const fs::path& path, const std::vector<nlohmann::json>& records) {
        std::string body;
        for (const auto& rec : records) body += rec.dump() + "\n";
        write(path, body);
    }

    void keep() { written_.clear(); }

    ~ArtifactWriter() {
        for (const auto& p : written_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

private:
    std::vector<fs::path> written_;
};

psvm::TunePreset preset_from_string(const std::string& s) {
    if (s == "desk") return psvm::TunePreset::Desk;
    if (s == "paper") return psvm::TunePreset::Paper;
    throw std::invalid_argument(fmt::format("unknown preset '{}' (expected desk or paper)", s));
}

psvm::UpdateRule rule_from_string(const std::string& s) {
    if (s == "modified") return psvm::UpdateRule::Modified;
    if (s == "standard") return psvm::UpdateRule::Standard;
    throw std::invalid_argument(
        fmt::format("unknown rule '{}' (expected modified or standard)", s));
}

nlohmann::json base_config(const Options& o, const std::string& command) {
    return {{"command", command},
            {"data", o.data_path},
            {"standardize", o.standardize},
            {"seed", o.seed},
            {"variant", o.variant},
            {"out", o.out}};
}

psvm::Dataset load_dataset(const Options& o) {
    const auto records = psvm::parse_pima_csv(o.data_path);
    return psvm::build_dataset(records, o.standardize);
}

int run_cv(const Options& o) {
    const auto records = psvm::parse_pima_csv(o.data_path);
    const psvm::Dataset primary = psvm::build_dataset(records, o.standardize);
    const psvm::Dataset alternate = psvm::build_dataset(records, !o.standardize);

    const std::uint64_t cv_seed = psvm::splitmix64(o.seed);
    const psvm::FoldPlan plan = psvm::stratified_kfold(primary.y, o.folds, cv_seed);
    const psvm::LssvmHyperParams hyper{o.gamma, o.sigma};
    const auto variant = psvm::variant_from_string(o.variant);

    const psvm::CvOutcome outcome = psvm::cv_fitness(primary, plan, hyper, variant);
    const psvm::CvOutcome alt = psvm::cv_fitness(alternate, plan, hyper, variant);

    nlohmann::json cfg = base_config(o, "cv");
    cfg["gamma"] = o.gamma;
    cfg["sigma"] = o.sigma;
    cfg["folds"] = o.folds;
    cfg["cv_seed"] = cv_seed;

    const auto art =
        psvm::render_cv_report(cfg, hyper, o.standardize, outcome, alt.mean_accuracy);
    ArtifactWriter writer;
    writer.write(o.out + ".txt", art.text);
    writer.write_jsonl(o.out + ".jsonl", art.records);
    writer.keep();
    std::cout << art.text;
    return 0;
}

int run_tune(const Options& o) {
    const psvm::Dataset data = load_dataset(o);

    psvm::TuneConfig cfg = psvm::make_tune_config(preset_from_string(o.preset), o.seed);
    cfg.folds = o.folds;
    cfg.variant = psvm::variant_from_string(o.variant);
    cfg.pso.update_rule = rule_from_string(o.rule);
    cfg.pso.eval_threads = o.threads;
    if (o.swarm_size > 0) cfg.pso.swarm_size = o.swarm_size;
    if (o.max_iters > 0) cfg.pso.max_iters = o.max_iters;

    std::vector<psvm::TraceRow> trace;
    trace.reserve(static_cast<std::size_t>(cfg.pso.max_iters) + 1);
    auto observer = [&](const psvm::IterationSnapshot& snap) {
        const Eigen::VectorXd ext = cfg.space.to_external(snap.global_best_position);
        trace.push_back({snap.iteration, snap.global_best_fitness, ext[0], ext[1]});
    };

    const auto start = std::chrono::steady_clock::now();
    const psvm::TuneResult result = psvm::tune(data, cfg, observer);
    const double wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    nlohmann::json jcfg = base_config(o, "tune");
    jcfg["preset"] = o.preset;
    jcfg["rule"] = o.rule;
    jcfg["folds"] = cfg.folds;
    jcfg["cv_seed"] = cfg.cv_seed;
    jcfg["swarm_size"] = cfg.pso.swarm_size;
    jcfg["max_iters"] = cfg.pso.max_iters;
    jcfg["threads"] = o.threads;

    const auto art = psvm::render_tune_report(jcfg, result, trace, wall_s);
    ArtifactWriter writer;
    writer.write(o.out + ".txt", art.text);
    writer.write_jsonl(o.out + ".jsonl", art.records);
    result.final_model.save(o.out + ".model.json");
    writer.keep();
    std::cout << art.text;
    return 0;
}

int run_train(const Options& o) {
    const psvm::Dataset data = load_dataset(o);
    const psvm::LssvmHyperParams hyper{o.gamma, o.sigma};
    const auto variant = psvm::variant_from_string(o.variant);
    const psvm::LssvmModel model = psvm::train(data, hyper, variant);

    std::vector<int> predicted;
    predicted.reserve(data.y.size());
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        predicted.push_back(model.classify(data.x.row(i).transpose()));
    }
    const psvm::ConfusionMatrix cm = psvm::confusion(predicted, data.y);

    nlohmann::json cfg = base_config(o, "train");
    cfg["gamma"] = o.gamma;
    cfg["sigma"] = o.sigma;

    const auto art = psvm::render_train_report(cfg, hyper, o.standardize, cm);
    ArtifactWriter writer;
    writer.write(o.out + ".txt", art.text);
    writer.write_jsonl(o.out + ".jsonl", art.records);
    model.save(o.out + ".model.json");
    writer.keep();
    std::cout << art.text;
    return 0;
}

int run_predict(const Options& o) {
    const psvm::LssvmModel model = psvm::LssvmModel::load(o.model_path);
    const psvm::FeatureRows rows = psvm::parse_feature_rows(o.input_path);

    std::vector<double> decisions;
    std::vector<int> labels;
    decisions.reserve(static_cast<std::size_t>(rows.x.rows()));
    for (Eigen::Index i = 0; i < rows.x.rows(); ++i) {
        const double dv = model.decision_value_raw(rows.x.row(i).transpose());
        decisions.push_back(dv);
        labels.push_back(dv >= 0.0 ? +1 : -1);
    }

    nlohmann::json cfg{{"command", "predict"},
                       {"model", o.model_path},
                       {"input", o.input_path},
                       {"out", o.out},
                       {"gamma", model.hyper().gamma},
                       {"sigma", model.hyper().sigma},
                       {"variant", psvm::to_string(model.variant())},
                       {"standardized_model", model.standardization().has_value()}};

    ArtifactWriter writer;
    writer.write(o.out + ".csv", psvm::render_predictions_csv(cfg, decisions, labels));
    writer.keep();
    std::cout << fmt::format("wrote {} predictions to {}.csv\n", decisions.size(), o.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LS-SVM classifier for the Pima schema with swarm-tuned hyperparameters"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI/TOML config file");

    Options o;

    auto add_common = [&](CLI::App* cmd, bool needs_data) {
        if (needs_data) {
            cmd->add_option("data", o.data_path, "Pima-schema CSV file")->required();
        }
        cmd->add_flag("--standardize,!--no-standardize", o.standardize,
                      "Standardize features to zero mean, unit variance (default on)");
        cmd->add_option("--seed", o.seed, "Master seed for folds and the swarm");
        cmd->add_option("--variant", o.variant, "LS-SVM system: as-printed | bordered")
            ->check(CLI::IsMember({"as-printed", "bordered"}));
        cmd->add_option("--out", o.out, "Output path prefix");
    };

    CLI::App* cv = app.add_subcommand("cv", "k-fold cross-validation at fixed (gamma, sigma)");
    add_common(cv, true);
    cv->add_option("--gamma", o.gamma, "Regularization factor");
    cv->add_option("--sigma", o.sigma, "RBF kernel width");
    cv->add_option("--folds", o.folds, "Fold count")->check(CLI::Range(2, 1000));

    CLI::App* tune = app.add_subcommand("tune", "swarm-search (gamma, sigma), retrain winner");
    add_common(tune, true);
    tune->add_option("--folds", o.folds, "Fold count")->check(CLI::Range(2, 1000));
    tune->add_option("--preset", o.preset, "desk (30x50) | paper (768x100)")
        ->check(CLI::IsMember({"desk", "paper"}));
    tune->add_option("--rule", o.rule, "Velocity update: modified | standard")
        ->check(CLI::IsMember({"modified", "standard"}));
    tune->add_option("--swarm-size", o.swarm_size, "Override preset swarm size");
    tune->add_option("--max-iters", o.max_iters, "Override preset iteration budget");
    tune->add_option("--threads", o.threads,
                     "Fitness evaluation threads (1 = serial, 0 = all cores)");

    CLI::App* train = app.add_subcommand("train", "train at fixed (gamma, sigma), save model");
    add_common(train, true);
    train->add_option("--gamma", o.gamma, "Regularization factor");
    train->add_option("--sigma", o.sigma, "RBF kernel width");

    CLI::App* predict = app.add_subcommand("predict", "apply a saved model to feature rows");
    predict->add_option("model", o.model_path, "Model file from train/tune")->required();
    predict->add_option("input", o.input_path, "CSV of feature rows (8 or 9 columns)")
        ->required();
    predict->add_option("--out", o.out, "Output path prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cv->parsed()) {
            if (o.out.empty()) o.out = "cv_report";
            return run_cv(o);
        }
        if (tune->parsed()) {
            if (o.out.empty()) o.out = "tune_report";
            return run_tune(o);
        }
        if (train->parsed()) {
            if (o.out.empty()) o.out = "train_report";
            return run_train(o);
        }
        if (predict->parsed()) {
            if (o.out.empty()) o.out = "predictions";
            return run_predict(o);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
