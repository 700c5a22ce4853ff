#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dbas/baselines.hpp"
#include "dbas/engine.hpp"

namespace dbas {

/// Exact scores for every sequence of a small design space, in lexicographic
/// order (A < C < G < T).
struct EnumerationTable {
    std::size_t length = 0;
    std::vector<double> scores;  // 4^length entries
    double max_score = 0.0;
    std::uint64_t argmax_index = 0;

    double quantile(double q) const;
    Sequence argmax_sequence() const;
};

Sequence sequence_from_index(std::uint64_t index, std::size_t length);
std::uint64_t index_from_sequence(const Sequence& seq);

/// Exhaustive oracle evaluation; throws SpaceTooLarge above max_length.
EnumerationTable enumerate_all(std::size_t length, const MlpOracle& oracle,
                               std::size_t max_length = 13);

/// Uniform sample without replacement from the sub-population whose score is
/// at or below the percentile_cap threshold (percent, 0-100); labels come
/// from the table. Throws InsufficientPopulation.
LabeledTrainingSet build_training_set(const EnumerationTable& table, std::size_t size,
                                      double percentile_cap, std::uint64_t seed);

/// (y_opt - y_train_max) / (y_global_max - y_train_max); 1 means the global
/// optimum was found. Throws DegenerateDenominator when the gap is empty.
double fraction_of_possible_gain(double y_opt, double y_train_max, double y_global_max);

/// Rescales the oracle's affine output layer so that scores of probe_count
/// uniform sequences have the given mean and standard deviation; used to put
/// synthetic noisy oracles on an expression-like scale where the noise
/// variance is small relative to the score range.
void calibrate_oracle_scale(MlpOracle& oracle, double target_mean, double target_std,
                            std::size_t probe_count, std::uint64_t seed);

struct ExperimentConfig {
    enum class Kind { RandomNoiseFree, NoisyConstrained, Specification, QSweep };

    Kind kind = Kind::RandomNoiseFree;
    std::uint64_t seed = 0;
    int replicates = 10;

    std::uint64_t budget = 10000;
    std::size_t samples_per_iter = 500;
    double quantile = 0.95;
    ModelSpec model;
    bool reuse_old = false;
    std::vector<std::size_t> hidden_dims = {50, 50};

    std::size_t train_size = 1000;
    double train_percentile_cap = 40.0;

    std::vector<std::size_t> lengths = {6, 7, 8};                      // RandomNoiseFree
    std::vector<std::string> methods = {"dbas", "fb", "random", "marginal"};
    std::vector<double> q_values = {0.2, 0.4, 0.6, 0.8, 0.95};         // QSweep

    std::string target_protein = "SNILHPLFAVVVVHWSPLKIPSRWKIGVRQYV";   // NoisyConstrained
    double noise_variance = 0.36;

    std::size_t length = 20;                                           // single-length kinds
    std::vector<double> noise_variances = {0.36, 0.05};                // Specification
    std::vector<double> target_quantiles = {0.25, 0.5, 0.75};
};

ExperimentConfig experiment_config_from_json(const std::string& text);
std::string experiment_config_to_json(const ExperimentConfig& config);

struct SummaryRow {
    std::string method;
    std::size_t length = 0;
    int replicate = 0;
    std::optional<double> fraction;  // empty when no ground-truth maximum exists
    double final_max = 0.0;
    double final_mean = 0.0;
};

struct RunArtifact {
    std::string method;
    std::size_t length = 0;
    int replicate = 0;
    std::string csv_name;
    std::vector<IterationRow> rows;
    WeightedSamples final_samples;           // model-based methods only
    std::optional<GenModel> final_model;     // written alongside the CSV
    double y_opt = 0.0;
    std::optional<double> y_train_max;
    std::optional<double> y_global_max;
    std::optional<double> target;           // Specification
    std::optional<double> noise_variance;   // Specification
    std::optional<double> final_sample_mean;
    std::optional<double> final_sample_std;
};

struct ExperimentResult {
    std::vector<SummaryRow> summary;
    std::vector<RunArtifact> runs;
};

/// Runs every enabled method x replicate under identical oracles, training
/// sets and budget; writes one trajectory CSV per run, manifest.json and
/// summary.csv into out_dir (plus per-variance scatter CSVs for the
/// specification experiment).
ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir);

/// Recomputes summary.csv purely from manifest.json and the emitted per-run
/// CSVs; byte-identical to the summary written by run_experiment.
void compare_outputs(const std::string& out_dir, const std::string& summary_path);

std::string summary_to_csv(std::span<const SummaryRow> rows);

}  // namespace dbas
