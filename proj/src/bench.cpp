#include "dbas/bench.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dbas/codon.hpp"
#include "dbas/csv.hpp"
#include "dbas/math.hpp"

namespace dbas {

namespace fs = std::filesystem;

double EnumerationTable::quantile(double q) const { return linear_quantile(scores, q); }

Sequence EnumerationTable::argmax_sequence() const {
    return sequence_from_index(argmax_index, length);
}

Sequence sequence_from_index(std::uint64_t index, std::size_t length) {
    std::vector<std::uint8_t> symbols(length);
    for (std::size_t pos = 0; pos < length; ++pos)
        symbols[pos] = static_cast<std::uint8_t>((index >> (2 * (length - 1 - pos))) & 3u);
    return Sequence(std::move(symbols));
}

std::uint64_t index_from_sequence(const Sequence& seq) {
    std::uint64_t index = 0;
    for (std::size_t pos = 0; pos < seq.length(); ++pos) index = (index << 2) | seq[pos];
    return index;
}

EnumerationTable enumerate_all(std::size_t length, const MlpOracle& oracle,
                               std::size_t max_length) {
    if (length == 0 || length > max_length)
        throw SpaceTooLarge("enumeration limited to lengths 1.." + std::to_string(max_length));
    if (oracle.sequence_length() != length) throw LengthMismatch("oracle/length mismatch");
    const std::uint64_t space = 1ULL << (2 * length);
    EnumerationTable table;
    table.length = length;
    table.scores.resize(space);
    table.max_score = -std::numeric_limits<double>::infinity();
    OneHot x(length);
    for (std::uint64_t idx = 0; idx < space; ++idx) {
        for (std::size_t pos = 0; pos < length; ++pos) {
            const auto sym = static_cast<std::size_t>((idx >> (2 * (length - 1 - pos))) & 3u);
            for (std::size_t c = 0; c < kAlphabetSize; ++c) x.set(pos, c, c == sym ? 1.0 : 0.0);
        }
        const double s = oracle.forward(x.flat());
        table.scores[idx] = s;
        if (s > table.max_score) {
            table.max_score = s;
            table.argmax_index = idx;
        }
    }
    return table;
}

LabeledTrainingSet build_training_set(const EnumerationTable& table, std::size_t size,
                                      double percentile_cap, std::uint64_t seed) {
    if (!(percentile_cap >= 0.0 && percentile_cap <= 100.0))
        throw InvalidArgument("percentile cap must lie in [0,100]");
    const double threshold = table.quantile(percentile_cap / 100.0);
    std::vector<std::uint64_t> eligible;
    for (std::uint64_t idx = 0; idx < table.scores.size(); ++idx)
        if (table.scores[idx] <= threshold) eligible.push_back(idx);
    if (eligible.size() < size)
        throw InsufficientPopulation("only " + std::to_string(eligible.size()) +
                                     " sequences at or below the cap");
    // partial Fisher-Yates
    Rng rng = make_rng(seed);
    LabeledTrainingSet train;
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = i + uniform_index(rng, eligible.size() - i);
        std::swap(eligible[i], eligible[j]);
        train.sequences.push_back(sequence_from_index(eligible[i], table.length));
        train.labels.push_back(table.scores[eligible[i]]);
    }
    return train;
}

double fraction_of_possible_gain(double y_opt, double y_train_max, double y_global_max) {
    if (y_global_max <= y_train_max)
        throw DegenerateDenominator("training maximum already at the global maximum");
    return (y_opt - y_train_max) / (y_global_max - y_train_max);
}

void calibrate_oracle_scale(MlpOracle& oracle, double target_mean, double target_std,
                            std::size_t probe_count, std::uint64_t seed) {
    if (probe_count < 2) throw InvalidArgument("need at least two probes");
    Rng rng = make_rng(seed);
    const std::vector<Sequence> probes =
        uniform_sequences(oracle.sequence_length(), probe_count, rng);
    const std::vector<double> scores = score_batch(oracle, probes);
    const auto [mean, sd] = mean_std(scores);
    if (sd <= 0.0) throw DegenerateDenominator("probe scores are constant");
    const double gain = target_std / sd;
    for (double& w : oracle.weights.back()) w *= gain;
    oracle.biases.back()[0] = (oracle.biases.back()[0] - mean) * gain + target_mean;
}

// ---------------------------------------------------------------------------
// configuration JSON

namespace {

const char* kind_name(ExperimentConfig::Kind kind) {
    switch (kind) {
        case ExperimentConfig::Kind::RandomNoiseFree: return "random_noise_free";
        case ExperimentConfig::Kind::NoisyConstrained: return "noisy_constrained";
        case ExperimentConfig::Kind::Specification: return "specification";
        case ExperimentConfig::Kind::QSweep: return "q_sweep";
    }
    throw InvalidArgument("unknown experiment kind");
}

ExperimentConfig::Kind kind_from_name(const std::string& name) {
    if (name == "random_noise_free") return ExperimentConfig::Kind::RandomNoiseFree;
    if (name == "noisy_constrained") return ExperimentConfig::Kind::NoisyConstrained;
    if (name == "specification") return ExperimentConfig::Kind::Specification;
    if (name == "q_sweep") return ExperimentConfig::Kind::QSweep;
    throw IoError("unknown experiment kind: " + name);
}

nlohmann::json model_spec_json(const ModelSpec& spec) {
    nlohmann::json j;
    j["family"] = (spec.family == ModelSpec::Family::Pwm) ? "pwm" : "mixture";
    j["smoothing"] = spec.smoothing;
    j["components"] = spec.components;
    j["em_iters"] = spec.em_iters;
    return j;
}

ModelSpec model_spec_from_json(const nlohmann::json& j) {
    ModelSpec spec;
    const auto family = j.value("family", std::string("pwm"));
    if (family == "pwm")
        spec.family = ModelSpec::Family::Pwm;
    else if (family == "mixture")
        spec.family = ModelSpec::Family::Mixture;
    else
        throw IoError("unknown model family: " + family);
    spec.smoothing = j.value("smoothing", 0.1);
    spec.components = j.value("components", std::size_t{2});
    spec.em_iters = j.value("em_iters", 20);
    return spec;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("config JSON parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.kind = kind_from_name(j.at("kind").get<std::string>());
        cfg.seed = j.value("seed", std::uint64_t{0});
        cfg.replicates = j.value("replicates", 10);
        cfg.budget = j.value("budget", std::uint64_t{10000});
        cfg.samples_per_iter = j.value("samples_per_iter", std::size_t{500});
        cfg.quantile = j.value("quantile", 0.95);
        if (j.contains("model")) cfg.model = model_spec_from_json(j["model"]);
        cfg.reuse_old = j.value("reuse_old", false);
        cfg.hidden_dims = j.value("hidden_dims", std::vector<std::size_t>{50, 50});
        cfg.train_size = j.value("train_size", std::size_t{1000});
        cfg.train_percentile_cap = j.value("train_percentile_cap", 40.0);
        cfg.lengths = j.value("lengths", std::vector<std::size_t>{6, 7, 8});
        cfg.methods = j.value("methods",
                              std::vector<std::string>{"dbas", "fb", "random", "marginal"});
        cfg.q_values = j.value("q_values", std::vector<double>{0.2, 0.4, 0.6, 0.8, 0.95});
        cfg.target_protein =
            j.value("target_protein", std::string("SNILHPLFAVVVVHWSPLKIPSRWKIGVRQYV"));
        cfg.noise_variance = j.value("noise_variance", 0.36);
        cfg.length = j.value("length", std::size_t{20});
        cfg.noise_variances = j.value("noise_variances", std::vector<double>{0.36, 0.05});
        cfg.target_quantiles = j.value("target_quantiles", std::vector<double>{0.25, 0.5, 0.75});
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("config JSON field error: ") + e.what());
    }
    if (cfg.replicates < 1) throw IoError("replicates must be >= 1");
    return cfg;
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["kind"] = kind_name(cfg.kind);
    j["seed"] = cfg.seed;
    j["replicates"] = cfg.replicates;
    j["budget"] = cfg.budget;
    j["samples_per_iter"] = cfg.samples_per_iter;
    j["quantile"] = cfg.quantile;
    j["model"] = model_spec_json(cfg.model);
    j["reuse_old"] = cfg.reuse_old;
    j["hidden_dims"] = cfg.hidden_dims;
    j["train_size"] = cfg.train_size;
    j["train_percentile_cap"] = cfg.train_percentile_cap;
    j["lengths"] = cfg.lengths;
    j["methods"] = cfg.methods;
    j["q_values"] = cfg.q_values;
    j["target_protein"] = cfg.target_protein;
    j["noise_variance"] = cfg.noise_variance;
    j["length"] = cfg.length;
    j["noise_variances"] = cfg.noise_variances;
    j["target_quantiles"] = cfg.target_quantiles;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// experiment orchestration

namespace {

// seed stream labels
constexpr std::uint64_t kOracleStream = 1;
constexpr std::uint64_t kTrainStream = 2;
constexpr std::uint64_t kRunStream = 3;
constexpr std::uint64_t kProbeStream = 4;

constexpr double kScoreScaleMean = 50.0;
constexpr double kScoreScaleStd = 25.0;

int method_id(const std::string& method) {
    if (method == "dbas") return 0;
    if (method == "fb") return 1;
    if (method == "random") return 2;
    if (method == "marginal") return 3;
    throw InvalidArgument("unknown method: " + method);
}

struct RunStats {
    double y_opt;
    double final_max;
    double final_mean;
};

RunStats stats_from_rows(std::span<const IterationRow> rows) {
    if (rows.empty()) throw InvalidArgument("run produced no rows");
    double y_opt = rows.front().max_score;
    for (const IterationRow& r : rows) y_opt = std::max(y_opt, r.max_score);
    return {y_opt, rows.back().max_score, rows.back().mean_score};
}

SummaryRow summarize(const RunArtifact& artifact) {
    SummaryRow row;
    row.method = artifact.method;
    row.length = artifact.length;
    row.replicate = artifact.replicate;
    row.final_max = artifact.rows.back().max_score;
    row.final_mean = artifact.rows.back().mean_score;
    if (artifact.y_train_max && artifact.y_global_max)
        row.fraction =
            fraction_of_possible_gain(artifact.y_opt, *artifact.y_train_max, *artifact.y_global_max);
    return row;
}

std::vector<IterationRow> marginal_rows(double score) {
    return {{1, std::numeric_limits<double>::quiet_NaN(), score, 0.0, score, 1.0, 1}};
}

void write_artifact(const fs::path& dir, RunArtifact& artifact) {
    save_run_csv(artifact.rows, (dir / artifact.csv_name).string());
    if (artifact.final_model) {
        const std::string stem = artifact.csv_name.substr(0, artifact.csv_name.size() - 4);
        save_model(*artifact.final_model, (dir / (stem + "_model.json")).string());
    }
    artifact.y_opt = stats_from_rows(artifact.rows).y_opt;
}

nlohmann::json manifest_entry(const RunArtifact& a) {
    nlohmann::json e;
    e["method"] = a.method;
    e["length"] = a.length;
    e["replicate"] = a.replicate;
    e["csv"] = a.csv_name;
    e["y_train_max"] = a.y_train_max ? nlohmann::json(*a.y_train_max) : nlohmann::json();
    e["y_global_max"] = a.y_global_max ? nlohmann::json(*a.y_global_max) : nlohmann::json();
    if (a.target) e["target"] = *a.target;
    if (a.noise_variance) e["noise_variance"] = *a.noise_variance;
    return e;
}

struct MethodRun {
    std::vector<IterationRow> rows;
    WeightedSamples final_samples;
    std::optional<GenModel> final_model;
};

MethodRun random_synonymous_design(const Protein& target, std::uint64_t budget,
                                   std::size_t chunk, const MlpOracle& oracle,
                                   std::uint64_t seed) {
    if (budget < 1) throw BudgetTooSmall("random design needs at least one draw");
    Rng rng = make_rng(seed);
    MethodRun result;
    std::uint64_t drawn = 0;
    int row_index = 0;
    std::vector<double> chunk_scores;
    while (drawn < budget) {
        const auto m = static_cast<std::size_t>(std::min<std::uint64_t>(chunk, budget - drawn));
        chunk_scores.clear();
        for (std::size_t i = 0; i < m; ++i) {
            const Sequence x = sample_synonymous(target, rng);
            chunk_scores.push_back(mlp_mean(oracle, encode_one_hot(x)));
        }
        drawn += m;
        const auto [mean, sd] = mean_std(chunk_scores);
        double max_score = chunk_scores.front();
        for (double s : chunk_scores) max_score = std::max(max_score, s);
        result.rows.push_back({++row_index, std::numeric_limits<double>::quiet_NaN(), mean, sd,
                               max_score, static_cast<double>(m), drawn});
    }
    return result;
}

// One maximization run of a named method under shared oracle/data/budget.
MethodRun run_method(const std::string& method, const ExperimentConfig& cfg, double quantile,
                     const OracleSystem& system, const LabeledTrainingSet& train,
                     std::uint64_t run_seed) {
    if (method == "dbas") {
        DbasConfig dc;
        dc.mode = DbasConfig::Mode::Maximize;
        dc.quantile = quantile;
        dc.samples_per_iter = cfg.samples_per_iter;
        dc.budget = cfg.budget;
        dc.model = cfg.model;
        dc.seed = run_seed;
        dc.reuse_old = cfg.reuse_old;
        const WeightedSamples init = WeightedSamples::with_unit_weights(train.sequences);
        RunRecord record = dbas_run(dc, system, init);
        return {std::move(record.rows), std::move(record.final_samples),
                std::move(record.final_model)};
    }
    if (method == "fb") {
        FbConfig fc;
        fc.threshold = linear_quantile(train.labels, 0.8);
        fc.samples_per_iter = cfg.samples_per_iter;
        fc.budget = cfg.budget;
        fc.model = cfg.model;
        fc.seed = run_seed;
        RunRecord record = fixed_threshold_feedback(fc, system, train.sequences);
        return {std::move(record.rows), std::move(record.final_samples),
                std::move(record.final_model)};
    }
    if (method == "random") {
        RandomDesignResult r = random_design(system.property.sequence_length(), cfg.budget,
                                             cfg.samples_per_iter, system.property, run_seed);
        return {std::move(r.rows), {}, std::nullopt};
    }
    if (method == "marginal") {
        const Sequence designed = system.constraints.empty()
                                      ? marginal_design(train)
                                      : marginal_design_codons(train, system.constraints.front().target);
        return {marginal_rows(mlp_mean(system.property, encode_one_hot(designed))),
                WeightedSamples::with_unit_weights({designed}), std::nullopt};
    }
    throw InvalidArgument("unknown method: " + method);
}

ExperimentResult run_random_noise_free(const ExperimentConfig& cfg, const fs::path& dir) {
    ExperimentResult result;
    for (std::size_t length : cfg.lengths) {
        MlpOracle oracle =
            make_random_oracle(length, cfg.hidden_dims, derive_seed(cfg.seed, kOracleStream, length));
        const EnumerationTable table = enumerate_all(length, oracle);
        const OracleSystem system{oracle, {}, {}};
        for (int rep = 0; rep < cfg.replicates; ++rep) {
            const LabeledTrainingSet train =
                build_training_set(table, cfg.train_size, cfg.train_percentile_cap,
                                   derive_seed(cfg.seed, kTrainStream, length, rep));
            for (const std::string& method : cfg.methods) {
                RunArtifact a;
                a.method = method;
                a.length = length;
                a.replicate = rep;
                a.csv_name = method + "_L" + std::to_string(length) + "_rep" +
                             std::to_string(rep) + ".csv";
                a.y_train_max = train.max_label();
                a.y_global_max = table.max_score;
                MethodRun run = run_method(
                    method, cfg, cfg.quantile, system, train,
                    derive_seed(cfg.seed, kRunStream, length * 8 + method_id(method), rep));
                a.rows = std::move(run.rows);
                a.final_samples = std::move(run.final_samples);
                a.final_model = std::move(run.final_model);
                write_artifact(dir, a);
                result.runs.push_back(std::move(a));
            }
        }
    }
    return result;
}

ExperimentResult run_q_sweep(const ExperimentConfig& cfg, const fs::path& dir) {
    ExperimentResult result;
    const std::size_t length = cfg.length;
    MlpOracle oracle =
        make_random_oracle(length, cfg.hidden_dims, derive_seed(cfg.seed, kOracleStream, length));
    const EnumerationTable table = enumerate_all(length, oracle);
    const OracleSystem system{oracle, {}, {}};
    for (int rep = 0; rep < cfg.replicates; ++rep) {
        const LabeledTrainingSet train =
            build_training_set(table, cfg.train_size, cfg.train_percentile_cap,
                               derive_seed(cfg.seed, kTrainStream, length, rep));
        for (std::size_t qi = 0; qi < cfg.q_values.size(); ++qi) {
            const double q = cfg.q_values[qi];
            RunArtifact a;
            a.method = "dbas_q" + format_double(q);
            a.length = length;
            a.replicate = rep;
            a.csv_name = "dbas_q" + format_double(q) + "_rep" + std::to_string(rep) + ".csv";
            a.y_train_max = train.max_label();
            a.y_global_max = table.max_score;
            MethodRun run = run_method("dbas", cfg, q, system, train,
                                       derive_seed(cfg.seed, kRunStream, 100 + qi, rep));
            a.rows = std::move(run.rows);
            a.final_samples = std::move(run.final_samples);
            a.final_model = std::move(run.final_model);
            write_artifact(dir, a);
            result.runs.push_back(std::move(a));
        }
    }
    return result;
}

ExperimentResult run_noisy_constrained(const ExperimentConfig& cfg, const fs::path& dir) {
    const Protein target = Protein::from_string(cfg.target_protein);
    const std::size_t length = 3 * target.length();
    MlpOracle oracle =
        make_random_oracle(length, cfg.hidden_dims, derive_seed(cfg.seed, kOracleStream, 0));
    calibrate_oracle_scale(oracle, kScoreScaleMean, kScoreScaleStd, 4096,
                           derive_seed(cfg.seed, kProbeStream, 0));
    oracle.noise_variance = cfg.noise_variance;
    const double sigma = std::sqrt(cfg.noise_variance);
    OracleSystem system{oracle, {}, {}};
    system.constraints.emplace_back(target);

    ExperimentResult result;
    for (int rep = 0; rep < cfg.replicates; ++rep) {
        // synthetic measured data: synonymous sequences with noisy labels
        Rng rng = make_rng(derive_seed(cfg.seed, kTrainStream, 0, rep));
        LabeledTrainingSet train;
        for (std::size_t i = 0; i < cfg.train_size; ++i) {
            Sequence s = sample_synonymous(target, rng);
            const double label =
                mlp_mean(oracle, encode_one_hot(s)) + sigma * normal_draw(rng);
            train.sequences.push_back(std::move(s));
            train.labels.push_back(label);
        }
        for (const std::string& method : cfg.methods) {
            RunArtifact a;
            a.method = method;
            a.length = length;
            a.replicate = rep;
            a.csv_name = method + "_rep" + std::to_string(rep) + ".csv";
            // random design restricted to the feasible space: uniform over
            // the sequences translating to the target
            MethodRun run =
                (method == "random")
                    ? random_synonymous_design(target, cfg.budget, cfg.samples_per_iter, oracle,
                                               derive_seed(cfg.seed, kRunStream,
                                                           method_id(method), rep))
                    : run_method(method, cfg, cfg.quantile, system, train,
                                 derive_seed(cfg.seed, kRunStream, method_id(method), rep));
            a.rows = std::move(run.rows);
            a.final_samples = std::move(run.final_samples);
            write_artifact(dir, a);
            result.runs.push_back(std::move(a));
        }
    }
    return result;
}

ExperimentResult run_specification(const ExperimentConfig& cfg, const fs::path& dir) {
    const std::size_t length = cfg.length;
    MlpOracle base =
        make_random_oracle(length, cfg.hidden_dims, derive_seed(cfg.seed, kOracleStream, 0));
    calibrate_oracle_scale(base, kScoreScaleMean, kScoreScaleStd, 4096,
                           derive_seed(cfg.seed, kProbeStream, 0));

    // targets from the calibrated score distribution over uniform probes
    Rng probe_rng = make_rng(derive_seed(cfg.seed, kProbeStream, 1));
    const std::vector<Sequence> probes = uniform_sequences(length, 4096, probe_rng);
    const std::vector<double> probe_scores = score_batch(base, probes);
    std::vector<double> targets;
    for (double tq : cfg.target_quantiles) targets.push_back(linear_quantile(probe_scores, tq));

    ExperimentResult result;
    std::vector<std::string> scatter(cfg.noise_variances.size(),
                                     "target,sample_index,predicted_score\n");
    std::ostringstream stats;
    stats << "target,noise_variance,replicate,sample_mean,sample_std\n";
    for (std::size_t vi = 0; vi < cfg.noise_variances.size(); ++vi) {
        MlpOracle oracle = base;
        oracle.noise_variance = cfg.noise_variances[vi];
        const OracleSystem system{oracle, {}, {}};
        for (std::size_t ti = 0; ti < targets.size(); ++ti) {
            for (int rep = 0; rep < cfg.replicates; ++rep) {
                Rng init_rng = make_rng(derive_seed(cfg.seed, kTrainStream, ti * 16 + vi, rep));
                const WeightedSamples init = WeightedSamples::with_unit_weights(
                    uniform_sequences(length, cfg.train_size, init_rng));

                DbasConfig dc;
                dc.mode = DbasConfig::Mode::Specify;
                dc.target_value = targets[ti];
                dc.quantile = cfg.quantile;
                dc.samples_per_iter = cfg.samples_per_iter;
                dc.budget = cfg.budget;
                dc.model = cfg.model;
                dc.seed = derive_seed(cfg.seed, kRunStream, ti * 16 + vi, rep);
                dc.reuse_old = cfg.reuse_old;
                const RunRecord record = dbas_run(dc, system, init);

                const std::vector<double> final_scores =
                    score_batch(oracle, record.final_samples.samples);
                const auto [mean, sd] = mean_std(final_scores);
                for (std::size_t i = 0; i < final_scores.size(); ++i)
                    scatter[vi] += format_double(targets[ti]) + "," + std::to_string(i) + "," +
                                   format_double(final_scores[i]) + "\n";
                stats << format_double(targets[ti]) << ','
                      << format_double(cfg.noise_variances[vi]) << ',' << rep << ','
                      << format_double(mean) << ',' << format_double(sd) << '\n';

                RunArtifact a;
                a.method = "dbas_spec_t" + std::to_string(ti) + "_v" + std::to_string(vi);
                a.length = length;
                a.replicate = rep;
                a.csv_name = a.method + "_rep" + std::to_string(rep) + ".csv";
                a.rows = record.rows;
                a.final_samples = record.final_samples;
                a.final_model = record.final_model;
                a.target = targets[ti];
                a.noise_variance = cfg.noise_variances[vi];
                a.final_sample_mean = mean;
                a.final_sample_std = sd;
                write_artifact(dir, a);
                result.runs.push_back(std::move(a));
            }
        }
    }
    for (std::size_t vi = 0; vi < scatter.size(); ++vi)
        write_text_file((dir / ("scatter_v" + std::to_string(vi) + ".csv")).string(), scatter[vi]);
    write_text_file((dir / "spec_stats.csv").string(), stats.str());
    return result;
}

}  // namespace

std::string summary_to_csv(std::span<const SummaryRow> rows) {
    std::ostringstream out;
    out << "method,L,replicate,fraction_of_possible_gain,final_max,final_mean\n";
    for (const SummaryRow& r : rows) {
        out << r.method << ',' << r.length << ',' << r.replicate << ',';
        if (r.fraction) out << format_double(*r.fraction);
        out << ',' << format_double(r.final_max) << ',' << format_double(r.final_mean) << '\n';
    }
    return out.str();
}

ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
    const fs::path dir(out_dir);
    fs::create_directories(dir);

    ExperimentResult result;
    switch (config.kind) {
        case ExperimentConfig::Kind::RandomNoiseFree:
            result = run_random_noise_free(config, dir);
            break;
        case ExperimentConfig::Kind::QSweep:
            result = run_q_sweep(config, dir);
            break;
        case ExperimentConfig::Kind::NoisyConstrained:
            result = run_noisy_constrained(config, dir);
            break;
        case ExperimentConfig::Kind::Specification:
            result = run_specification(config, dir);
            break;
    }

    for (const RunArtifact& a : result.runs) result.summary.push_back(summarize(a));

    nlohmann::json manifest;
    manifest["kind"] = kind_name(config.kind);
    manifest["config"] = nlohmann::json::parse(experiment_config_to_json(config));
    nlohmann::json runs = nlohmann::json::array();
    for (const RunArtifact& a : result.runs) runs.push_back(manifest_entry(a));
    manifest["runs"] = runs;
    write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
    write_text_file((dir / "summary.csv").string(), summary_to_csv(result.summary));
    return result;
}

void compare_outputs(const std::string& out_dir, const std::string& summary_path) {
    const fs::path dir(out_dir);
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_text_file((dir / "manifest.json").string()));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("manifest parse error: ") + e.what());
    }
    std::vector<SummaryRow> rows;
    for (const auto& entry : manifest.at("runs")) {
        RunArtifact a;
        a.method = entry.at("method").get<std::string>();
        a.length = entry.at("length").get<std::size_t>();
        a.replicate = entry.at("replicate").get<int>();
        a.csv_name = entry.at("csv").get<std::string>();
        if (!entry.at("y_train_max").is_null())
            a.y_train_max = entry.at("y_train_max").get<double>();
        if (!entry.at("y_global_max").is_null())
            a.y_global_max = entry.at("y_global_max").get<double>();
        a.rows = load_run_csv((dir / a.csv_name).string());
        a.y_opt = stats_from_rows(a.rows).y_opt;
        rows.push_back(summarize(a));
    }
    write_text_file(summary_path, summary_to_csv(rows));
}

}  // namespace dbas
