#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "dbas/bench.hpp"
#include "dbas/csv.hpp"
#include "dbas/math.hpp"
#include "test_support.hpp"

using namespace dbas;
namespace fs = std::filesystem;

namespace {

MlpOracle count_a_oracle(std::size_t length) {
    MlpOracle oracle;
    oracle.layer_dims = {length * 4, 1};
    std::vector<double> w(length * 4, 0.0);
    for (std::size_t pos = 0; pos < length; ++pos) w[pos * 4] = 1.0;
    oracle.weights = {std::move(w)};
    oracle.biases = {{0.0}};
    return oracle;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("enumerate_all: sizes, analytic argmax, index round-trip") {
    const MlpOracle oracle2 = make_random_oracle(2, {5}, 1);
    CHECK(enumerate_all(2, oracle2).scores.size() == 16);

    const EnumerationTable count3 = enumerate_all(3, count_a_oracle(3));
    CHECK(count3.max_score == 3.0);
    CHECK(count3.argmax_sequence().to_string() == "AAA");

    Rng rng = make_rng(3);
    for (int i = 0; i < 50; ++i) {
        const Sequence s = uniform_sequences(5, 1, rng).front();
        CHECK(sequence_from_index(index_from_sequence(s), 5) == s);
    }
    CHECK(sequence_from_index(0, 3).to_string() == "AAA");
    CHECK(sequence_from_index(63, 3).to_string() == "TTT");

    CHECK_THROWS_AS(enumerate_all(9, make_random_oracle(9, {4}, 0), 8), SpaceTooLarge);
}

TEST_CASE("enumerate_all at L=8: max equals the max of two half-space scans") {
    const MlpOracle oracle = make_random_oracle(8, {30, 30}, 44);
    const EnumerationTable table = enumerate_all(8, oracle);
    REQUIRE(table.scores.size() == 65536);
    double lo_max = -1e300, hi_max = -1e300;
    for (std::uint64_t idx = 0; idx < 32768; ++idx) lo_max = std::max(lo_max, table.scores[idx]);
    for (std::uint64_t idx = 32768; idx < 65536; ++idx)
        hi_max = std::max(hi_max, table.scores[idx]);
    CHECK(std::max(lo_max, hi_max) == table.max_score);
}

TEST_CASE("enumerate_all agrees with an independent recursive generator at L<=6") {
    const MlpOracle oracle = make_random_oracle(5, {12}, 9);
    const EnumerationTable table = enumerate_all(5, oracle);
    std::uint64_t idx = 0;
    testref::for_each_sequence(5, [&](const Sequence& s) {
        REQUIRE(table.scores[idx] == mlp_mean(oracle, encode_one_hot(s)));
        ++idx;
    });
    CHECK(idx == table.scores.size());
}

TEST_CASE("build_training_set: cap respected, full population edge, errors") {
    const MlpOracle oracle = make_random_oracle(5, {10, 10}, 21);
    const EnumerationTable table = enumerate_all(5, oracle);

    const double threshold = table.quantile(0.40);
    const LabeledTrainingSet train = build_training_set(table, 200, 40.0, 33);
    for (std::size_t i = 0; i < train.sequences.size(); ++i) {
        CHECK(train.labels[i] <= threshold);
        CHECK(train.labels[i] ==
              table.scores[index_from_sequence(train.sequences[i])]);
    }
    CHECK(train.sequences.size() == 200);

    // cap=100 with size = whole space returns exactly the population
    const MlpOracle small = make_random_oracle(2, {4}, 5);
    const EnumerationTable table2 = enumerate_all(2, small);
    const LabeledTrainingSet all = build_training_set(table2, 16, 100.0, 1);
    std::set<std::uint64_t> seen;
    for (const Sequence& s : all.sequences) seen.insert(index_from_sequence(s));
    CHECK(seen.size() == 16);

    CHECK_THROWS_AS(build_training_set(table2, 17, 100.0, 1), InsufficientPopulation);
    CHECK_THROWS_AS(build_training_set(table2, 4, 140.0, 1), InvalidArgument);

    // determinism
    const LabeledTrainingSet again = build_training_set(table, 200, 40.0, 33);
    CHECK(again.sequences == train.sequences);
}

TEST_CASE("fraction_of_possible_gain") {
    CHECK(fraction_of_possible_gain(7.0, 3.0, 7.0) == 1.0);
    CHECK(fraction_of_possible_gain(3.0, 3.0, 7.0) == 0.0);
    CHECK(fraction_of_possible_gain(5.0, 3.0, 7.0) == 0.5);
    CHECK_THROWS_AS(fraction_of_possible_gain(5.0, 7.0, 7.0), DegenerateDenominator);
}

TEST_CASE("calibrate_oracle_scale pins probe statistics") {
    MlpOracle oracle = make_random_oracle(10, {20, 20}, 77);
    calibrate_oracle_scale(oracle, 50.0, 25.0, 2048, 5);
    Rng rng = make_rng(5);  // same probe stream the calibration used
    const std::vector<Sequence> probes = uniform_sequences(10, 2048, rng);
    const std::vector<double> scores = score_batch(oracle, probes);
    const auto [mean, sd] = mean_std(scores);
    CHECK(mean == doctest::Approx(50.0).epsilon(1e-9));
    CHECK(sd == doctest::Approx(25.0).epsilon(1e-9));
}

TEST_CASE("experiment config JSON: defaults and round-trip") {
    const ExperimentConfig cfg =
        experiment_config_from_json("{\"kind\": \"random_noise_free\"}");
    CHECK(cfg.replicates == 10);
    CHECK(cfg.quantile == 0.95);
    CHECK(cfg.train_percentile_cap == 40.0);
    CHECK(cfg.model.family == ModelSpec::Family::Pwm);
    CHECK(cfg.target_protein == "SNILHPLFAVVVVHWSPLKIPSRWKIGVRQYV");

    const ExperimentConfig round =
        experiment_config_from_json(experiment_config_to_json(cfg));
    CHECK(experiment_config_to_json(round) == experiment_config_to_json(cfg));

    CHECK_THROWS_AS(experiment_config_from_json("{\"kind\": \"bogus\"}"), IoError);
    CHECK_THROWS_AS(experiment_config_from_json("not json"), IoError);
}

TEST_CASE("run_experiment random_noise_free: artifacts, summary, compare identity") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentConfig::Kind::RandomNoiseFree;
    cfg.seed = 1;
    cfg.replicates = 2;
    cfg.budget = 1000;
    cfg.samples_per_iter = 100;
    cfg.quantile = 0.9;
    cfg.train_size = 50;
    cfg.lengths = {4};
    const fs::path dir = fresh_dir("dbas_bench_rnf");

    const ExperimentResult result = run_experiment(cfg, dir.string());
    CHECK(result.summary.size() == 2 * 4);  // replicates x methods
    for (const SummaryRow& row : result.summary) {
        REQUIRE(row.fraction.has_value());
        CHECK(std::isfinite(*row.fraction));
        CHECK(*row.fraction <= 1.0 + 1e-12);
    }
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "summary.csv"));
    CHECK(fs::exists(dir / "dbas_L4_rep0.csv"));
    CHECK(fs::exists(dir / "random_L4_rep1.csv"));
    // model-based methods leave a final snapshot next to the trajectory
    CHECK(fs::exists(dir / "dbas_L4_rep0_model.json"));
    CHECK(fs::exists(dir / "fb_L4_rep1_model.json"));
    CHECK_FALSE(fs::exists(dir / "random_L4_rep0_model.json"));
    CHECK(std::holds_alternative<PwmModel>(load_model((dir / "dbas_L4_rep0_model.json").string())));

    // compare recomputes the same summary from the files alone
    compare_outputs(dir.string(), (dir / "summary2.csv").string());
    CHECK(read_text_file((dir / "summary.csv").string()) ==
          read_text_file((dir / "summary2.csv").string()));

    // whole-pipeline determinism
    const fs::path dir2 = fresh_dir("dbas_bench_rnf2");
    run_experiment(cfg, dir2.string());
    CHECK(read_text_file((dir / "summary.csv").string()) ==
          read_text_file((dir2 / "summary.csv").string()));
    CHECK(read_text_file((dir / "dbas_L4_rep1.csv").string()) ==
          read_text_file((dir2 / "dbas_L4_rep1.csv").string()));
    fs::remove_all(dir);
    fs::remove_all(dir2);
}

TEST_CASE("run_experiment q_sweep emits one method name per Q") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentConfig::Kind::QSweep;
    cfg.seed = 2;
    cfg.replicates = 1;
    cfg.budget = 600;
    cfg.samples_per_iter = 100;
    cfg.train_size = 40;
    cfg.length = 4;
    cfg.q_values = {0.5, 0.9};
    const fs::path dir = fresh_dir("dbas_bench_qsweep");
    const ExperimentResult result = run_experiment(cfg, dir.string());
    REQUIRE(result.summary.size() == 2);
    CHECK(result.summary[0].method == "dbas_q0.5");
    CHECK(result.summary[1].method == "dbas_q0.9");
    for (const SummaryRow& row : result.summary) CHECK(row.fraction.has_value());
    fs::remove_all(dir);
}

TEST_CASE("run_experiment noisy_constrained keeps samples on the target protein") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentConfig::Kind::NoisyConstrained;
    cfg.seed = 3;
    cfg.replicates = 1;
    cfg.budget = 600;
    cfg.samples_per_iter = 100;
    cfg.quantile = 0.9;
    cfg.train_size = 40;
    cfg.target_protein = "MAW";  // tiny surrogate target
    cfg.noise_variance = 0.36;
    cfg.methods = {"dbas", "fb", "random", "marginal"};
    const fs::path dir = fresh_dir("dbas_bench_nc");
    const ExperimentResult result = run_experiment(cfg, dir.string());
    CHECK(result.summary.size() == 4);
    for (const SummaryRow& row : result.summary) {
        CHECK_FALSE(row.fraction.has_value());  // no ground-truth maximum at this scale
        CHECK(row.length == 9);
    }
    // constrained random draws stay on the target protein by construction
    const std::vector<IterationRow> random_rows =
        load_run_csv((dir / "random_rep0.csv").string());
    CHECK(random_rows.back().budget_used == cfg.budget);
    CHECK(std::isnan(random_rows.front().gamma));
    compare_outputs(dir.string(), (dir / "summary2.csv").string());
    CHECK(read_text_file((dir / "summary.csv").string()) ==
          read_text_file((dir / "summary2.csv").string()));
    fs::remove_all(dir);
}

TEST_CASE("run_experiment specification writes scatter and stats files") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentConfig::Kind::Specification;
    cfg.seed = 4;
    cfg.replicates = 1;
    cfg.budget = 600;
    cfg.samples_per_iter = 100;
    cfg.quantile = 0.7;  // gentle annealing at this tiny scale
    cfg.train_size = 50;
    cfg.length = 6;
    cfg.noise_variances = {4.0, 1.0};
    cfg.target_quantiles = {0.3, 0.7};
    const fs::path dir = fresh_dir("dbas_bench_spec");
    const ExperimentResult result = run_experiment(cfg, dir.string());
    CHECK(result.summary.size() == 4);  // 2 variances x 2 targets
    for (const RunArtifact& a : result.runs) {
        REQUIRE(a.target.has_value());
        REQUIRE(a.final_sample_mean.has_value());
        // annealed widths never grow
        for (std::size_t i = 1; i < a.rows.size(); ++i)
            CHECK(a.rows[i].gamma <= a.rows[i - 1].gamma);
    }
    for (const std::string name : {"scatter_v0.csv", "scatter_v1.csv", "spec_stats.csv"}) {
        CHECK(fs::exists(dir / name));
        const std::string text = read_text_file((dir / name).string());
        CHECK(text.find('\n') != std::string::npos);
    }
    const std::string scatter = read_text_file((dir / "scatter_v0.csv").string());
    CHECK(scatter.rfind("target,sample_index,predicted_score\n", 0) == 0);
    fs::remove_all(dir);
}
