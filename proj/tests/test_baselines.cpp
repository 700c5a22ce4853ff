#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "dbas/baselines.hpp"
#include "dbas/codon.hpp"
#include "dbas/math.hpp"
#include "test_support.hpp"

using namespace dbas;

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

LabeledTrainingSet make_train(const std::vector<std::string>& seqs,
                              const std::vector<double>& labels) {
    LabeledTrainingSet train;
    for (const auto& s : seqs) train.sequences.push_back(Sequence::from_string(s));
    train.labels = labels;
    return train;
}

}  // namespace

TEST_CASE("random_design: coupon-collector hit rate, N=1, determinism") {
    const MlpOracle oracle = count_a_oracle(3);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const RandomDesignResult r = random_design(3, 64 * 20, 128, oracle, seed);
        if (r.best.to_string() == "AAA") ++hits;
        CHECK(r.rows.back().budget_used == 64 * 20);
        CHECK(r.rows.size() == 10);
    }
    CHECK(hits >= 9);

    const RandomDesignResult single = random_design(3, 1, 100, oracle, 4);
    CHECK(single.rows.size() == 1);
    CHECK(single.rows[0].ess == 1.0);
    CHECK(single.best_score == mlp_mean(oracle, encode_one_hot(single.best)));

    const RandomDesignResult a = random_design(3, 500, 100, oracle, 12);
    const RandomDesignResult b = random_design(3, 500, 100, oracle, 12);
    CHECK(a.best == b.best);
    CHECK(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        CHECK(a.rows[i].max_score == b.rows[i].max_score);

    // uneven final chunk
    const RandomDesignResult odd = random_design(3, 250, 100, oracle, 1);
    CHECK(odd.rows.size() == 3);
    CHECK(odd.rows.back().ess == 50.0);
    CHECK(odd.rows.back().budget_used == 250);

    CHECK_THROWS_AS(random_design(3, 0, 100, oracle, 0), BudgetTooSmall);
}

TEST_CASE("marginal_design: averages, ties, single pair, permutation invariance") {
    CHECK(marginal_design(make_train({"AC", "GC"}, {2.0, 4.0})).to_string() == "GC");

    // full coverage with equal labels: lowest symbol wins everywhere
    std::vector<std::string> cover;
    for (char a : std::string("ACGT")) cover.push_back(std::string(1, a) + "A");
    CHECK(marginal_design(make_train(cover, {1.0, 1.0, 1.0, 1.0})).to_string() == "AA");

    CHECK(marginal_design(make_train({"CGT"}, {3.0})).to_string() == "CGT");

    const LabeledTrainingSet fwd =
        make_train({"AC", "GC", "GT", "AT"}, {1.0, 5.0, 2.0, 0.5});
    LabeledTrainingSet rev = fwd;
    std::reverse(rev.sequences.begin(), rev.sequences.end());
    std::reverse(rev.labels.begin(), rev.labels.end());
    CHECK(marginal_design(fwd) == marginal_design(rev));

    CHECK_THROWS_AS(marginal_design(LabeledTrainingSet{}), EmptyTrainingSet);
}

TEST_CASE("marginal_design_codons honors the translation constraint") {
    const Protein target = Protein::from_string("MA");
    // alanine codons GCA,GCC,GCG,GCT; label GCG highest
    const LabeledTrainingSet train = make_train(
        {"ATGGCA", "ATGGCC", "ATGGCG", "ATGGCT"}, {1.0, 2.0, 9.0, 3.0});
    const Sequence designed = marginal_design_codons(train, target);
    CHECK(designed.to_string() == "ATGGCG");
    CHECK(translate(designed) == target);

    // zero coverage for some codons still yields a valid translation
    const LabeledTrainingSet thin = make_train({"ATGGCA"}, {1.0});
    CHECK(translate(marginal_design_codons(thin, target)) == target);

    CHECK_THROWS_AS(marginal_design_codons(make_train({"ATG"}, {1.0}), target), LengthMismatch);
}

TEST_CASE("fixed_threshold_feedback: unreachable threshold freezes the pool") {
    const MlpOracle oracle = count_a_oracle(3);  // scores in [0,3]
    const OracleSystem system{oracle, {}, {}};
    FbConfig config;
    config.threshold = 10.0;
    config.samples_per_iter = 50;
    config.budget = 250;
    config.model.smoothing = 0.1;
    config.seed = 2;
    std::vector<Sequence> init;
    for (int i = 0; i < 20; ++i) init.push_back(Sequence::from_string("ACA"));
    const RunRecord record = fixed_threshold_feedback(config, system, init);
    CHECK(record.rows.size() == 5);
    for (const IterationRow& row : record.rows) {
        CHECK(row.ess == 0.0);  // no admissions
        CHECK(row.gamma == 10.0);
    }
    REQUIRE(record.final_samples.samples.size() == init.size());
    for (std::size_t i = 0; i < init.size(); ++i)
        CHECK(record.final_samples.samples[i] == init[i]);
    // the model refit on an unchanged pool stays put
    const GenModel expected{
        fit_pwm(WeightedSamples::with_unit_weights(init), config.model.smoothing)};
    CHECK(model_to_json(record.final_model) == model_to_json(expected));
}

TEST_CASE("fixed_threshold_feedback: threshold -inf makes a sliding window") {
    const MlpOracle oracle = count_a_oracle(3);
    const OracleSystem system{oracle, {}, {}};
    FbConfig config;
    config.threshold = -1e300;
    config.samples_per_iter = 5;
    config.budget = 10;
    config.model.smoothing = 0.1;
    config.seed = 8;
    const std::vector<Sequence> init{Sequence::from_string("TTT"), Sequence::from_string("TTT"),
                                     Sequence::from_string("TTT")};
    const RunRecord record = fixed_threshold_feedback(config, system, init);
    // every draw admitted
    for (const IterationRow& row : record.rows) CHECK(row.ess == 5.0);
    REQUIRE(record.final_samples.samples.size() == 3);

    // mirror the loop: the pool must be the tail of the last admitted batch
    Rng rng = make_rng(config.seed);
    const PwmModel m1 = fit_pwm(WeightedSamples::with_unit_weights(init), 0.1);
    const std::vector<Sequence> b1 = sample(GenModel{m1}, 5, rng);
    const std::vector<Sequence> pool1(b1.end() - 3, b1.end());
    const PwmModel m2 = fit_pwm(WeightedSamples::with_unit_weights(pool1), 0.1);
    const std::vector<Sequence> b2 = sample(GenModel{m2}, 5, rng);
    const std::vector<Sequence> expected(b2.end() - 3, b2.end());
    CHECK(record.final_samples.samples == expected);
}

TEST_CASE("fixed_threshold_feedback: admission is binary and constraint-aware") {
    const Protein target = Protein::from_string("MA");
    const MlpOracle oracle = count_a_oracle(6);
    OracleSystem system{oracle, {}, {}};
    system.constraints.emplace_back(target);
    FbConfig config;
    config.threshold = -1e300;  // admit on constraint alone
    config.samples_per_iter = 40;
    config.budget = 400;
    config.model.smoothing = 0.1;
    config.seed = 5;
    Rng rng = make_rng(9);
    std::vector<Sequence> init;
    for (int i = 0; i < 30; ++i) init.push_back(sample_synonymous(target, rng));
    const RunRecord record = fixed_threshold_feedback(config, system, init);
    for (const Sequence& s : record.final_samples.samples) CHECK(translate(s) == target);
    for (const IterationRow& row : record.rows) {
        CHECK(row.ess == std::floor(row.ess));  // whole-sample admissions only
        CHECK(row.gamma == -1e300);
    }

    CHECK_THROWS_AS(fixed_threshold_feedback(config, system, {}), EmptyTrainingSet);
    FbConfig bad = config;
    bad.budget = 10;
    CHECK_THROWS_AS(fixed_threshold_feedback(bad, system, init), BudgetTooSmall);
}

TEST_CASE("fb determinism") {
    const MlpOracle oracle = count_a_oracle(4);
    const OracleSystem system{oracle, {}, {}};
    FbConfig config;
    config.threshold = 2.0;
    config.samples_per_iter = 30;
    config.budget = 300;
    config.model.smoothing = 0.1;
    config.seed = 77;
    Rng rng = make_rng(1);
    const std::vector<Sequence> init = uniform_sequences(4, 25, rng);
    const RunRecord a = fixed_threshold_feedback(config, system, init);
    const RunRecord b = fixed_threshold_feedback(config, system, init);
    CHECK(model_to_json(a.final_model) == model_to_json(b.final_model));
    CHECK(a.final_samples.samples == b.final_samples.samples);
}
