#include "dbas/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "dbas/codon.hpp"
#include "dbas/math.hpp"

namespace dbas {

void LabeledTrainingSet::validate() const {
    if (sequences.empty()) throw EmptyTrainingSet("training set is empty");
    if (labels.size() != sequences.size()) throw InvalidArgument("labels/sequences size mismatch");
    const std::size_t length = sequences.front().length();
    for (const Sequence& s : sequences)
        if (s.length() != length) throw RaggedLengths("training sequences of unequal length");
}

double LabeledTrainingSet::max_label() const {
    validate();
    double best = labels.front();
    for (double v : labels) best = std::max(best, v);
    return best;
}

RandomDesignResult random_design(std::size_t length, std::uint64_t budget, std::size_t chunk,
                                 const MlpOracle& oracle, std::uint64_t seed) {
    if (budget < 1) throw BudgetTooSmall("random design needs at least one draw");
    if (chunk == 0) throw InvalidArgument("chunk must be positive");
    if (oracle.sequence_length() != length) throw LengthMismatch("oracle/length mismatch");

    Rng rng = make_rng(seed);
    RandomDesignResult result;
    result.best_score = -std::numeric_limits<double>::infinity();
    std::vector<double> chunk_scores;
    std::uint64_t drawn = 0;
    int row_index = 0;
    while (drawn < budget) {
        const std::size_t m = static_cast<std::size_t>(std::min<std::uint64_t>(chunk, budget - drawn));
        const std::vector<Sequence> batch = uniform_sequences(length, m, rng);
        chunk_scores.clear();
        for (const Sequence& x : batch) {
            const double s = mlp_mean(oracle, encode_one_hot(x));
            chunk_scores.push_back(s);
            if (s > result.best_score) {
                result.best_score = s;
                result.best = x;
            }
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

Sequence marginal_design(const LabeledTrainingSet& train) {
    train.validate();
    const std::size_t length = train.sequences.front().length();
    std::vector<std::uint8_t> symbols(length, 0);
    for (std::size_t pos = 0; pos < length; ++pos) {
        double best_mean = -std::numeric_limits<double>::infinity();
        std::uint8_t best_symbol = 0;
        for (std::uint8_t c = 0; c < kAlphabetSize; ++c) {
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t i = 0; i < train.sequences.size(); ++i)
                if (train.sequences[i][pos] == c) {
                    sum += train.labels[i];
                    ++count;
                }
            if (count == 0) continue;  // uncovered cell loses to any covered one
            const double mean = sum / static_cast<double>(count);
            if (mean > best_mean) {
                best_mean = mean;
                best_symbol = c;
            }
        }
        symbols[pos] = best_symbol;  // stays 0 (lowest index) if nothing covered
    }
    return Sequence(std::move(symbols));
}

Sequence marginal_design_codons(const LabeledTrainingSet& train, const Protein& target) {
    train.validate();
    if (target.has_stop()) throw InternalStop("target protein contains a stop");
    const std::size_t length = train.sequences.front().length();
    if (length != 3 * target.length())
        throw LengthMismatch("training length must be 3x the protein length");

    std::vector<std::uint8_t> symbols;
    symbols.reserve(length);
    for (std::size_t r = 0; r < target.length(); ++r) {
        const auto& codons = synonymous_codons(target.residues()[r]);
        double best_mean = -std::numeric_limits<double>::infinity();
        unsigned best_codon = codons.front();  // lowest index fallback
        for (unsigned codon : codons) {
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t i = 0; i < train.sequences.size(); ++i) {
                const Sequence& s = train.sequences[i];
                const unsigned have =
                    16u * s[3 * r] + 4u * s[3 * r + 1] + s[3 * r + 2];
                if (have == codon) {
                    sum += train.labels[i];
                    ++count;
                }
            }
            if (count == 0) continue;
            const double mean = sum / static_cast<double>(count);
            if (mean > best_mean) {
                best_mean = mean;
                best_codon = codon;
            }
        }
        symbols.push_back(static_cast<std::uint8_t>(best_codon >> 4));
        symbols.push_back(static_cast<std::uint8_t>((best_codon >> 2) & 3u));
        symbols.push_back(static_cast<std::uint8_t>(best_codon & 3u));
    }
    return Sequence(std::move(symbols));
}

RunRecord fixed_threshold_feedback(const FbConfig& config, const OracleSystem& system,
                                   const std::vector<Sequence>& init_data) {
    if (config.samples_per_iter == 0) throw InvalidArgument("samples_per_iter must be positive");
    if (config.budget < config.samples_per_iter)
        throw BudgetTooSmall("budget below one iteration's sample count");
    if (init_data.empty()) throw EmptyTrainingSet("feedback baseline needs seed data");
    system.property.validate();
    const std::size_t length = system.property.sequence_length();
    for (const Sequence& s : init_data)
        if (s.length() != length) throw LengthMismatch("init sample length mismatch");

    Rng rng = make_rng(config.seed);
    std::deque<Sequence> pool(init_data.begin(), init_data.end());
    const auto pool_data = [&pool] {
        return WeightedSamples::with_unit_weights({pool.begin(), pool.end()});
    };
    GenModel model = fit_model(config.model, pool_data(), derive_seed(config.seed, 0x1a17));

    const std::uint64_t iterations = config.budget / config.samples_per_iter;
    RunRecord record{{}, {}, model};
    std::uint64_t budget_used = 0;
    for (std::uint64_t t = 1; t <= iterations; ++t) {
        const std::vector<Sequence> batch = sample(model, config.samples_per_iter, rng);
        const std::vector<double> scores = score_batch(system.property, batch);
        budget_used += batch.size();

        std::size_t admitted = 0;
        for (std::size_t i = 0; i < batch.size(); ++i) {
            if (scores[i] < config.threshold) continue;
            bool ok = true;
            for (const ConstraintOracle& c : system.constraints)
                if (constraint_prob(c, batch[i]) == 0.0) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            pool.push_back(batch[i]);
            pool.pop_front();
            ++admitted;
        }

        const auto [mean, sd] = mean_std(scores);
        double max_score = scores.front();
        for (double s : scores) max_score = std::max(max_score, s);
        record.rows.push_back({static_cast<int>(t), config.threshold, mean, sd, max_score,
                               static_cast<double>(admitted), budget_used});
        model = fit_model(config.model, pool_data(), derive_seed(config.seed, 0x5ef1, t));
    }

    record.final_samples = pool_data();
    record.final_model = std::move(model);
    return record;
}

}  // namespace dbas
