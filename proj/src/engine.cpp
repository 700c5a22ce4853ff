#include "dbas/engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dbas/csv.hpp"
#include "dbas/math.hpp"

namespace dbas {

namespace {

constexpr std::uint64_t kInitFitStream = 0x1a17;
constexpr std::uint64_t kRefitStream = 0x5ef1;

double quantile_of(std::span<const double> values, double q) {
    if (values.empty()) throw EmptyScores("no scores");
    return linear_quantile(values, q);
}

TargetSet make_target(const DbasConfig& config, double gamma) {
    return (config.mode == DbasConfig::Mode::Maximize)
               ? TargetSet::half_line(gamma)
               : TargetSet::interval(config.target_value, gamma);
}

}  // namespace

namespace {

// interpolated order statistic at a fractional rank (sorts a copy)
double value_at_rank(std::vector<double> values, double rank) {
    std::sort(values.begin(), values.end());
    const auto lo = static_cast<std::size_t>(rank);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace

double update_threshold_max(std::span<const double> scores, double q,
                            std::optional<double> gamma_prev) {
    const double raw = quantile_of(scores, q);
    return gamma_prev ? std::max(raw, *gamma_prev) : raw;
}

double update_threshold_max(std::span<const double> scores, std::span<const char> valid,
                            double q, std::optional<double> gamma_prev) {
    if (scores.empty()) throw EmptyScores("no scores");
    if (valid.size() != scores.size()) throw InvalidArgument("mask/scores size mismatch");
    std::vector<double> eligible;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (valid[i]) eligible.push_back(scores[i]);
    const double rank = static_cast<double>(scores.size() - 1) * q;
    const double offset = static_cast<double>(scores.size() - eligible.size());
    if (eligible.empty() || rank < offset) {
        if (!gamma_prev) throw DegenerateWeights("no constraint-satisfying anchor for gamma");
        return *gamma_prev;
    }
    const double raw = value_at_rank(std::move(eligible), rank - offset);
    return gamma_prev ? std::max(raw, *gamma_prev) : raw;
}

double update_width_spec(std::span<const double> scores, double y0, double q,
                         std::optional<double> width_prev) {
    if (scores.empty()) throw EmptyScores("no scores");
    std::vector<double> deviations(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) deviations[i] = std::fabs(scores[i] - y0);
    const double raw = linear_quantile(deviations, 1.0 - q);
    return width_prev ? std::min(raw, *width_prev) : raw;
}

double update_width_spec(std::span<const double> scores, std::span<const char> valid, double y0,
                         double q, std::optional<double> width_prev) {
    if (scores.empty()) throw EmptyScores("no scores");
    if (valid.size() != scores.size()) throw InvalidArgument("mask/scores size mismatch");
    std::vector<double> deviations;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (valid[i]) deviations.push_back(std::fabs(scores[i] - y0));
    const double rank = static_cast<double>(scores.size() - 1) * (1.0 - q);
    if (deviations.empty() || rank > static_cast<double>(deviations.size()) - 1.0) {
        if (!width_prev) throw DegenerateWeights("no constraint-satisfying anchor for width");
        return *width_prev;
    }
    const double raw = value_at_rank(std::move(deviations), rank);
    return width_prev ? std::min(raw, *width_prev) : raw;
}

std::vector<double> score_batch(const MlpOracle& oracle, std::span<const Sequence> samples) {
    std::vector<double> scores(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        scores[i] = mlp_mean(oracle, encode_one_hot(samples[i]));
    return scores;
}

std::vector<double> compute_weights(const OracleSystem& system, std::span<const Sequence> samples,
                                    const TargetSet& target, std::span<const double> means) {
    if (!means.empty() && means.size() != samples.size())
        throw InvalidArgument("means/samples size mismatch");
    std::vector<double> weights(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::vector<double> factors;
        const double mean = means.empty()
                                ? mlp_mean(system.property, encode_one_hot(samples[i]))
                                : means[i];
        factors.push_back(set_prob_from_mean(mean, system.property.noise_variance, target));
        for (const ConstraintOracle& c : system.constraints)
            factors.push_back(constraint_prob(c, samples[i]));
        for (const auto& extra : system.extra_factors)
            factors.push_back(set_prob(extra.oracle, encode_one_hot(samples[i]), extra.target));
        weights[i] = product_prob(factors);
    }
    return weights;
}

double effective_sample_size(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw InvalidArgument("negative weight");
        total += w;
    }
    return total;
}

RunRecord dbas_run(const DbasConfig& config, const OracleSystem& system,
                   const std::optional<WeightedSamples>& init_data) {
    if (!(config.quantile >= 0.0 && config.quantile <= 1.0))
        throw InvalidArgument("quantile must lie in [0,1]");
    if (config.samples_per_iter == 0) throw InvalidArgument("samples_per_iter must be positive");
    if (config.budget < config.samples_per_iter)
        throw BudgetTooSmall("budget below one iteration's sample count");
    system.property.validate();
    const std::size_t length = system.property.sequence_length();
    for (const ConstraintOracle& c : system.constraints)
        if (3 * c.target.length() != length)
            throw LengthMismatch("constraint protein length inconsistent with oracle");
    for (const auto& extra : system.extra_factors)
        if (extra.oracle.sequence_length() != length)
            throw LengthMismatch("extra factor oracle length inconsistent");

    Rng rng = make_rng(config.seed);

    WeightedSamples init;
    if (init_data) {
        if (init_data->samples.empty()) throw EmptyInput("init data has no samples");
        for (const Sequence& s : init_data->samples)
            if (s.length() != length) throw LengthMismatch("init sample length mismatch");
        init = WeightedSamples::with_unit_weights(init_data->samples);
    } else {
        init = WeightedSamples::with_unit_weights(
            uniform_sequences(length, config.samples_per_iter, rng));
    }

    // gamma_0 from the initial data: median score, or median deviation from
    // the target in Specify mode. Not budget-counted (training-set role).
    const std::vector<double> init_scores = score_batch(system.property, init.samples);
    double gamma = (config.mode == DbasConfig::Mode::Maximize)
                       ? linear_quantile(init_scores, 0.5)
                       : update_width_spec(init_scores, config.target_value, 0.5, std::nullopt);

    GenModel model = fit_model(config.model, init, derive_seed(config.seed, kInitFitStream));

    const std::uint64_t iterations = config.budget / config.samples_per_iter;
    RunRecord record{{}, {}, model};
    std::vector<Epoch> history;
    std::uint64_t budget_used = 0;

    for (std::uint64_t t = 1; t <= iterations; ++t) {
        std::vector<Sequence> batch = sample(model, config.samples_per_iter, rng);
        const std::vector<double> scores = score_batch(system.property, batch);
        budget_used += batch.size();

        if (system.constraints.empty()) {
            gamma = (config.mode == DbasConfig::Mode::Maximize)
                        ? update_threshold_max(scores, config.quantile, gamma)
                        : update_width_spec(scores, config.target_value, config.quantile, gamma);
        } else {
            // hard-constraint violators cannot anchor the annealed set
            std::vector<char> valid(batch.size(), 1);
            for (std::size_t i = 0; i < batch.size(); ++i)
                for (const ConstraintOracle& c : system.constraints)
                    if (constraint_prob(c, batch[i]) == 0.0) {
                        valid[i] = 0;
                        break;
                    }
            gamma = (config.mode == DbasConfig::Mode::Maximize)
                        ? update_threshold_max(scores, valid, config.quantile, gamma)
                        : update_width_spec(scores, valid, config.target_value, config.quantile,
                                            gamma);
        }
        const TargetSet target = make_target(config, gamma);
        std::vector<double> weights = compute_weights(system, batch, target, scores);

        const double ess = effective_sample_size(weights);
        if (ess < config.ess_floor)
            throw DegenerateWeights("effective sample size " + format_double(ess) +
                                    " below floor at iteration " + std::to_string(t));

        const auto [mean, sd] = mean_std(scores);
        double max_score = scores.front();
        for (double s : scores) max_score = std::max(max_score, s);
        record.rows.push_back({static_cast<int>(t), gamma, mean, sd, max_score, ess, budget_used});

        WeightedSamples fit_data{batch, weights};
        if (config.reuse_old) {
            history.push_back({batch, model});
            fit_data = reuse_weights(history, model, target, system);
        }
        record.final_samples = WeightedSamples{std::move(batch), std::move(weights)};
        model = fit_model(config.model, fit_data, derive_seed(config.seed, kRefitStream, t));
    }

    record.final_model = std::move(model);
    return record;
}

BoundGap exact_bound_gap(const GenModel& model_t, const GenModel& candidate,
                         const MlpOracle& oracle, const TargetSet& target) {
    const std::size_t length = model_length(model_t);
    if (model_length(candidate) != length || oracle.sequence_length() != length)
        throw LengthMismatch("bound-gap inputs disagree on sequence length");
    if (length > 6) throw SpaceTooLarge("exhaustive bound check limited to 4^6 sequences");
    const std::uint64_t space = 1ULL << (2 * length);

    // joint masses p(x) * P(S|x) for both models, in lexicographic order
    std::vector<double> joint_t(space), joint_c(space);
    double z_t = 0.0, z_c = 0.0;
    std::vector<std::uint8_t> symbols(length);
    for (std::uint64_t idx = 0; idx < space; ++idx) {
        for (std::size_t pos = 0; pos < length; ++pos)
            symbols[pos] = static_cast<std::uint8_t>((idx >> (2 * (length - 1 - pos))) & 3u);
        const Sequence x{symbols};
        const double ps = set_prob(oracle, encode_one_hot(x), target);
        joint_t[idx] = std::exp(log_likelihood(model_t, x)) * ps;
        joint_c[idx] = std::exp(log_likelihood(candidate, x)) * ps;
        z_t += joint_t[idx];
        z_c += joint_c[idx];
    }
    if (z_t <= 0.0 || z_c <= 0.0)
        throw DegenerateWeights("target set has zero probability under a model");

    const double lhs = std::log(z_c);

    // rhs: expectation under the conditional of model_t, plus log P(S|model_t)
    double expect = 0.0;
    double kl = 0.0;
    for (std::uint64_t idx = 0; idx < space; ++idx) {
        if (joint_t[idx] <= 0.0) continue;
        const double q_t = joint_t[idx] / z_t;
        expect += q_t * std::log(joint_c[idx] / joint_t[idx]);
        const double q_c = joint_c[idx] / z_c;
        kl += q_t * std::log(q_t / q_c);
    }
    // log(p_c/p_t) equals log(joint_c/joint_t) since P(S|x) cancels
    const double rhs = expect + std::log(z_t);
    return {lhs, rhs, kl};
}

WeightedSamples reuse_weights(std::span<const Epoch> history, const GenModel& current,
                              const TargetSet& target, const OracleSystem& system) {
    WeightedSamples out;
    for (const Epoch& epoch : history) {
        if (model_length(epoch.model) != model_length(current))
            throw LengthMismatch("epoch model length mismatch");
        const std::vector<double> base = compute_weights(system, epoch.samples, target);
        for (std::size_t i = 0; i < epoch.samples.size(); ++i) {
            const double log_ratio = log_likelihood(current, epoch.samples[i]) -
                                     log_likelihood(epoch.model, epoch.samples[i]);
            out.samples.push_back(epoch.samples[i]);
            out.weights.push_back(base[i] * std::exp(log_ratio));
        }
    }
    return out;
}

std::string run_rows_to_csv(std::span<const IterationRow> rows) {
    std::ostringstream out;
    out << "iteration,gamma,mean_score,std_score,max_score,ess,budget_used\n";
    for (const IterationRow& r : rows) {
        out << r.iteration << ',';
        if (!std::isnan(r.gamma)) out << format_double(r.gamma);
        out << ',' << format_double(r.mean_score) << ',' << format_double(r.std_score) << ','
            << format_double(r.max_score) << ',' << format_double(r.ess) << ',' << r.budget_used
            << '\n';
    }
    return out.str();
}

std::vector<IterationRow> run_rows_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty trajectory CSV");
    std::vector<IterationRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 7) throw IoError("trajectory CSV row must have 7 fields");
        IterationRow r;
        r.iteration = static_cast<int>(parse_double(fields[0]));
        r.gamma = fields[1].empty() ? std::numeric_limits<double>::quiet_NaN()
                                    : parse_double(fields[1]);
        r.mean_score = parse_double(fields[2]);
        r.std_score = parse_double(fields[3]);
        r.max_score = parse_double(fields[4]);
        r.ess = parse_double(fields[5]);
        r.budget_used = static_cast<std::uint64_t>(parse_double(fields[6]));
        rows.push_back(r);
    }
    return rows;
}

void save_run_csv(std::span<const IterationRow> rows, const std::string& path) {
    write_text_file(path, run_rows_to_csv(rows));
}

std::vector<IterationRow> load_run_csv(const std::string& path) {
    return run_rows_from_csv(read_text_file(path));
}

}  // namespace dbas
