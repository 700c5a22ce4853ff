#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dbas/genmodel.hpp"
#include "dbas/oracle.hpp"

namespace dbas {

/// The scored-and-annealed property oracle plus any hard constraints and
/// additional fixed-desideratum properties; per-sample weights are the
/// product over all factors.
struct OracleSystem {
    MlpOracle property;
    std::vector<ConstraintOracle> constraints;

    struct FixedFactor {
        MlpOracle oracle;
        TargetSet target;
    };
    std::vector<FixedFactor> extra_factors;
};

struct DbasConfig {
    enum class Mode { Maximize, Specify };

    Mode mode = Mode::Maximize;
    double target_value = 0.0;  // y0 (Specify only)
    double quantile = 0.9;      // Q
    std::size_t samples_per_iter = 1000;  // M
    std::uint64_t budget = 10000;         // N; iterations = floor(N/M)
    ModelSpec model;
    std::uint64_t seed = 0;
    bool reuse_old = false;   // importance-weighted reuse of earlier batches
    double ess_floor = 1.0;   // abort below this effective sample size
};

struct IterationRow {
    int iteration = 0;
    double gamma = 0.0;  // threshold (Maximize), half-width (Specify); NaN = blank
    double mean_score = 0.0;
    double std_score = 0.0;
    double max_score = 0.0;
    double ess = 0.0;
    std::uint64_t budget_used = 0;
};

struct RunRecord {
    std::vector<IterationRow> rows;
    WeightedSamples final_samples;
    GenModel final_model;
};

/// Next threshold: the Q-quantile of the scores, kept non-decreasing against
/// gamma_prev. Throws EmptyScores.
double update_threshold_max(std::span<const double> scores, double q,
                            std::optional<double> gamma_prev);

/// Constraint-aware variant: hard-constraint violators rank below every
/// satisfying sample (their weight is zero no matter the threshold), so the
/// quantile rank is taken over the full batch but the anchor is read within
/// the satisfying block. When the rank lands among violators, or nothing
/// satisfies, the previous gamma is reused.
double update_threshold_max(std::span<const double> scores, std::span<const char> valid,
                            double q, std::optional<double> gamma_prev);

/// Next interval half-width: the (1-Q)-quantile of |score - y0| (so the
/// retained in-interval fraction matches maximization's above-threshold
/// fraction), kept non-increasing against width_prev. Throws EmptyScores.
double update_width_spec(std::span<const double> scores, double y0, double q,
                         std::optional<double> width_prev);

/// Constraint-aware variant; violators rank as worst (largest deviation).
double update_width_spec(std::span<const double> scores, std::span<const char> valid, double y0,
                         double q, std::optional<double> width_prev);

/// Per-sample weights P(S|x): property set probability times every constraint
/// and fixed-factor probability. `means` may carry precomputed property means
/// for the samples; when absent they are evaluated here.
std::vector<double> compute_weights(const OracleSystem& system, std::span<const Sequence> samples,
                                    const TargetSet& target,
                                    std::span<const double> means = {});

double effective_sample_size(std::span<const double> weights);

/// The adaptive-sampling loop. Fits the model on init_data with unit weights
/// (or on uniformly drawn sequences when absent), anneals the target set by
/// quantile updates, reweights each batch through the oracle CDF, and refits
/// the model from scratch every iteration. Oracle mean evaluations on
/// model-drawn batches count against the budget; scoring the initial data
/// does not (it plays the role of the shared training set).
RunRecord dbas_run(const DbasConfig& config, const OracleSystem& system,
                   const std::optional<WeightedSamples>& init_data);

/// Exhaustive evaluation of the bound chain on a small design space:
/// lhs  = log sum_x p(x|candidate) P(S|x)
/// rhs  = E_{p(x|S,model_t)}[log p(x|candidate) - log p(x|model_t)] + log P(S|model_t)
/// kl   = KL(p(x|S,model_t) || p(x|S,candidate)), computed from the
///        normalized conditionals; lhs - rhs equals kl identically.
struct BoundGap {
    double lhs = 0.0;
    double rhs = 0.0;
    double kl = 0.0;
};

BoundGap exact_bound_gap(const GenModel& model_t, const GenModel& candidate,
                         const MlpOracle& oracle, const TargetSet& target);

/// One recorded epoch for old-sample reuse.
struct Epoch {
    std::vector<Sequence> samples;
    GenModel model;  // the model the samples were drawn from
};

/// All historical samples with importance-corrected weights
/// P(S|x) * p(x|current) / p(x|epoch model), ratios taken in log space.
WeightedSamples reuse_weights(std::span<const Epoch> history, const GenModel& current,
                              const TargetSet& target, const OracleSystem& system);

// trajectory CSV: iteration,gamma,mean_score,std_score,max_score,ess,budget_used
std::string run_rows_to_csv(std::span<const IterationRow> rows);
std::vector<IterationRow> run_rows_from_csv(const std::string& text);
void save_run_csv(std::span<const IterationRow> rows, const std::string& path);
std::vector<IterationRow> load_run_csv(const std::string& path);

/// Oracle means for a batch, evaluated in index order.
std::vector<double> score_batch(const MlpOracle& oracle, std::span<const Sequence> samples);

}  // namespace dbas
