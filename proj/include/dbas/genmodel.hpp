#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dbas/seq.hpp"

namespace dbas {

/// Training data for the weighted maximum-likelihood update: samples plus
/// non-negative weights (used unnormalized).
struct WeightedSamples {
    std::vector<Sequence> samples;
    std::vector<double> weights;

    static WeightedSamples with_unit_weights(std::vector<Sequence> samples);
};

/// Site-wise categorical model: an L x 4 row-stochastic matrix.
struct PwmModel {
    std::vector<std::array<double, kAlphabetSize>> probs;
    double smoothing = 0.0;  // pseudo-count applied at fit time

    std::size_t length() const { return probs.size(); }
    void validate() const;
};

/// Mixture of PWMs with simplex mixing weights, trained by weighted EM.
struct MixtureModel {
    std::vector<double> mix_weights;
    std::vector<PwmModel> components;
    int em_iters = 0;

    std::size_t length() const { return components.front().length(); }
    void validate() const;
};

using GenModel = std::variant<PwmModel, MixtureModel>;

std::size_t model_length(const GenModel& model);

/// Closed-form argmax of the weighted ML objective for the PWM family:
/// probs[i][c] = (alpha + sum_j w_j [x_j[i]=c]) / (4*alpha + sum_j w_j),
/// accumulated in sample order. Throws AllWeightsZero / RaggedLengths.
PwmModel fit_pwm(const WeightedSamples& data, double alpha);

/// Weighted EM for a K-component PWM mixture. Components are initialized from
/// K disjoint chunks of a weighted random ordering of the data (empty or
/// duplicated chunks fall back to the global PWM fit), then refined with
/// `iters` E/M sweeps where the M-step performs responsibility-times-weight
/// PWM fits. Deterministic given the seed.
MixtureModel fit_mixture_em(const WeightedSamples& data, std::size_t k, double alpha, int iters,
                            std::uint64_t seed);

std::vector<Sequence> sample(const PwmModel& model, std::size_t count, Rng& rng);
std::vector<Sequence> sample(const MixtureModel& model, std::size_t count, Rng& rng);
std::vector<Sequence> sample(const GenModel& model, std::size_t count, Rng& rng);
std::vector<Sequence> sample(const GenModel& model, std::size_t count, std::uint64_t seed);

double log_likelihood(const PwmModel& model, const Sequence& x);
double log_likelihood(const MixtureModel& model, const Sequence& x);  // log-sum-exp
double log_likelihood(const GenModel& model, const Sequence& x);

/// Sum of w_i * log p(x_i | model); zero-weight samples contribute zero even
/// when their likelihood is -inf.
double weighted_log_likelihood(const GenModel& model, const WeightedSamples& data);

/// Generative family + hyperparameters, as carried by run configurations.
struct ModelSpec {
    enum class Family { Pwm, Mixture };

    Family family = Family::Pwm;
    double smoothing = 0.1;
    std::size_t components = 2;  // Mixture only
    int em_iters = 20;           // Mixture only
};

GenModel fit_model(const ModelSpec& spec, const WeightedSamples& data, std::uint64_t seed);

// JSON snapshot: {kind:"pwm"|"mixture", length, probs | mix_weights+components}.
std::string model_to_json(const GenModel& model);
GenModel model_from_json(const std::string& text);
void save_model(const GenModel& model, const std::string& path);
GenModel load_model(const std::string& path);

}  // namespace dbas
