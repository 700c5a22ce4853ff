#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dbas/seq.hpp"

namespace dbas {

/// Stochastic scalar property predictor: an MLP mean function f(x) plus
/// homoscedastic Gaussian noise. noise_variance == 0 encodes the noiseless
/// (Dirac) case, in which set probabilities collapse to indicators.
struct MlpOracle {
    enum class Activation { Relu };

    std::vector<std::size_t> layer_dims;        // starts at 4L, ends at 1
    std::vector<std::vector<double>> weights;   // per layer, row-major n_out x n_in
    std::vector<std::vector<double>> biases;    // per layer, length n_out
    Activation hidden_activation = Activation::Relu;
    double noise_variance = 0.0;

    std::size_t sequence_length() const { return layer_dims.front() / kAlphabetSize; }
    bool noiseless() const { return noise_variance == 0.0; }

    /// Shape-chain validation; throws ShapeMismatch.
    void validate() const;

    /// Raw forward pass on an already-flattened input vector.
    double forward(std::span<const double> input) const;
};

/// Glorot-uniform random oracle: weights uniform on +-sqrt(6/(fan_in+fan_out)),
/// zero biases, noiseless. Deterministic given the seed.
MlpOracle make_random_oracle(std::size_t length, const std::vector<std::size_t>& hidden_dims,
                             std::uint64_t seed);

/// Expected property value f(x).
double mlp_mean(const MlpOracle& oracle, const OneHot& x);

/// The property desideratum: either {y >= gamma} or [y0 - gamma, y0 + gamma].
struct TargetSet {
    enum class Kind { HalfLine, Interval };

    Kind kind = Kind::HalfLine;
    double gamma = 0.0;  // threshold (HalfLine) or half-width (Interval)
    double y0 = 0.0;     // interval center, Interval only

    static TargetSet half_line(double gamma) { return {Kind::HalfLine, gamma, 0.0}; }
    static TargetSet interval(double y0, double half_width);
};

// Set probabilities given a precomputed mean. These are the single source of
// truth for the CDF arithmetic; the OneHot overloads just compose them with
// mlp_mean.
double survival_from_mean(double mean, double noise_variance, double gamma);
double interval_from_mean(double mean, double noise_variance, double y0, double half_width);
double set_prob_from_mean(double mean, double noise_variance, const TargetSet& target);

double survival_prob(const MlpOracle& oracle, const OneHot& x, double gamma);
double interval_prob(const MlpOracle& oracle, const OneHot& x, double y0, double half_width);
double set_prob(const MlpOracle& oracle, const OneHot& x, const TargetSet& target);

/// Hard design constraint: the sequence must translate to the target protein.
struct ConstraintOracle {
    Protein target;

    explicit ConstraintOracle(Protein protein);
};

/// 1 if translate(x) equals the target, else 0. Throws LengthMismatch.
double constraint_prob(const ConstraintOracle& c, const Sequence& x);

/// Product of per-property set probabilities (conditionally independent
/// properties); 1 for an empty list.
double product_prob(std::span<const double> probs);

/// Maximum-likelihood variance of zero-mean Gaussian residuals.
double fit_sigma_ml(std::span<const double> residuals);

// JSON snapshot: {length, layer_dims, weights, biases, activation,
// noise_variance}, reals in shortest round-trip decimal form.
std::string oracle_to_json(const MlpOracle& oracle);
MlpOracle oracle_from_json(const std::string& text);
void save_oracle(const MlpOracle& oracle, const std::string& path);
MlpOracle load_oracle(const std::string& path);

}  // namespace dbas
