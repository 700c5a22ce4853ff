#include "dbas/oracle.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dbas/math.hpp"
#include "dbas/rng.hpp"

namespace dbas {

void MlpOracle::validate() const {
    if (layer_dims.size() < 2) throw ShapeMismatch("need at least input and output dims");
    if (layer_dims.back() != 1) throw ShapeMismatch("output dim must be 1");
    if (layer_dims.front() == 0 || layer_dims.front() % kAlphabetSize != 0)
        throw ShapeMismatch("input dim must be a positive multiple of 4");
    const std::size_t n_layers = layer_dims.size() - 1;
    if (weights.size() != n_layers || biases.size() != n_layers)
        throw ShapeMismatch("layer count mismatch");
    for (std::size_t l = 0; l < n_layers; ++l) {
        if (weights[l].size() != layer_dims[l] * layer_dims[l + 1])
            throw ShapeMismatch("weight matrix shape mismatch");
        if (biases[l].size() != layer_dims[l + 1])
            throw ShapeMismatch("bias vector shape mismatch");
    }
    if (noise_variance < 0.0) throw InvalidArgument("noise variance must be >= 0");
}

double MlpOracle::forward(std::span<const double> input) const {
    if (input.size() != layer_dims.front()) throw ShapeMismatch("input size mismatch");
    std::vector<double> act(input.begin(), input.end());
    std::vector<double> next;
    const std::size_t n_layers = layer_dims.size() - 1;
    for (std::size_t l = 0; l < n_layers; ++l) {
        const std::size_t n_in = layer_dims[l];
        const std::size_t n_out = layer_dims[l + 1];
        next.assign(n_out, 0.0);
        const double* w = weights[l].data();
        for (std::size_t o = 0; o < n_out; ++o) {
            double s = biases[l][o];
            const double* row = w + o * n_in;
            for (std::size_t i = 0; i < n_in; ++i) s += row[i] * act[i];
            if (l + 1 < n_layers) s = (s > 0.0) ? s : 0.0;  // rectifier on hidden layers
            next[o] = s;
        }
        act.swap(next);
    }
    return act[0];
}

MlpOracle make_random_oracle(std::size_t length, const std::vector<std::size_t>& hidden_dims,
                             std::uint64_t seed) {
    if (hidden_dims.empty()) throw InvalidArgument("hidden_dims must be non-empty");
    MlpOracle oracle;
    oracle.layer_dims.push_back(length * kAlphabetSize);
    for (std::size_t h : hidden_dims) oracle.layer_dims.push_back(h);
    oracle.layer_dims.push_back(1);

    Rng rng = make_rng(seed);
    for (std::size_t l = 0; l + 1 < oracle.layer_dims.size(); ++l) {
        const std::size_t fan_in = oracle.layer_dims[l];
        const std::size_t fan_out = oracle.layer_dims[l + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        std::vector<double> w(fan_in * fan_out);
        for (double& v : w) v = (2.0 * uniform_double(rng) - 1.0) * limit;
        oracle.weights.push_back(std::move(w));
        oracle.biases.emplace_back(fan_out, 0.0);
    }
    oracle.noise_variance = 0.0;
    oracle.validate();
    return oracle;
}

double mlp_mean(const MlpOracle& oracle, const OneHot& x) {
    if (x.length() != oracle.sequence_length()) throw ShapeMismatch("sequence length mismatch");
    return oracle.forward(x.flat());
}

TargetSet TargetSet::interval(double y0, double half_width) {
    if (half_width < 0.0) throw NegativeWidth("interval half-width must be >= 0");
    return {Kind::Interval, half_width, y0};
}

double survival_from_mean(double mean, double noise_variance, double gamma) {
    if (noise_variance == 0.0) return (mean >= gamma) ? 1.0 : 0.0;
    return normal_sf((gamma - mean) / std::sqrt(noise_variance));
}

double interval_from_mean(double mean, double noise_variance, double y0, double half_width) {
    if (half_width < 0.0) throw NegativeWidth("interval half-width must be >= 0");
    if (noise_variance == 0.0) return (std::fabs(mean - y0) <= half_width) ? 1.0 : 0.0;
    const double sigma = std::sqrt(noise_variance);
    const double hi = (y0 + half_width - mean) / sigma;
    const double lo = (y0 - half_width - mean) / sigma;
    // survival-function form when the interval sits in the upper tail, where
    // the CDF difference would cancel to zero
    if (lo > 0.0) return std::max(normal_sf(lo) - normal_sf(hi), 0.0);
    return std::max(normal_cdf(hi) - normal_cdf(lo), 0.0);
}

double set_prob_from_mean(double mean, double noise_variance, const TargetSet& target) {
    return (target.kind == TargetSet::Kind::HalfLine)
               ? survival_from_mean(mean, noise_variance, target.gamma)
               : interval_from_mean(mean, noise_variance, target.y0, target.gamma);
}

double survival_prob(const MlpOracle& oracle, const OneHot& x, double gamma) {
    return survival_from_mean(mlp_mean(oracle, x), oracle.noise_variance, gamma);
}

double interval_prob(const MlpOracle& oracle, const OneHot& x, double y0, double half_width) {
    return interval_from_mean(mlp_mean(oracle, x), oracle.noise_variance, y0, half_width);
}

double set_prob(const MlpOracle& oracle, const OneHot& x, const TargetSet& target) {
    return set_prob_from_mean(mlp_mean(oracle, x), oracle.noise_variance, target);
}

ConstraintOracle::ConstraintOracle(Protein protein) : target(std::move(protein)) {
    if (target.has_stop()) throw InternalStop("constraint target contains a stop");
}

double constraint_prob(const ConstraintOracle& c, const Sequence& x) {
    if (x.length() != 3 * c.target.length())
        throw LengthMismatch("sequence length must be 3x the target protein length");
    return (translate(x) == c.target) ? 1.0 : 0.0;
}

double product_prob(std::span<const double> probs) {
    double p = 1.0;
    for (double v : probs) {
        if (v < 0.0 || v > 1.0) throw InvalidArgument("probability outside [0,1]");
        p *= v;
    }
    return p;
}

double fit_sigma_ml(std::span<const double> residuals) {
    if (residuals.empty()) throw EmptyInput("fit_sigma_ml: empty residual list");
    double ss = 0.0;
    for (double r : residuals) ss += r * r;
    return ss / static_cast<double>(residuals.size());
}

std::string oracle_to_json(const MlpOracle& oracle) {
    oracle.validate();
    nlohmann::json j;
    j["length"] = oracle.sequence_length();
    j["layer_dims"] = oracle.layer_dims;
    j["weights"] = oracle.weights;
    j["biases"] = oracle.biases;
    j["activation"] = "relu";
    j["noise_variance"] = oracle.noise_variance;
    return j.dump(2);
}

MlpOracle oracle_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("oracle JSON parse error: ") + e.what());
    }
    MlpOracle oracle;
    try {
        oracle.layer_dims = j.at("layer_dims").get<std::vector<std::size_t>>();
        oracle.weights = j.at("weights").get<std::vector<std::vector<double>>>();
        oracle.biases = j.at("biases").get<std::vector<std::vector<double>>>();
        oracle.noise_variance = j.at("noise_variance").get<double>();
        if (j.at("activation").get<std::string>() != "relu")
            throw IoError("unsupported activation (only \"relu\")");
        if (j.at("length").get<std::size_t>() * kAlphabetSize != oracle.layer_dims.front())
            throw ShapeMismatch("length field inconsistent with layer_dims");
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("oracle JSON field error: ") + e.what());
    }
    oracle.validate();
    return oracle;
}

void save_oracle(const MlpOracle& oracle, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << oracle_to_json(oracle) << '\n';
}

MlpOracle load_oracle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return oracle_from_json(buf.str());
}

}  // namespace dbas
