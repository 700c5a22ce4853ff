#include "dbas/genmodel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "dbas/math.hpp"

namespace dbas {

namespace {

constexpr double kSimplexTol = 1e-12;

void check_data(const WeightedSamples& data) {
    if (data.samples.empty()) throw AllWeightsZero("no samples to fit");
    if (data.weights.size() != data.samples.size())
        throw InvalidArgument("weights/samples size mismatch");
    const std::size_t length = data.samples.front().length();
    for (const Sequence& s : data.samples)
        if (s.length() != length) throw RaggedLengths("samples have unequal lengths");
    for (double w : data.weights)
        if (!(w >= 0.0)) throw InvalidArgument("weights must be non-negative");
}

std::uint8_t draw_categorical(const std::array<double, kAlphabetSize>& p, Rng& rng) {
    const double u = uniform_double(rng);
    double cum = 0.0;
    for (std::size_t c = 0; c + 1 < kAlphabetSize; ++c) {
        cum += p[c];
        if (u < cum) return static_cast<std::uint8_t>(c);
    }
    return kAlphabetSize - 1;
}

// Weighted random ordering (Efraimidis-Spirakis keys log(u)/w); zero-weight
// items sort last. Deterministic given the rng state.
std::vector<std::size_t> weighted_order(std::span<const double> weights, Rng& rng) {
    const std::size_t n = weights.size();
    std::vector<double> key(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = uniform_double(rng);
        key[i] = (weights[i] > 0.0) ? std::log(u) / weights[i]
                                    : -std::numeric_limits<double>::infinity();
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (key[a] != key[b]) return key[a] > key[b];
        return a < b;
    });
    return order;
}

PwmModel fit_pwm_span(std::span<const Sequence* const> samples, std::span<const double> weights,
                      std::size_t length, double alpha) {
    std::vector<std::array<double, kAlphabetSize>> counts(length, {0.0, 0.0, 0.0, 0.0});
    double total = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const double w = weights[j];
        const Sequence& s = *samples[j];
        for (std::size_t pos = 0; pos < length; ++pos) counts[pos][s[pos]] += w;
        total += w;
    }
    if (total <= 0.0) throw AllWeightsZero("all weights are zero");
    PwmModel model;
    model.smoothing = alpha;
    model.probs.resize(length);
    const double denom = kAlphabetSize * alpha + total;
    for (std::size_t pos = 0; pos < length; ++pos)
        for (std::size_t c = 0; c < kAlphabetSize; ++c)
            model.probs[pos][c] = (alpha + counts[pos][c]) / denom;
    return model;
}

}  // namespace

WeightedSamples WeightedSamples::with_unit_weights(std::vector<Sequence> samples) {
    WeightedSamples out;
    out.weights.assign(samples.size(), 1.0);
    out.samples = std::move(samples);
    return out;
}

void PwmModel::validate() const {
    for (const auto& row : probs) {
        double sum = 0.0;
        for (double p : row) {
            if (!(p >= 0.0)) throw InvalidArgument("pwm probability negative");
            sum += p;
        }
        if (std::fabs(sum - 1.0) > kSimplexTol) throw InvalidArgument("pwm row does not sum to 1");
    }
}

void MixtureModel::validate() const {
    if (components.empty() || mix_weights.size() != components.size())
        throw InvalidArgument("mixture size mismatch");
    double sum = 0.0;
    for (double w : mix_weights) {
        if (!(w >= 0.0)) throw InvalidArgument("mixture weight negative");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > kSimplexTol) throw InvalidArgument("mixture weights do not sum to 1");
    const std::size_t length = components.front().length();
    for (const PwmModel& c : components) {
        if (c.length() != length) throw InvalidArgument("mixture components of unequal length");
        c.validate();
    }
}

std::size_t model_length(const GenModel& model) {
    return std::visit([](const auto& m) { return m.length(); }, model);
}

PwmModel fit_pwm(const WeightedSamples& data, double alpha) {
    if (alpha < 0.0) throw InvalidArgument("smoothing must be >= 0");
    check_data(data);
    const std::size_t length = data.samples.front().length();
    std::vector<const Sequence*> ptrs(data.samples.size());
    for (std::size_t i = 0; i < ptrs.size(); ++i) ptrs[i] = &data.samples[i];
    return fit_pwm_span(ptrs, data.weights, length, alpha);
}

MixtureModel fit_mixture_em(const WeightedSamples& data, std::size_t k, double alpha, int iters,
                            std::uint64_t seed) {
    if (k < 1) throw InvalidArgument("mixture needs k >= 1");
    if (iters < 0) throw InvalidArgument("iteration count must be >= 0");
    if (alpha < 0.0) throw InvalidArgument("smoothing must be >= 0");
    check_data(data);
    const std::size_t n = data.samples.size();
    const std::size_t length = data.samples.front().length();
    const PwmModel global = fit_pwm(data, alpha);

    // init: K near-equal chunks of a weighted random ordering
    Rng rng = make_rng(seed);
    const std::vector<std::size_t> order = weighted_order(data.weights, rng);
    MixtureModel model;
    model.em_iters = iters;
    std::vector<double> raw_mix(k, 0.0);
    double total_weight = 0.0;
    for (double w : data.weights) total_weight += w;
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t lo = j * n / k;
        const std::size_t hi = (j + 1) * n / k;
        std::vector<const Sequence*> chunk;
        std::vector<double> chunk_w;
        double chunk_total = 0.0;
        for (std::size_t idx = lo; idx < hi; ++idx) {
            chunk.push_back(&data.samples[order[idx]]);
            chunk_w.push_back(data.weights[order[idx]]);
            chunk_total += data.weights[order[idx]];
        }
        if (chunk.empty() || chunk_total <= 0.0) {
            model.components.push_back(global);
            raw_mix[j] = total_weight / static_cast<double>(k);
        } else {
            model.components.push_back(fit_pwm_span(chunk, chunk_w, length, alpha));
            raw_mix[j] = chunk_total;
        }
    }
    // duplicated starting components collapse capacity; re-seed from global
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t prev = 0; prev < j; ++prev)
            if (model.components[j].probs == model.components[prev].probs) {
                model.components[j] = global;
                break;
            }
    double mix_sum = 0.0;
    for (double w : raw_mix) mix_sum += w;
    model.mix_weights.resize(k);
    for (std::size_t j = 0; j < k; ++j) model.mix_weights[j] = raw_mix[j] / mix_sum;

    // EM sweeps
    std::vector<double> log_resp(k);
    std::vector<std::vector<std::array<double, kAlphabetSize>>> counts(
        k, std::vector<std::array<double, kAlphabetSize>>(length, {0.0, 0.0, 0.0, 0.0}));
    std::vector<double> comp_total(k);
    for (int it = 0; it < iters; ++it) {
        for (std::size_t j = 0; j < k; ++j) {
            comp_total[j] = 0.0;
            for (auto& row : counts[j]) row = {0.0, 0.0, 0.0, 0.0};
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double w = data.weights[i];
            if (w <= 0.0) continue;
            for (std::size_t j = 0; j < k; ++j)
                log_resp[j] = std::log(model.mix_weights[j]) +
                              log_likelihood(model.components[j], data.samples[i]);
            const double lse = log_sum_exp(log_resp);
            for (std::size_t j = 0; j < k; ++j) {
                const double r = std::exp(log_resp[j] - lse);
                const double wr = w * r;
                comp_total[j] += wr;
                const Sequence& s = data.samples[i];
                for (std::size_t pos = 0; pos < length; ++pos) counts[j][pos][s[pos]] += wr;
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (comp_total[j] > 0.0) {
                const double denom = kAlphabetSize * alpha + comp_total[j];
                for (std::size_t pos = 0; pos < length; ++pos)
                    for (std::size_t c = 0; c < kAlphabetSize; ++c)
                        model.components[j].probs[pos][c] = (alpha + counts[j][pos][c]) / denom;
            }
            // a component with zero responsibility mass keeps its parameters
            model.mix_weights[j] = comp_total[j] / total_weight;
        }
        // renormalize against rounding drift
        double s = 0.0;
        for (double w : model.mix_weights) s += w;
        for (double& w : model.mix_weights) w /= s;
    }
    return model;
}

std::vector<Sequence> sample(const PwmModel& model, std::size_t count, Rng& rng) {
    std::vector<Sequence> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::uint8_t> symbols(model.length());
        for (std::size_t pos = 0; pos < model.length(); ++pos)
            symbols[pos] = draw_categorical(model.probs[pos], rng);
        out.emplace_back(std::move(symbols));
    }
    return out;
}

std::vector<Sequence> sample(const MixtureModel& model, std::size_t count, Rng& rng) {
    std::vector<Sequence> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        // component first, then positions
        const double u = uniform_double(rng);
        std::size_t comp = model.components.size() - 1;
        double cum = 0.0;
        for (std::size_t j = 0; j + 1 < model.components.size(); ++j) {
            cum += model.mix_weights[j];
            if (u < cum) {
                comp = j;
                break;
            }
        }
        const PwmModel& pwm = model.components[comp];
        std::vector<std::uint8_t> symbols(pwm.length());
        for (std::size_t pos = 0; pos < pwm.length(); ++pos)
            symbols[pos] = draw_categorical(pwm.probs[pos], rng);
        out.emplace_back(std::move(symbols));
    }
    return out;
}

std::vector<Sequence> sample(const GenModel& model, std::size_t count, Rng& rng) {
    return std::visit([&](const auto& m) { return sample(m, count, rng); }, model);
}

std::vector<Sequence> sample(const GenModel& model, std::size_t count, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return sample(model, count, rng);
}

double log_likelihood(const PwmModel& model, const Sequence& x) {
    if (x.length() != model.length()) throw LengthMismatch("sequence/model length mismatch");
    double ll = 0.0;
    for (std::size_t pos = 0; pos < model.length(); ++pos) ll += std::log(model.probs[pos][x[pos]]);
    return ll;
}

double log_likelihood(const MixtureModel& model, const Sequence& x) {
    std::vector<double> terms(model.components.size());
    for (std::size_t j = 0; j < model.components.size(); ++j)
        terms[j] = std::log(model.mix_weights[j]) + log_likelihood(model.components[j], x);
    return log_sum_exp(terms);
}

double log_likelihood(const GenModel& model, const Sequence& x) {
    return std::visit([&](const auto& m) { return log_likelihood(m, x); }, model);
}

double weighted_log_likelihood(const GenModel& model, const WeightedSamples& data) {
    double acc = 0.0;
    for (std::size_t i = 0; i < data.samples.size(); ++i)
        if (data.weights[i] > 0.0) acc += data.weights[i] * log_likelihood(model, data.samples[i]);
    return acc;
}

GenModel fit_model(const ModelSpec& spec, const WeightedSamples& data, std::uint64_t seed) {
    if (spec.family == ModelSpec::Family::Pwm) return fit_pwm(data, spec.smoothing);
    return fit_mixture_em(data, spec.components, spec.smoothing, spec.em_iters, seed);
}

namespace {

nlohmann::json pwm_probs_json(const PwmModel& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : m.probs) rows.push_back(std::vector<double>(row.begin(), row.end()));
    return rows;
}

PwmModel pwm_from_probs_json(const nlohmann::json& rows) {
    PwmModel m;
    for (const auto& row : rows) {
        const auto v = row.get<std::vector<double>>();
        if (v.size() != kAlphabetSize) throw IoError("pwm row must have 4 entries");
        m.probs.push_back({v[0], v[1], v[2], v[3]});
    }
    m.validate();
    return m;
}

}  // namespace

std::string model_to_json(const GenModel& model) {
    nlohmann::json j;
    if (const auto* pwm = std::get_if<PwmModel>(&model)) {
        pwm->validate();
        j["kind"] = "pwm";
        j["length"] = pwm->length();
        j["probs"] = pwm_probs_json(*pwm);
    } else {
        const auto& mix = std::get<MixtureModel>(model);
        mix.validate();
        j["kind"] = "mixture";
        j["length"] = mix.length();
        j["mix_weights"] = mix.mix_weights;
        nlohmann::json comps = nlohmann::json::array();
        for (const PwmModel& c : mix.components) comps.push_back(pwm_probs_json(c));
        j["components"] = comps;
    }
    return j.dump(2);
}

GenModel model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("model JSON parse error: ") + e.what());
    }
    try {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "pwm") return pwm_from_probs_json(j.at("probs"));
        if (kind == "mixture") {
            MixtureModel mix;
            mix.mix_weights = j.at("mix_weights").get<std::vector<double>>();
            for (const auto& comp : j.at("components")) mix.components.push_back(pwm_from_probs_json(comp));
            mix.validate();
            return mix;
        }
        throw IoError("unknown model kind: " + kind);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("model JSON field error: ") + e.what());
    }
}

void save_model(const GenModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << model_to_json(model) << '\n';
}

GenModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

}  // namespace dbas
