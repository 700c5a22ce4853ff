#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "dbas/bench.hpp"
#include "dbas/codon.hpp"
#include "dbas/csv.hpp"

namespace py = pybind11;
using namespace dbas;

namespace {

std::vector<Sequence> sequences_from_strings(const std::vector<std::string>& strings) {
    std::vector<Sequence> out;
    out.reserve(strings.size());
    for (const std::string& s : strings) out.push_back(Sequence::from_string(s));
    return out;
}

std::vector<std::string> strings_from_sequences(const std::vector<Sequence>& seqs) {
    std::vector<std::string> out;
    out.reserve(seqs.size());
    for (const Sequence& s : seqs) out.push_back(s.to_string());
    return out;
}

WeightedSamples weighted_samples_from(const std::vector<std::string>& samples,
                                      const std::vector<double>& weights) {
    WeightedSamples data;
    data.samples = sequences_from_strings(samples);
    data.weights = weights;
    return data;
}

OracleSystem make_system(const MlpOracle& oracle,
                         const std::optional<std::string>& constraint_protein) {
    OracleSystem system{oracle, {}, {}};
    if (constraint_protein)
        system.constraints.emplace_back(Protein::from_string(*constraint_protein));
    return system;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Adaptive-sampling sequence design core (C++)";

    // ---- sequences -------------------------------------------------------
    m.def("encode_one_hot", [](const std::string& seq) {
        const OneHot x = encode_one_hot(Sequence::from_string(seq));
        std::vector<std::vector<double>> rows(x.length(), std::vector<double>(4));
        for (std::size_t r = 0; r < x.length(); ++r)
            for (std::size_t c = 0; c < 4; ++c) rows[r][c] = x.at(r, c);
        return rows;
    });
    m.def("decode_one_hot", [](const std::vector<std::vector<double>>& rows) {
        OneHot x(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != 4) throw RowNotOneHot("row must have 4 entries");
            for (std::size_t c = 0; c < 4; ++c) x.set(r, c, rows[r][c]);
        }
        return decode_one_hot(x).to_string();
    });
    m.def("translate", [](const std::string& dna) {
        return translate(Sequence::from_string(dna)).residues();
    });
    m.def("count_synonymous_str", [](const std::string& protein) {
        return count_synonymous(Protein::from_string(protein)).str();
    });

    // ---- oracles ---------------------------------------------------------
    py::class_<MlpOracle>(m, "MlpOracle")
        .def_readonly("layer_dims", &MlpOracle::layer_dims)
        .def_readwrite("noise_variance", &MlpOracle::noise_variance)
        .def_property_readonly("length", &MlpOracle::sequence_length)
        .def("mean", [](const MlpOracle& o, const std::string& seq) {
            return mlp_mean(o, encode_one_hot(Sequence::from_string(seq)));
        })
        .def("survival_prob", [](const MlpOracle& o, const std::string& seq, double gamma) {
            return survival_prob(o, encode_one_hot(Sequence::from_string(seq)), gamma);
        })
        .def("interval_prob",
             [](const MlpOracle& o, const std::string& seq, double y0, double width) {
                 return interval_prob(o, encode_one_hot(Sequence::from_string(seq)), y0, width);
             })
        .def("to_json", &oracle_to_json);
    m.def("make_random_oracle", &make_random_oracle, py::arg("length"), py::arg("hidden_dims"),
          py::arg("seed"));
    m.def("oracle_from_json", &oracle_from_json);
    m.def("save_oracle", &save_oracle);
    m.def("load_oracle", &load_oracle);
    m.def("fit_sigma_ml",
          [](const std::vector<double>& residuals) { return fit_sigma_ml(residuals); });
    m.def("product_prob", [](const std::vector<double>& probs) { return product_prob(probs); });

    // ---- generative models -------------------------------------------------
    py::class_<PwmModel>(m, "PwmModel")
        .def_property_readonly("probs",
                               [](const PwmModel& p) {
                                   std::vector<std::vector<double>> rows;
                                   for (const auto& row : p.probs)
                                       rows.emplace_back(row.begin(), row.end());
                                   return rows;
                               })
        .def_property_readonly("length", &PwmModel::length);
    py::class_<MixtureModel>(m, "MixtureModel")
        .def_readonly("mix_weights", &MixtureModel::mix_weights)
        .def_readonly("components", &MixtureModel::components)
        .def_property_readonly("length", &MixtureModel::length);

    m.def("fit_pwm", [](const std::vector<std::string>& samples,
                        const std::vector<double>& weights, double alpha) {
        return fit_pwm(weighted_samples_from(samples, weights), alpha);
    });
    m.def("fit_mixture_em",
          [](const std::vector<std::string>& samples, const std::vector<double>& weights,
             std::size_t k, double alpha, int iters, std::uint64_t seed) {
              return fit_mixture_em(weighted_samples_from(samples, weights), k, alpha, iters,
                                    seed);
          });
    m.def("sample_pwm", [](const PwmModel& model, std::size_t count, std::uint64_t seed) {
        return strings_from_sequences(sample(GenModel{model}, count, seed));
    });
    m.def("sample_mixture", [](const MixtureModel& model, std::size_t count, std::uint64_t seed) {
        return strings_from_sequences(sample(GenModel{model}, count, seed));
    });
    m.def("log_likelihood_pwm", [](const PwmModel& model, const std::string& seq) {
        return log_likelihood(model, Sequence::from_string(seq));
    });
    m.def("log_likelihood_mixture", [](const MixtureModel& model, const std::string& seq) {
        return log_likelihood(model, Sequence::from_string(seq));
    });

    // ---- engine ------------------------------------------------------------
    py::class_<IterationRow>(m, "IterationRow")
        .def_readonly("iteration", &IterationRow::iteration)
        .def_readonly("gamma", &IterationRow::gamma)
        .def_readonly("mean_score", &IterationRow::mean_score)
        .def_readonly("std_score", &IterationRow::std_score)
        .def_readonly("max_score", &IterationRow::max_score)
        .def_readonly("ess", &IterationRow::ess)
        .def_readonly("budget_used", &IterationRow::budget_used);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("rows", &RunRecord::rows)
        .def_property_readonly("final_samples",
                               [](const RunRecord& r) {
                                   return strings_from_sequences(r.final_samples.samples);
                               })
        .def_property_readonly("final_weights",
                               [](const RunRecord& r) { return r.final_samples.weights; })
        .def_property_readonly("final_model_json",
                               [](const RunRecord& r) { return model_to_json(r.final_model); });

    m.def("update_threshold_max",
          [](const std::vector<double>& scores, double q, std::optional<double> prev) {
              return update_threshold_max(scores, q, prev);
          });
    m.def("update_width_spec", [](const std::vector<double>& scores, double y0, double q,
                                  std::optional<double> prev) {
        return update_width_spec(scores, y0, q, prev);
    });
    m.def("effective_sample_size",
          [](const std::vector<double>& w) { return effective_sample_size(w); });

    m.def(
        "dbas_run",
        [](const MlpOracle& oracle, const std::string& mode, double target_value, double quantile,
           std::size_t samples_per_iter, std::uint64_t budget, double smoothing,
           std::uint64_t seed, const std::optional<std::vector<std::string>>& init,
           const std::optional<std::string>& constraint_protein, bool reuse_old) {
            DbasConfig config;
            if (mode == "maximize")
                config.mode = DbasConfig::Mode::Maximize;
            else if (mode == "specify")
                config.mode = DbasConfig::Mode::Specify;
            else
                throw InvalidArgument("mode must be 'maximize' or 'specify'");
            config.target_value = target_value;
            config.quantile = quantile;
            config.samples_per_iter = samples_per_iter;
            config.budget = budget;
            config.model.smoothing = smoothing;
            config.seed = seed;
            config.reuse_old = reuse_old;
            std::optional<WeightedSamples> init_data;
            if (init)
                init_data = WeightedSamples::with_unit_weights(sequences_from_strings(*init));
            return dbas_run(config, make_system(oracle, constraint_protein), init_data);
        },
        py::arg("oracle"), py::arg("mode") = "maximize", py::arg("target_value") = 0.0,
        py::arg("quantile") = 0.9, py::arg("samples_per_iter") = 1000, py::arg("budget") = 10000,
        py::arg("smoothing") = 0.1, py::arg("seed") = 0, py::arg("init") = std::nullopt,
        py::arg("constraint_protein") = std::nullopt, py::arg("reuse_old") = false);

    // ---- baselines and bench ------------------------------------------------
    m.def("random_design",
          [](std::size_t length, std::uint64_t budget, std::size_t chunk, const MlpOracle& oracle,
             std::uint64_t seed) {
              const RandomDesignResult r = random_design(length, budget, chunk, oracle, seed);
              return py::make_tuple(r.best.to_string(), r.best_score, r.rows);
          });
    m.def("marginal_design",
          [](const std::vector<std::string>& sequences, const std::vector<double>& labels) {
              LabeledTrainingSet train{sequences_from_strings(sequences), labels};
              return marginal_design(train).to_string();
          });
    m.def("fraction_of_possible_gain", &fraction_of_possible_gain);
    m.def("enumerate_scores", [](const MlpOracle& oracle) {
        const EnumerationTable table = enumerate_all(oracle.sequence_length(), oracle);
        return py::make_tuple(table.scores, table.argmax_sequence().to_string(), table.max_score);
    });
    m.def("run_experiment_json", [](const std::string& config_json, const std::string& out_dir) {
        const ExperimentResult result =
            run_experiment(experiment_config_from_json(config_json), out_dir);
        return summary_to_csv(result.summary);
    });

    py::register_exception<Error>(m, "DbasError", PyExc_RuntimeError);
}
