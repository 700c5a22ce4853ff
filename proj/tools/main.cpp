#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbas/bench.hpp"
#include "dbas/csv.hpp"

namespace {

void cmd_make_oracle(std::size_t length, const std::vector<std::size_t>& hidden,
                     double noise_var, std::uint64_t seed, const std::string& out) {
    dbas::MlpOracle oracle = dbas::make_random_oracle(length, hidden, seed);
    if (noise_var < 0.0) throw dbas::InvalidArgument("--noise-var must be >= 0");
    oracle.noise_variance = noise_var;
    dbas::save_oracle(oracle, out);
}

void cmd_enumerate(const std::string& oracle_path, const std::string& out) {
    const dbas::MlpOracle oracle = dbas::load_oracle(oracle_path);
    const std::size_t length = oracle.sequence_length();
    const dbas::EnumerationTable table = dbas::enumerate_all(length, oracle);
    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw dbas::IoError("cannot open for writing: " + out);
    csv << "sequence,score\n";
    for (std::uint64_t idx = 0; idx < table.scores.size(); ++idx)
        csv << dbas::sequence_from_index(idx, length).to_string() << ','
            << dbas::format_double(table.scores[idx]) << '\n';
    if (!csv) throw dbas::IoError("write failed: " + out);
}

dbas::ExperimentConfig load_config(const std::string& path) {
    return dbas::experiment_config_from_json(dbas::read_text_file(path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive-sampling sequence design: oracles, baselines and experiments"};
    app.require_subcommand(1);

    // make-oracle
    auto* make_oracle = app.add_subcommand("make-oracle", "Create a random MLP oracle file");
    std::size_t length = 8;
    std::vector<std::size_t> hidden = {50, 50};
    double noise_var = 0.0;
    std::uint64_t seed = 0;
    std::string out_path = "oracle.json";
    make_oracle->add_option("--length", length, "Sequence length L")->required();
    make_oracle->add_option("--hidden", hidden, "Hidden layer widths")->delimiter(',');
    make_oracle->add_option("--noise-var", noise_var, "Gaussian noise variance (0 = noiseless)");
    make_oracle->add_option("--seed", seed, "RNG seed");
    make_oracle->add_option("--out", out_path, "Output JSON path")->required();

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Score every sequence of a small space");
    std::string oracle_path;
    std::string table_path = "table.csv";
    enumerate->add_option("--oracle", oracle_path, "Oracle JSON path")->required();
    enumerate->add_option("--out", table_path, "Output CSV path (sequence,score)")->required();

    // run
    auto* run = app.add_subcommand("run", "Run an experiment from a config file");
    std::string run_config;
    std::string run_dir;
    run->add_option("--config", run_config, "Experiment config JSON")->required();
    run->add_option("--out-dir", run_dir, "Output directory")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "Rebuild the summary from emitted CSVs");
    std::string cmp_dir;
    std::string cmp_summary;
    compare->add_option("--out-dir", cmp_dir, "Directory written by `run`")->required();
    compare->add_option("--summary", cmp_summary, "Summary CSV to write")->required();

    // spec-run
    auto* spec_run = app.add_subcommand("spec-run", "Run a specification experiment");
    std::string spec_config;
    std::string spec_dir;
    spec_run->add_option("--config", spec_config, "Experiment config JSON")->required();
    spec_run->add_option("--out-dir", spec_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (make_oracle->parsed()) {
            cmd_make_oracle(length, hidden, noise_var, seed, out_path);
        } else if (enumerate->parsed()) {
            cmd_enumerate(oracle_path, table_path);
        } else if (run->parsed()) {
            dbas::run_experiment(load_config(run_config), run_dir);
        } else if (compare->parsed()) {
            dbas::compare_outputs(cmp_dir, cmp_summary);
        } else if (spec_run->parsed()) {
            const dbas::ExperimentConfig cfg = load_config(spec_config);
            if (cfg.kind != dbas::ExperimentConfig::Kind::Specification)
                throw dbas::InvalidArgument("spec-run requires \"kind\": \"specification\"");
            dbas::run_experiment(cfg, spec_dir);
        }
    } catch (const dbas::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
