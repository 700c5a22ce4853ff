#pragma once

#include <cstdint>
#include <vector>

#include "dbas/engine.hpp"

namespace dbas {

/// Sequences paired with measured property values; the seed data the Marginal
/// method and threshold selection consume.
struct LabeledTrainingSet {
    std::vector<Sequence> sequences;
    std::vector<double> labels;

    void validate() const;  // equal lengths, matching label count
    double max_label() const;
};

struct RandomDesignResult {
    Sequence best;
    double best_score = 0.0;
    std::vector<IterationRow> rows;  // one row per chunk of `chunk` draws
};

/// Uniform random search: `budget` i.i.d. uniform sequences scored by the
/// oracle, with running statistics recorded every `chunk` draws so the
/// trajectory lines up with the iterative methods.
RandomDesignResult random_design(std::size_t length, std::uint64_t budget, std::size_t chunk,
                                 const MlpOracle& oracle, std::uint64_t seed);

/// Per-position argmax of the mean label over training sequences carrying
/// that symbol; ties and uncovered cells resolve to the lowest symbol index.
Sequence marginal_design(const LabeledTrainingSet& train);

/// Codon-space variant for constrained problems: each codon position picks,
/// among the target residue's synonymous codons, the one with the highest
/// mean label (ties/uncovered -> lowest codon index); the result always
/// translates to the target.
Sequence marginal_design_codons(const LabeledTrainingSet& train, const Protein& target);

struct FbConfig {
    double threshold = 0.0;  // fixed admission threshold on expected score
    std::size_t samples_per_iter = 1000;
    std::uint64_t budget = 10000;
    ModelSpec model;
    std::uint64_t seed = 0;
};

/// Fixed-threshold feedback baseline: a FIFO pool seeded from init_data
/// (capacity = |init_data|); each iteration samples M from the model, admits
/// candidates with expected score >= threshold that satisfy every constraint
/// (binary admission, never fractional weights), evicting the oldest, then
/// refits the model on the pool with unit weights.
RunRecord fixed_threshold_feedback(const FbConfig& config, const OracleSystem& system,
                                   const std::vector<Sequence>& init_data);

}  // namespace dbas
