#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigma/alignment_config.hpp"
#include "sigma/io.hpp"
#include "sigma/knowledge_base.hpp"

namespace sigma {

/// Knobs of the synthetic KB-pair generator. Probabilities lie in [0, 1].
struct SynthParams {
    std::size_t n_entities = 1000;
    std::size_t n_relations = 3;
    double avg_degree = 4.0;
    std::size_t vocab_size = 50000;
    std::size_t words_min = 2;
    std::size_t words_max = 4;
    double zipf_exponent = 1.0;
    double word_drop_prob = 0.0;
    double word_swap_prob = 0.0;
    double edge_drop_prob = 0.0;
    double duplicate_label_frac = 0.0;
    double prop_year_frac = 0.5;
    double year_noise_prob = 0.0;
    std::uint64_t rng_seed = 1;

    /// ConfigError on an out-of-range field.
    void validate() const;
};

/// A generated pair of KBs in triple form. KB1 entities are `e<k>`; KB2
/// entity `x<perm[k]>` is the corrupted copy of `e<k>`.
struct SynthInstance {
    std::vector<Triple> rel1;
    std::vector<Triple> prop1;
    std::vector<Triple> rel2;
    std::vector<Triple> prop2;
    std::string mapping;  // mapping-file text
    std::vector<SurfacePair> ground_truth;

    KnowledgeBase first() const;
    KnowledgeBase second() const;
    AlignmentConfig config() const;
};

/// Deterministic in params.rng_seed, independent of the standard library's
/// distribution implementations. ConfigError when the requested degree
/// cannot be realized with distinct facts.
SynthInstance generate(const SynthParams& params);

/// Writes kb1_rel.tsv, kb1_prop.tsv, kb2_rel.tsv, kb2_prop.tsv,
/// mapping.tsv and gt.tsv into `dir` (created if missing).
void write_instance(const SynthInstance& instance, const std::string& dir);

void write_triples(std::ostream& out, const std::vector<Triple>& triples);

}  // namespace sigma
