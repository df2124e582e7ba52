#pragma once

#include <span>
#include <vector>

#include "sigma/alignment_config.hpp"
#include "sigma/knowledge_base.hpp"
#include "sigma/matching.hpp"
#include "sigma/property_index.hpp"
#include "sigma/word_index.hpp"

namespace sigma {

/// Two KBs, their configuration and the mapping resolved against them.
struct AlignmentProblem {
    KnowledgeBase first;
    KnowledgeBase second;
    AlignmentConfig config;
    ResolvedMapping mapping;
};

/// Resolves the mapping (installing label properties) and validates config.
AlignmentProblem make_problem(KnowledgeBase first, KnowledgeBase second, AlignmentConfig config);

struct ScoreParts {
    double string_sim = 0.0;
    double prop_sim = 0.0;
    double static_sim = 0.0;  // (1-beta) string + beta prop
    double graph_inc = 0.0;   // delta g
    double total = 0.0;       // (1-alpha) static + alpha graph_inc
};

struct WeightedNeighbor {
    EntityId id;
    double weight;
};

/// Per-KB graph normalizations: for each entity, its distinct relation
/// neighbours with weight w_ek (max over linking relations), and
/// gamma_e = 1 / (2 (1 + sum_k w_ek)).
class GraphNorms {
  public:
    static GraphNorms build(const KnowledgeBase& kb, NeighborWeightMode mode);

    std::span<const WeightedNeighbor> neighbors(EntityId e) const { return neighbors_.row(e); }
    double gamma(EntityId e) const { return gamma_[e]; }
    /// w_ek; 0 when k is not a neighbour of e.
    double weight(EntityId e, EntityId k) const;

  private:
    Csr<WeightedNeighbor> neighbors_;
    std::vector<double> gamma_;
};

/// Literal similarity for the year and exact kinds: 0/1 valued. Year
/// comparison of a literal with no year yields 0.
double literal_sim(const Literal& a, const Literal& b, SimKind kind);

/// All similarity computations between the entities of two KBs. Built
/// once, then read-only; safe to share across threads.
class ScoringModel {
  public:
    explicit ScoringModel(const AlignmentProblem& problem);

    const AlignmentProblem& problem() const noexcept { return problem_; }
    const AlignmentConfig& config() const noexcept { return problem_.config; }
    const KnowledgeBase& kb(Side side) const
    {
        return side == Side::First ? problem_.first : problem_.second;
    }
    const WordIndex& words(Side side) const { return side == Side::First ? words1_ : words2_; }
    const PropertyIndex& properties(Side side) const
    {
        return side == Side::First ? props1_ : props2_;
    }
    const GraphNorms& norms(Side side) const { return side == Side::First ? norms1_ : norms2_; }
    double smoothing() const noexcept { return smoothing_; }

    bool relations_match(RelationId r, RelationId s) const
    {
        return rel_match_[static_cast<std::size_t>(r) * n_rel2_ + s];
    }

    /// Smoothed weighted Jaccard over label words.
    double string_sim(EntityId i, EntityId j) const;
    /// Similarity of two literal values under a matched property pair.
    double literal_sim(PropertyId p, LiteralId v, PropertyId q, LiteralId l, SimKind kind) const;
    /// Smoothed weighted Jaccard over matched property values.
    double property_sim(EntityId i, EntityId j) const;
    double static_sim(EntityId i, EntityId j) const;

    double neighbor_weight(Side side, EntityId e, EntityId k) const
    {
        return norms(side).weight(e, k);
    }
    double gamma(Side side, EntityId e) const { return norms(side).gamma(e); }

    /// N_ij: sorted, duplicate-free neighbour pairs linked through matched relations.
    std::vector<EntityPair> compatible_neighbors(EntityId i, EntityId j) const;
    /// True when some matched (r, s) links i -> k and j -> l.
    bool compatible(EntityId i, EntityId k, EntityId j, EntityId l) const;

    double graph_score(EntityId i, EntityId j, const Matching& y) const;
    double graph_increment(EntityId i, EntityId j, const Matching& y) const;

    ScoreParts pair_score(EntityId i, EntityId j, const Matching& y) const
    {
        return pair_score(i, j, y, config().alpha);
    }
    ScoreParts pair_score(EntityId i, EntityId j, const Matching& y, double alpha) const;

  private:
    // Edges of `e` to `k` in the (neighbor, relation)-sorted adjacency.
    std::span<const Edge> edges_between(const Csr<Edge>& adj, EntityId e, EntityId k) const;

    const AlignmentProblem& problem_;
    Lexicon lexicon_;
    WordIndex words1_;
    WordIndex words2_;
    PropertyIndex props1_;
    PropertyIndex props2_;
    GraphNorms norms1_;
    GraphNorms norms2_;
    Csr<Edge> adj1_;  // sorted by (neighbor, relation)
    Csr<Edge> adj2_;
    std::size_t n_rel2_ = 0;
    std::vector<bool> rel_match_;
    double smoothing_ = 0.0;
};

}  // namespace sigma
