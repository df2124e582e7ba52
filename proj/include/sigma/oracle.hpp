#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sigma/io.hpp"

#include "sigma/matcher.hpp"
#include "sigma/scoring.hpp"

// Brute-force reference implementations for validating the fast path on
// small instances. Graph quantities are recomputed from the raw facts; the
// static similarity is taken from the ScoringModel.
namespace sigma::oracle {

/// Neighbourhood tables derived directly from the facts of both KBs.
class ReferenceGraph {
  public:
    explicit ReferenceGraph(const ScoringModel& model);

    /// w_ek of KB `side`; 0 when e and k are not linked.
    double weight(Side side, EntityId e, EntityId k) const;
    double gamma(Side side, EntityId e) const;
    /// {(k, l) : (i, r, k) in F1, (j, s, l) in F2, r ~ s}, sorted.
    std::vector<EntityPair> neighborhood(EntityId i, EntityId j) const;

    double g(EntityId i, EntityId j, const Matching& y) const;
    double delta_g(EntityId i, EntityId j, const Matching& y) const;
    /// (1 - alpha) s_ij + alpha delta_g_ij(y).
    double score(EntityId i, EntityId j, const Matching& y, double alpha) const;
    double static_sim(EntityId i, EntityId j) const;

    const ScoringModel& model() const noexcept { return model_; }

  private:
    const ScoringModel& model_;
    std::map<std::pair<EntityId, EntityId>, double> weights_[2];
    std::vector<double> gamma_[2];
};

/// sum over matched (i, j) of (1 - alpha) s_ij + alpha g_ij(y), from scratch.
double objective(const Matching& y, const ScoringModel& model, double alpha);
double objective(const Matching& y, const ReferenceGraph& graph, double alpha);

struct ExhaustiveResult {
    Matching matching;
    double value = 0.0;
};

inline constexpr std::size_t kMaxExhaustiveEntities = 8;

/// Maximizes the objective over all 1-1 partial matchings with at most
/// `max_pairs` pairs. Refuses (std::invalid_argument) above 8 entities per KB.
ExhaustiveResult exhaustive_best(const ScoringModel& model, double alpha, std::size_t max_pairs);

/// Queue-free greedy: every step rescores all suggested candidates from
/// scratch and commits the best one. Candidate suggestion events and the
/// tie rule mirror matcher::run so both produce the same trace.
RunResult reference_greedy(const ScoringModel& model, const RunSettings& settings,
                           std::span<const EntityPair> injected_seed = {});
RunResult reference_greedy(const ScoringModel& model,
                           std::span<const EntityPair> injected_seed = {});

/// Exact seed by comparing every label pair.
std::vector<EntityPair> brute_force_exact_seed(const ScoringModel& model);
/// S0 pairs by comparing every pair's word sets.
std::vector<EntityPair> brute_force_s0_pairs(const ScoringModel& model);

struct InvariantResult {
    std::string name;
    bool passed;
    std::string detail;
};

/// Largest |objective(y) - sum of trace scores| tolerated for in-memory runs.
inline constexpr double kTraceTolerance = 1e-9;

/// Runs the greedy on `model` and checks it against the brute-force
/// oracles: trace consistency, queue/reference equivalence, exact seed and
/// S0 enumeration, score ranges, monotonicity of delta g and, when
/// enumerable, greedy <= exhaustive. With `predictions` (a matched-pairs
/// file for the same instance) also checks that file's trace consistency
/// and agreement with the run.
std::vector<InvariantResult> check_invariants(const ScoringModel& model,
                                              const std::vector<PredictedPair>* predictions = nullptr);

}  // namespace sigma::oracle
