#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "sigma/matching.hpp"
#include "sigma/scoring.hpp"

namespace sigma {

/// Element of the candidate max-priority queue. Entries are never updated
/// in place; a re-scored pair is pushed again with a fresh key.
struct CandidateEntry {
    double key;
    EntityPair pair;
    std::uint64_t seq;
};

/// Max-heap order: larger key first, then earlier insertion.
struct CandidateOrder {
    bool operator()(const CandidateEntry& a, const CandidateEntry& b) const noexcept
    {
        return a.key != b.key ? a.key < b.key : a.seq > b.seq;
    }
};

enum class StopReason { Threshold, QueueEmpty };
enum class CommitSource { Seed, Queue };

std::string_view to_string(StopReason reason);

struct RunStats {
    std::size_t pops = 0;
    std::size_t skips = 0;
    std::size_t commits = 0;
    std::size_t seed_commits = 0;
    std::size_t s0_suggestions = 0;
    std::size_t neighbor_suggestions = 0;
};

struct CommitDetail {
    CommitSource source;
    ScoreParts parts;
};

struct RunResult {
    Matching matching;
    StopReason stopped_reason = StopReason::QueueEmpty;
    RunStats stats;
    /// Parallel to matching.trace().
    std::vector<CommitDetail> details;
};

/// Effective knobs of one run, derived from the config (and the linear
/// variant, which zeroes alpha and turns off neighbour proposals).
struct RunSettings {
    double alpha;
    double stop_threshold;
    double s0_threshold;
    bool use_s0;
    bool propose_neighbors;
    SeedMode seed_mode;

    static RunSettings from(const AlignmentConfig& config);
    static RunSettings linear(const AlignmentConfig& config);
};

/// Pairs whose normalized first label is identical and borne by exactly
/// one entity in each KB. Sorted by KB1 index.
std::vector<EntityPair> exact_seed(const ScoringModel& model);

/// Cross-KB pairs sharing at least two label words that are not stop
/// words in either KB. Sorted, duplicate-free; unscored.
std::vector<EntityPair> s0_pairs(const ScoringModel& model);

/// S0 suggestions: s0_pairs() scored against `seed` with unmatched
/// endpoints, keeping those with score >= s0_threshold. Sorted by pair.
std::vector<CandidateEntry> s0_candidates(const ScoringModel& model, const Matching& seed,
                                          const RunSettings& settings);

/// The greedy loop. `injected_seed` is used when the seed mode is File.
RunResult run(const ScoringModel& model, const RunSettings& settings,
              std::span<const EntityPair> injected_seed = {});
RunResult run(const ScoringModel& model, std::span<const EntityPair> injected_seed = {});
/// Static-score-only variant: alpha = 0, candidates from seed and S0 only.
RunResult run_linear(const ScoringModel& model, std::span<const EntityPair> injected_seed = {});

}  // namespace sigma
