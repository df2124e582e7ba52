#include "sigma/matcher.hpp"

#include <algorithm>
#include <queue>
#include <string_view>
#include <unordered_map>

#include <spdlog/spdlog.h>

namespace sigma {

std::string_view to_string(StopReason reason)
{
    return reason == StopReason::Threshold ? "threshold" : "queue_empty";
}

RunSettings RunSettings::from(const AlignmentConfig& config)
{
    return {config.alpha,  config.stop_threshold,    config.s0_threshold,
            config.use_s0, config.propose_neighbors, config.seed_mode};
}

RunSettings RunSettings::linear(const AlignmentConfig& config)
{
    RunSettings s = from(config);
    s.alpha = 0.0;
    s.propose_neighbors = false;
    return s;
}

std::vector<EntityPair> exact_seed(const ScoringModel& model)
{
    struct Bearers {
        std::size_t count_first = 0;
        std::size_t count_second = 0;
        EntityId first = kNoEntity;
        EntityId second = kNoEntity;
    };
    const WordIndex& w1 = model.words(Side::First);
    const WordIndex& w2 = model.words(Side::Second);
    std::unordered_map<std::string_view, Bearers> by_label;
    for (EntityId i = 0; i < w1.num_entities(); ++i) {
        const std::string& label = w1.normalized_label(i);
        if (!label.empty()) {
            auto& b = by_label[label];
            ++b.count_first;
            b.first = i;
        }
    }
    for (EntityId j = 0; j < w2.num_entities(); ++j) {
        const std::string& label = w2.normalized_label(j);
        if (label.empty()) {
            continue;
        }
        auto it = by_label.find(label);
        if (it != by_label.end()) {
            ++it->second.count_second;
            it->second.second = j;
        }
    }
    std::vector<EntityPair> out;
    for (const auto& [label, b] : by_label) {
        if (b.count_first == 1 && b.count_second == 1) {
            out.push_back({b.first, b.second});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<EntityPair> s0_pairs(const ScoringModel& model)
{
    const WordIndex& w1 = model.words(Side::First);
    const WordIndex& w2 = model.words(Side::Second);
    std::vector<EntityPair> out;
    std::vector<std::uint32_t> shared(w2.num_entities(), 0);
    std::vector<EntityId> touched;
    for (EntityId i = 0; i < w1.num_entities(); ++i) {
        touched.clear();
        for (WordId v : w1.words(i)) {
            if (w1.is_stopword(v) || w2.is_stopword(v)) {
                continue;
            }
            for (EntityId j : w2.postings(v)) {
                if (shared[j]++ == 0) {
                    touched.push_back(j);
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        for (EntityId j : touched) {
            if (shared[j] >= 2) {
                out.push_back({i, j});
            }
            shared[j] = 0;
        }
    }
    return out;
}

std::vector<CandidateEntry> s0_candidates(const ScoringModel& model, const Matching& seed,
                                          const RunSettings& settings)
{
    std::vector<CandidateEntry> out;
    for (EntityPair p : s0_pairs(model)) {
        if (seed.first_matched(p.left) || seed.second_matched(p.right)) {
            continue;
        }
        const double score = model.pair_score(p.left, p.right, seed, settings.alpha).total;
        if (score >= settings.s0_threshold) {
            out.push_back({score, p, 0});
        }
    }
    return out;
}

namespace {

class CandidateQueue {
  public:
    void push(double key, EntityPair pair) { heap_.push({key, pair, next_seq_++}); }
    bool empty() const { return heap_.empty(); }
    CandidateEntry pop()
    {
        CandidateEntry top = heap_.top();
        heap_.pop();
        return top;
    }

  private:
    std::priority_queue<CandidateEntry, std::vector<CandidateEntry>, CandidateOrder> heap_;
    std::uint64_t next_seq_ = 0;
};

}  // namespace

RunResult run(const ScoringModel& model, const RunSettings& settings,
              std::span<const EntityPair> injected_seed)
{
    const std::size_t n1 = model.kb(Side::First).num_entities();
    const std::size_t n2 = model.kb(Side::Second).num_entities();
    RunResult result{Matching(n1, n2), StopReason::QueueEmpty, {}, {}};
    Matching& m = result.matching;
    std::size_t iteration = 0;

    std::vector<EntityPair> seed;
    switch (settings.seed_mode) {
    case SeedMode::ExactString:
        seed = exact_seed(model);
        break;
    case SeedMode::File:
        seed.assign(injected_seed.begin(), injected_seed.end());
        break;
    case SeedMode::None:
        break;
    }
    for (EntityPair p : seed) {
        if (p.left >= n1 || p.right >= n2) {
            throw ConfigError("seed pair references an unknown entity");
        }
        if (m.first_matched(p.left) || m.second_matched(p.right)) {
            continue;
        }
        const ScoreParts parts = model.pair_score(p.left, p.right, m, settings.alpha);
        if (m.commit(p.left, p.right, parts.total, iteration)) {
            ++iteration;
            result.details.push_back({CommitSource::Seed, parts});
            ++result.stats.seed_commits;
        }
    }
    const std::size_t n_seed = m.size();

    CandidateQueue queue;
    if (settings.use_s0) {
        for (const CandidateEntry& c : s0_candidates(model, m, settings)) {
            queue.push(c.key, c.pair);
            ++result.stats.s0_suggestions;
        }
    }

    auto suggest_neighbors = [&](EntityId i, EntityId j) {
        for (EntityPair p : model.compatible_neighbors(i, j)) {
            if (m.first_matched(p.left) || m.second_matched(p.right)) {
                continue;
            }
            queue.push(model.pair_score(p.left, p.right, m, settings.alpha).total, p);
            ++result.stats.neighbor_suggestions;
        }
    };
    if (settings.propose_neighbors) {
        for (std::size_t t = 0; t < n_seed; ++t) {
            const EntityPair p = m.trace()[t].pair;
            suggest_neighbors(p.left, p.right);
        }
    }

    while (!queue.empty()) {
        const CandidateEntry top = queue.pop();
        ++result.stats.pops;
        if (top.key <= settings.stop_threshold) {
            result.stopped_reason = StopReason::Threshold;
            break;
        }
        const auto [i, j] = top.pair;
        if (m.first_matched(i) || m.second_matched(j)) {
            ++result.stats.skips;
            continue;
        }
        const ScoreParts parts = model.pair_score(i, j, m, settings.alpha);
        if (!m.commit(i, j, top.key, iteration)) {
            continue;
        }
        ++iteration;
        ++result.stats.commits;
        result.details.push_back({CommitSource::Queue, parts});
        if (parts.total != top.key) {
            spdlog::debug("stale key for ({}, {}): popped {} current {}", i, j, top.key,
                          parts.total);
        }
        if (settings.propose_neighbors) {
            suggest_neighbors(i, j);
        }
    }
    return result;
}

RunResult run(const ScoringModel& model, std::span<const EntityPair> injected_seed)
{
    return run(model, RunSettings::from(model.config()), injected_seed);
}

RunResult run_linear(const ScoringModel& model, std::span<const EntityPair> injected_seed)
{
    return run(model, RunSettings::linear(model.config()), injected_seed);
}

}  // namespace sigma
