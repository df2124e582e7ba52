#include "sigma/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

namespace sigma::oracle {

namespace {

int slot(Side side) { return side == Side::First ? 0 : 1; }

}  // namespace

ReferenceGraph::ReferenceGraph(const ScoringModel& model) : model_(model)
{
    const bool inverse = model.config().neighbor_weight == NeighborWeightMode::Inverse;
    for (Side side : {Side::First, Side::Second}) {
        const KnowledgeBase& kb = model.kb(side);
        auto& weights = weights_[slot(side)];
        const std::size_t n = kb.num_entities();
        for (EntityId e = 0; e < n; ++e) {
            for (const Edge& edge : kb.adjacency(e)) {
                double w = 1.0;
                if (inverse) {
                    std::size_t count = 0;
                    for (EntityId other = 0; other < n; ++other) {
                        count += kb.has_rel_fact(other, edge.relation, edge.neighbor) ? 1 : 0;
                    }
                    w = 1.0 / static_cast<double>(count);
                }
                auto [it, inserted] = weights.try_emplace({e, edge.neighbor}, w);
                if (!inserted) {
                    it->second = std::max(it->second, w);
                }
            }
        }
        auto& gamma = gamma_[slot(side)];
        gamma.assign(n, 0.0);
        for (EntityId e = 0; e < n; ++e) {
            std::set<EntityId> neighbors;
            for (const Edge& edge : kb.adjacency(e)) {
                neighbors.insert(edge.neighbor);
            }
            double sum = 0.0;
            for (EntityId k : neighbors) {
                sum += weights.at({e, k});
            }
            gamma[e] = 0.5 / (1.0 + sum);
        }
    }
}

double ReferenceGraph::weight(Side side, EntityId e, EntityId k) const
{
    const auto& weights = weights_[slot(side)];
    auto it = weights.find({e, k});
    return it == weights.end() ? 0.0 : it->second;
}

double ReferenceGraph::gamma(Side side, EntityId e) const { return gamma_[slot(side)].at(e); }

std::vector<EntityPair> ReferenceGraph::neighborhood(EntityId i, EntityId j) const
{
    std::set<EntityPair> pairs;
    for (const Edge& a : model_.kb(Side::First).adjacency(i)) {
        for (const Edge& b : model_.kb(Side::Second).adjacency(j)) {
            if (model_.relations_match(a.relation, b.relation)) {
                pairs.insert({a.neighbor, b.neighbor});
            }
        }
    }
    return {pairs.begin(), pairs.end()};
}

double ReferenceGraph::g(EntityId i, EntityId j, const Matching& y) const
{
    const double gi = gamma(Side::First, i);
    const double gj = gamma(Side::Second, j);
    double sum = 0.0;
    for (EntityPair kl : neighborhood(i, j)) {
        if (y.contains(kl)) {
            sum += gi * weight(Side::First, i, kl.left) + gj * weight(Side::Second, j, kl.right);
        }
    }
    return sum;
}

double ReferenceGraph::delta_g(EntityId i, EntityId j, const Matching& y) const
{
    const double gi = gamma(Side::First, i);
    const double gj = gamma(Side::Second, j);
    double sum = 0.0;
    for (EntityPair kl : neighborhood(i, j)) {
        if (y.contains(kl)) {
            const auto [k, l] = kl;
            sum += gi * weight(Side::First, i, k) + gj * weight(Side::Second, j, l) +
                   gamma(Side::First, k) * weight(Side::First, k, i) +
                   gamma(Side::Second, l) * weight(Side::Second, l, j);
        }
    }
    return sum;
}

double ReferenceGraph::static_sim(EntityId i, EntityId j) const
{
    const double beta = model_.config().beta;
    return (1.0 - beta) * model_.string_sim(i, j) + beta * model_.property_sim(i, j);
}

double ReferenceGraph::score(EntityId i, EntityId j, const Matching& y, double alpha) const
{
    return (1.0 - alpha) * static_sim(i, j) + alpha * delta_g(i, j, y);
}

double objective(const Matching& y, const ReferenceGraph& graph, double alpha)
{
    double total = 0.0;
    for (const TraceEntry& t : y.trace()) {
        const auto [i, j] = t.pair;
        total += (1.0 - alpha) * graph.static_sim(i, j) + alpha * graph.g(i, j, y);
    }
    return total;
}

double objective(const Matching& y, const ScoringModel& model, double alpha)
{
    return objective(y, ReferenceGraph(model), alpha);
}

ExhaustiveResult exhaustive_best(const ScoringModel& model, double alpha, std::size_t max_pairs)
{
    const std::size_t n1 = model.kb(Side::First).num_entities();
    const std::size_t n2 = model.kb(Side::Second).num_entities();
    if (n1 > kMaxExhaustiveEntities || n2 > kMaxExhaustiveEntities) {
        throw std::invalid_argument("exhaustive search is limited to 8 entities per KB");
    }
    const ReferenceGraph graph(model);

    ExhaustiveResult best{Matching(n1, n2), 0.0};
    std::vector<EntityId> assign(n1, kNoEntity);
    std::vector<bool> used(n2, false);

    auto evaluate_leaf = [&](std::size_t size) {
        Matching y(n1, n2);
        for (EntityId i = 0; i < n1; ++i) {
            if (assign[i] != kNoEntity) {
                (void)y.commit(i, assign[i], 0.0, y.size());
            }
        }
        const double value = objective(y, graph, alpha);
        if (value > best.value || (value == best.value && size > best.matching.size())) {
            best = {std::move(y), value};
        }
    };

    auto recurse = [&](auto&& self, EntityId i, std::size_t size) -> void {
        if (i == n1) {
            evaluate_leaf(size);
            return;
        }
        self(self, i + 1, size);
        if (size == max_pairs) {
            return;
        }
        for (EntityId j = 0; j < n2; ++j) {
            if (used[j]) {
                continue;
            }
            used[j] = true;
            assign[i] = j;
            self(self, i + 1, size + 1);
            assign[i] = kNoEntity;
            used[j] = false;
        }
    };
    recurse(recurse, 0, 0);

    // Non-negative coefficients: some optimum fills the whole budget.
    const std::size_t expected = std::min({max_pairs, n1, n2});
    if (best.matching.size() != expected) {
        throw std::logic_error("exhaustive optimum does not use the full pair budget");
    }
    return best;
}

std::vector<EntityPair> brute_force_exact_seed(const ScoringModel& model)
{
    const WordIndex& w1 = model.words(Side::First);
    const WordIndex& w2 = model.words(Side::Second);
    std::vector<EntityPair> out;
    for (EntityId i = 0; i < w1.num_entities(); ++i) {
        const std::string& label = w1.normalized_label(i);
        if (label.empty()) {
            continue;
        }
        std::size_t in_first = 0;
        for (EntityId k = 0; k < w1.num_entities(); ++k) {
            in_first += w1.normalized_label(k) == label ? 1 : 0;
        }
        std::vector<EntityId> in_second;
        for (EntityId j = 0; j < w2.num_entities(); ++j) {
            if (w2.normalized_label(j) == label) {
                in_second.push_back(j);
            }
        }
        if (in_first == 1 && in_second.size() == 1) {
            out.push_back({i, in_second.front()});
        }
    }
    return out;
}

std::vector<EntityPair> brute_force_s0_pairs(const ScoringModel& model)
{
    const WordIndex& w1 = model.words(Side::First);
    const WordIndex& w2 = model.words(Side::Second);
    std::vector<EntityPair> out;
    for (EntityId i = 0; i < w1.num_entities(); ++i) {
        for (EntityId j = 0; j < w2.num_entities(); ++j) {
            std::size_t shared = 0;
            for (WordId a : w1.words(i)) {
                if (w1.is_stopword(a) || w2.is_stopword(a)) {
                    continue;
                }
                for (WordId b : w2.words(j)) {
                    shared += a == b ? 1 : 0;
                }
            }
            if (shared >= 2) {
                out.push_back({i, j});
            }
        }
    }
    return out;
}

RunResult reference_greedy(const ScoringModel& model, const RunSettings& settings,
                           std::span<const EntityPair> injected_seed)
{
    const std::size_t n1 = model.kb(Side::First).num_entities();
    const std::size_t n2 = model.kb(Side::Second).num_entities();
    const ReferenceGraph graph(model);
    RunResult result{Matching(n1, n2), StopReason::QueueEmpty, {}, {}};
    Matching& m = result.matching;

    auto parts_of = [&](EntityId i, EntityId j) {
        ScoreParts p;
        p.string_sim = model.string_sim(i, j);
        p.prop_sim = model.property_sim(i, j);
        p.static_sim = graph.static_sim(i, j);
        p.graph_inc = graph.delta_g(i, j, m);
        p.total = graph.score(i, j, m, settings.alpha);
        return p;
    };

    std::vector<EntityPair> seed;
    if (settings.seed_mode == SeedMode::ExactString) {
        seed = brute_force_exact_seed(model);
    } else if (settings.seed_mode == SeedMode::File) {
        seed.assign(injected_seed.begin(), injected_seed.end());
    }
    std::size_t iteration = 0;
    for (EntityPair p : seed) {
        if (m.first_matched(p.left) || m.second_matched(p.right)) {
            continue;
        }
        const ScoreParts parts = parts_of(p.left, p.right);
        (void)m.commit(p.left, p.right, parts.total, iteration++);
        result.details.push_back({CommitSource::Seed, parts});
        ++result.stats.seed_commits;
    }
    const std::size_t n_seed = m.size();

    // Every suggestion event with the key it would carry in a queue.
    struct Suggestion {
        double key;
        std::uint64_t seq;
    };
    std::map<EntityPair, std::vector<Suggestion>> log;
    std::uint64_t seq = 0;
    auto suggest = [&](EntityPair p) {
        log[p].push_back({graph.score(p.left, p.right, m, settings.alpha), seq++});
    };
    auto suggest_neighbors = [&](EntityId i, EntityId j) {
        for (EntityPair p : graph.neighborhood(i, j)) {
            if (!m.first_matched(p.left) && !m.second_matched(p.right)) {
                suggest(p);
                ++result.stats.neighbor_suggestions;
            }
        }
    };

    if (settings.use_s0) {
        for (EntityPair p : brute_force_s0_pairs(model)) {
            if (m.first_matched(p.left) || m.second_matched(p.right)) {
                continue;
            }
            if (graph.score(p.left, p.right, m, settings.alpha) >= settings.s0_threshold) {
                suggest(p);
                ++result.stats.s0_suggestions;
            }
        }
    }
    if (settings.propose_neighbors) {
        for (std::size_t t = 0; t < n_seed; ++t) {
            const EntityPair p = m.trace()[t].pair;
            suggest_neighbors(p.left, p.right);
        }
    }

    while (true) {
        bool found = false;
        EntityPair best{};
        double best_score = 0.0;
        std::uint64_t best_seq = 0;
        for (const auto& [pair, events] : log) {
            if (m.first_matched(pair.left) || m.second_matched(pair.right)) {
                continue;
            }
            const double fresh = graph.score(pair.left, pair.right, m, settings.alpha);
            // The queue would surface the earliest entry carrying the current
            // score; without one, the latest entry is the best guess.
            std::uint64_t tie_seq = events.back().seq;
            for (const Suggestion& s : events) {
                if (s.key == fresh) {
                    tie_seq = s.seq;
                    break;
                }
            }
            if (!found || fresh > best_score || (fresh == best_score && tie_seq < best_seq)) {
                found = true;
                best = pair;
                best_score = fresh;
                best_seq = tie_seq;
            }
        }
        if (!found) {
            break;
        }
        if (best_score <= settings.stop_threshold) {
            result.stopped_reason = StopReason::Threshold;
            break;
        }
        const ScoreParts parts = parts_of(best.left, best.right);
        (void)m.commit(best.left, best.right, best_score, iteration++);
        result.details.push_back({CommitSource::Queue, parts});
        ++result.stats.commits;
        if (settings.propose_neighbors) {
            suggest_neighbors(best.left, best.right);
        }
    }
    return result;
}

RunResult reference_greedy(const ScoringModel& model, std::span<const EntityPair> injected_seed)
{
    return reference_greedy(model, RunSettings::from(model.config()), injected_seed);
}

namespace {

double trace_sum(const Matching& y)
{
    double sum = 0.0;
    for (const TraceEntry& t : y.trace()) {
        sum += t.score;
    }
    return sum;
}

Matching prefix(const Matching& y, std::size_t n1, std::size_t n2, std::size_t count)
{
    Matching out(n1, n2);
    for (std::size_t t = 0; t < count; ++t) {
        const TraceEntry& e = y.trace()[t];
        (void)out.commit(e.pair.left, e.pair.right, e.score, e.iteration);
    }
    return out;
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

std::vector<InvariantResult> check_invariants(const ScoringModel& model,
                                              const std::vector<PredictedPair>* predictions)
{
    std::vector<InvariantResult> out;
    auto report = [&](std::string name, bool ok, std::string detail) {
        out.push_back({std::move(name), ok, std::move(detail)});
    };
    const double alpha = model.config().alpha;
    const ReferenceGraph graph(model);
    const RunResult fast = run(model);
    const Matching& y = fast.matching;

    {
        const double obj = objective(y, graph, alpha);
        const double sum = trace_sum(y);
        const double err = std::abs(obj - sum);
        report("trace_consistency", err <= kTraceTolerance,
               fmt::format("objective={:.12g} trace_sum={:.12g} |diff|={:.3g}", obj, sum, err));
    }
    {
        const RunResult ref = reference_greedy(model);
        const auto& a = y.trace();
        const auto& b = ref.matching.trace();
        std::size_t same = 0;
        while (same < a.size() && same < b.size() && a[same].pair == b[same].pair &&
               a[same].score == b[same].score) {
            ++same;
        }
        const bool ok = a.size() == b.size() && same == a.size();
        report("reference_equivalence", ok,
               ok ? fmt::format("{} identical commits", a.size())
                  : fmt::format("queue {} commits, reference {}, first difference at {}",
                                a.size(), b.size(), same));
    }
    {
        const bool ok = exact_seed(model) == brute_force_exact_seed(model);
        report("exact_seed", ok, ok ? "matches enumeration" : "differs from enumeration");
    }
    {
        const bool ok = s0_pairs(model) == brute_force_s0_pairs(model);
        report("s0_pairs", ok, ok ? "matches enumeration" : "differs from enumeration");
    }
    {
        const std::size_t n1 = model.kb(Side::First).num_entities();
        const std::size_t n2 = model.kb(Side::Second).num_entities();
        const std::size_t total = n1 * n2;
        const std::size_t stride = std::max<std::size_t>(1, total / 20000);
        const Matching mid = prefix(y, n1, n2, y.size() / 2);
        const Matching empty(n1, n2);
        std::size_t checked = 0;
        std::size_t bad_range = 0;
        std::size_t bad_mono = 0;
        for (std::size_t x = 0; x < total; x += stride) {
            const auto i = static_cast<EntityId>(x / n2);
            const auto j = static_cast<EntityId>(x % n2);
            ++checked;
            const ScoreParts p0 = model.pair_score(i, j, empty, alpha);
            const ScoreParts p1 = model.pair_score(i, j, mid, alpha);
            const ScoreParts p2 = model.pair_score(i, j, y, alpha);
            if (!in_unit(p0.string_sim) || !in_unit(p0.prop_sim) || !in_unit(p0.static_sim) ||
                !in_unit(model.graph_score(i, j, y))) {
                ++bad_range;
            }
            if (p0.graph_inc != 0.0 || p1.graph_inc > p2.graph_inc) {
                ++bad_mono;
            }
        }
        report("score_range", bad_range == 0,
               fmt::format("{} pairs checked, {} out of [0, 1]", checked, bad_range));
        report("delta_g_monotone", bad_mono == 0,
               fmt::format("{} pairs checked, {} violations", checked, bad_mono));

        if (n1 <= kMaxExhaustiveEntities && n2 <= kMaxExhaustiveEntities) {
            const ExhaustiveResult best = exhaustive_best(model, alpha, std::min(n1, n2));
            const double greedy = objective(y, graph, alpha);
            report("greedy_le_exhaustive", greedy <= best.value + kTraceTolerance,
                   fmt::format("greedy={:.12g} exhaustive={:.12g}", greedy, best.value));
        }
    }

    if (predictions != nullptr) {
        const KnowledgeBase& kb1 = model.kb(Side::First);
        const KnowledgeBase& kb2 = model.kb(Side::Second);
        Matching from_file(kb1.num_entities(), kb2.num_entities());
        std::string problem;
        double sum = 0.0;
        for (const PredictedPair& p : *predictions) {
            const auto i = kb1.find_entity(p.first);
            const auto j = kb2.find_entity(p.second);
            if (!i || !j) {
                problem = fmt::format("unknown entity in ({}, {})", p.first, p.second);
                break;
            }
            if (!from_file.commit(*i, *j, p.score, p.iteration)) {
                problem = fmt::format("({}, {}) breaks the 1-1 constraint", p.first, p.second);
                break;
            }
            sum += p.score;
        }
        if (!problem.empty()) {
            report("pred_trace_consistency", false, problem);
        } else {
            // Scores are stored with six decimals.
            const double tol = 1e-6 * static_cast<double>(predictions->size() + 1);
            const double obj = objective(from_file, graph, alpha);
            const double err = std::abs(obj - sum);
            report("pred_trace_consistency", err <= tol,
                   fmt::format("objective={:.9f} file_sum={:.9f} |diff|={:.3g} tol={:.3g}", obj,
                               sum, err, tol));
            bool same = from_file.size() == y.size();
            for (std::size_t t = 0; same && t < y.size(); ++t) {
                same = from_file.trace()[t].pair == y.trace()[t].pair;
            }
            report("pred_matches_run", same,
                   same ? fmt::format("{} pairs in run order", y.size())
                        : fmt::format("file has {} pairs, run {}; order or pairs differ",
                                      from_file.size(), y.size()));
        }
    }
    return out;
}

}  // namespace sigma::oracle
