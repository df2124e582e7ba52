#include "sigma/scoring.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include <spdlog/spdlog.h>

#include "sigma/tokenize.hpp"

namespace sigma {

AlignmentProblem make_problem(KnowledgeBase first, KnowledgeBase second, AlignmentConfig config)
{
    config.validate();
    AlignmentProblem problem{std::move(first), std::move(second), std::move(config), {}};
    problem.mapping = resolve_mapping(problem.config, problem.first, problem.second);
    return problem;
}

// ---------------------------------------------------------------------------
// GraphNorms

GraphNorms GraphNorms::build(const KnowledgeBase& kb, NeighborWeightMode mode)
{
    GraphNorms norms;
    const std::size_t n = kb.num_entities();
    norms.gamma_.assign(n, 0.5);

    // |{e' : (e', r, k)}| = number of edges of k labelled r^-1; counted per
    // (entity, relation) once, looked up by binary search.
    Csr<std::pair<RelationId, std::uint32_t>> rel_counts;
    if (mode == NeighborWeightMode::Inverse) {
        std::vector<std::pair<RelationId, std::uint32_t>> counts;
        for (EntityId k = 0; k < n; ++k) {
            counts.clear();
            for (const Edge& edge : kb.adjacency(k)) {
                counts.emplace_back(edge.relation, 1U);
            }
            std::sort(counts.begin(), counts.end());
            std::size_t out = 0;
            for (std::size_t x = 0; x < counts.size(); ++x) {
                if (out > 0 && counts[out - 1].first == counts[x].first) {
                    ++counts[out - 1].second;
                } else {
                    counts[out++] = counts[x];
                }
            }
            counts.resize(out);
            rel_counts.data.insert(rel_counts.data.end(), counts.begin(), counts.end());
            rel_counts.offsets.push_back(rel_counts.data.size());
        }
    }
    auto in_count = [&](EntityId k, RelationId r) -> std::uint32_t {
        auto row = rel_counts.row(k);
        auto it = std::lower_bound(row.begin(), row.end(),
                                   std::pair<RelationId, std::uint32_t>{KnowledgeBase::inverse(r), 0U});
        return it->second;
    };

    std::vector<WeightedNeighbor> row;
    for (EntityId e = 0; e < n; ++e) {
        row.clear();
        for (const Edge& edge : kb.adjacency(e)) {
            double w = 1.0;
            if (mode == NeighborWeightMode::Inverse) {
                w = 1.0 / static_cast<double>(in_count(edge.neighbor, edge.relation));
            }
            row.push_back({edge.neighbor, w});
        }
        std::sort(row.begin(), row.end(), [](const WeightedNeighbor& a, const WeightedNeighbor& b) {
            return a.id != b.id ? a.id < b.id : a.weight > b.weight;
        });
        // Keep the max weight per distinct neighbour (first after sorting).
        row.erase(std::unique(row.begin(), row.end(),
                              [](const WeightedNeighbor& a, const WeightedNeighbor& b) {
                                  return a.id == b.id;
                              }),
                  row.end());
        double sum = 0.0;
        for (const WeightedNeighbor& nb : row) {
            sum += nb.weight;
        }
        norms.gamma_[e] = 0.5 / (1.0 + sum);
        norms.neighbors_.data.insert(norms.neighbors_.data.end(), row.begin(), row.end());
        norms.neighbors_.offsets.push_back(norms.neighbors_.data.size());
    }
    return norms;
}

double GraphNorms::weight(EntityId e, EntityId k) const
{
    auto row = neighbors_.row(e);
    auto it = std::lower_bound(row.begin(), row.end(), k,
                               [](const WeightedNeighbor& nb, EntityId id) { return nb.id < id; });
    return it != row.end() && it->id == k ? it->weight : 0.0;
}

// ---------------------------------------------------------------------------
// Literal similarity

namespace {

std::atomic<std::size_t> g_year_warnings{0};

void warn_no_year(const Literal& lit)
{
    if (g_year_warnings.fetch_add(1) < 5) {
        spdlog::warn("literal '{}' has no year component; year similarity is 0", lit.raw);
    }
}

}  // namespace

double literal_sim(const Literal& a, const Literal& b, SimKind kind)
{
    switch (kind) {
    case SimKind::Year: {
        auto ya = a.year();
        auto yb = b.year();
        if (!ya) {
            warn_no_year(a);
        }
        if (!yb) {
            warn_no_year(b);
        }
        return ya && yb && *ya == *yb ? 1.0 : 0.0;
    }
    case SimKind::Exact:
        if (a.type == LiteralType::Integer && b.type == LiteralType::Integer) {
            return a.integer == b.integer ? 1.0 : 0.0;
        }
        if (a.type == LiteralType::Date && b.type == LiteralType::Date) {
            return a.date == b.date ? 1.0 : 0.0;
        }
        if (a.type != LiteralType::String || b.type != LiteralType::String) {
            return 0.0;
        }
        return normalize_text(a.raw) == normalize_text(b.raw) ? 1.0 : 0.0;
    case SimKind::String:
        // Needs property-local weights; see ScoringModel::literal_sim.
        break;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// ScoringModel

namespace {

Csr<Edge> sorted_adjacency(const KnowledgeBase& kb)
{
    Csr<Edge> adj;
    adj.offsets.reserve(kb.num_entities() + 1);
    for (EntityId e = 0; e < kb.num_entities(); ++e) {
        auto edges = kb.adjacency(e);
        auto begin = adj.data.size();
        adj.data.insert(adj.data.end(), edges.begin(), edges.end());
        std::sort(adj.data.begin() + static_cast<std::ptrdiff_t>(begin), adj.data.end(),
                  [](const Edge& a, const Edge& b) {
                      return a.neighbor != b.neighbor ? a.neighbor < b.neighbor
                                                      : a.relation < b.relation;
                  });
        adj.offsets.push_back(adj.data.size());
    }
    return adj;
}

std::vector<PropertyId> scored_properties(const ResolvedMapping& mapping, Side side, bool strings)
{
    std::vector<PropertyId> out;
    for (const auto& p : mapping.properties) {
        if (strings && p.kind != SimKind::String) {
            continue;
        }
        out.push_back(side == Side::First ? p.first : p.second);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

ScoringModel::ScoringModel(const AlignmentProblem& problem) : problem_(problem)
{
    const AlignmentConfig& cfg = problem.config;
    words1_ = WordIndex::build(problem.first, lexicon_, cfg.stopword_count, cfg.string_weight);
    words2_ = WordIndex::build(problem.second, lexicon_, cfg.stopword_count, cfg.string_weight);
    props1_ = PropertyIndex::build(problem.first, lexicon_,
                                   scored_properties(problem.mapping, Side::First, false),
                                   scored_properties(problem.mapping, Side::First, true),
                                   cfg.property_weight);
    props2_ = PropertyIndex::build(problem.second, lexicon_,
                                   scored_properties(problem.mapping, Side::Second, false),
                                   scored_properties(problem.mapping, Side::Second, true),
                                   cfg.property_weight);
    norms1_ = GraphNorms::build(problem.first, cfg.neighbor_weight);
    norms2_ = GraphNorms::build(problem.second, cfg.neighbor_weight);
    adj1_ = sorted_adjacency(problem.first);
    adj2_ = sorted_adjacency(problem.second);

    n_rel2_ = problem.second.num_relations();
    rel_match_.assign(problem.first.num_relations() * n_rel2_, false);
    for (auto [r, s] : problem.mapping.relations) {
        rel_match_[static_cast<std::size_t>(r) * n_rel2_ + s] = true;
    }

    if (cfg.smoothing) {
        smoothing_ = *cfg.smoothing;
    } else if (problem.first.num_entities() > 0 && problem.second.num_entities() > 0) {
        smoothing_ = auto_smoothing(problem.first, problem.second);
    }
}

double ScoringModel::string_sim(EntityId i, EntityId j) const
{
    auto a = words1_.words(i);
    auto b = words2_.words(j);
    double num = 0.0;
    std::size_t x = 0;
    std::size_t y = 0;
    while (x < a.size() && y < b.size()) {
        if (a[x] < b[y]) {
            ++x;
        } else if (b[y] < a[x]) {
            ++y;
        } else {
            num += words1_.weight(a[x]) + words2_.weight(b[y]);
            ++x;
            ++y;
        }
    }
    const double den = smoothing_ + words1_.weight_sum(i) + words2_.weight_sum(j);
    return den > 0.0 ? num / den : 0.0;
}

double ScoringModel::literal_sim(PropertyId p, LiteralId v, PropertyId q, LiteralId l,
                                 SimKind kind) const
{
    if (kind != SimKind::String) {
        return sigma::literal_sim(problem_.first.literal(v), problem_.second.literal(l), kind);
    }
    auto a = props1_.literal_words(v);
    auto b = props2_.literal_words(l);
    double num = 0.0;
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (WordId w : a) {
        sum_a += props1_.word_weight(p, w);
    }
    for (WordId w : b) {
        sum_b += props2_.word_weight(q, w);
    }
    std::size_t x = 0;
    std::size_t y = 0;
    while (x < a.size() && y < b.size()) {
        if (a[x] < b[y]) {
            ++x;
        } else if (b[y] < a[x]) {
            ++y;
        } else {
            num += props1_.word_weight(p, a[x]) + props2_.word_weight(q, b[y]);
            ++x;
            ++y;
        }
    }
    const auto n1 = props1_.entities_with(p);
    const auto n2 = props2_.entities_with(q);
    const double smoothing = (n1 > 0 ? std::log10(static_cast<double>(n1)) : 0.0) +
                             (n2 > 0 ? std::log10(static_cast<double>(n2)) : 0.0);
    const double den = smoothing + sum_a + sum_b;
    return den > 0.0 ? num / den : 0.0;
}

double ScoringModel::property_sim(EntityId i, EntityId j) const
{
    auto fa = props1_.facts(i);
    auto fb = props2_.facts(j);
    double num = 0.0;
    if (!fa.empty() && !fb.empty()) {
        for (const auto& a : fa) {
            for (const auto& m : problem_.mapping.properties) {
                if (m.first != a.property) {
                    continue;
                }
                for (const auto& b : fb) {
                    if (b.property != m.second) {
                        continue;
                    }
                    const double sim = literal_sim(a.property, a.value, b.property, b.value, m.kind);
                    num += (a.weight + b.weight) * sim;
                }
            }
        }
    }
    return num / (2.0 + props1_.weight_sum(i) + props2_.weight_sum(j));
}

double ScoringModel::static_sim(EntityId i, EntityId j) const
{
    const double beta = config().beta;
    return (1.0 - beta) * string_sim(i, j) + beta * property_sim(i, j);
}

std::span<const Edge> ScoringModel::edges_between(const Csr<Edge>& adj, EntityId e,
                                                  EntityId k) const
{
    auto row = adj.row(e);
    auto [lo, hi] = std::equal_range(row.begin(), row.end(), Edge{0, k},
                                     [](const Edge& a, const Edge& b) {
                                         return a.neighbor < b.neighbor;
                                     });
    return {lo, hi};
}

bool ScoringModel::compatible(EntityId i, EntityId k, EntityId j, EntityId l) const
{
    for (const Edge& a : edges_between(adj1_, i, k)) {
        for (const Edge& b : edges_between(adj2_, j, l)) {
            if (relations_match(a.relation, b.relation)) {
                return true;
            }
        }
    }
    return false;
}

std::vector<EntityPair> ScoringModel::compatible_neighbors(EntityId i, EntityId j) const
{
    std::vector<EntityPair> out;
    auto ea = adj1_.row(i);
    auto eb = adj2_.row(j);
    for (const Edge& a : ea) {
        for (const Edge& b : eb) {
            if (relations_match(a.relation, b.relation)) {
                out.push_back({a.neighbor, b.neighbor});
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double ScoringModel::graph_score(EntityId i, EntityId j, const Matching& y) const
{
    const double gi = norms1_.gamma(i);
    const double gj = norms2_.gamma(j);
    double sum = 0.0;
    for (const WeightedNeighbor& k : norms1_.neighbors(i)) {
        const EntityId l = y.forward_raw(k.id);
        if (l == kNoEntity || !compatible(i, k.id, j, l)) {
            continue;
        }
        sum += gi * k.weight + gj * norms2_.weight(j, l);
    }
    return sum;
}

double ScoringModel::graph_increment(EntityId i, EntityId j, const Matching& y) const
{
    const double gi = norms1_.gamma(i);
    const double gj = norms2_.gamma(j);
    double sum = 0.0;
    for (const WeightedNeighbor& k : norms1_.neighbors(i)) {
        const EntityId l = y.forward_raw(k.id);
        if (l == kNoEntity || !compatible(i, k.id, j, l)) {
            continue;
        }
        sum += gi * k.weight + gj * norms2_.weight(j, l) + norms1_.gamma(k.id) * norms1_.weight(k.id, i) +
               norms2_.gamma(l) * norms2_.weight(l, j);
    }
    return sum;
}

ScoreParts ScoringModel::pair_score(EntityId i, EntityId j, const Matching& y, double alpha) const
{
    ScoreParts parts;
    const double beta = config().beta;
    parts.string_sim = string_sim(i, j);
    parts.prop_sim = property_sim(i, j);
    parts.static_sim = (1.0 - beta) * parts.string_sim + beta * parts.prop_sim;
    parts.graph_inc = graph_increment(i, j, y);
    parts.total = (1.0 - alpha) * parts.static_sim + alpha * parts.graph_inc;
    return parts;
}

}  // namespace sigma
