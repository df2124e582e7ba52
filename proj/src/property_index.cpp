#include "sigma/property_index.hpp"

#include <algorithm>
#include <cmath>

#include "sigma/tokenize.hpp"

namespace sigma {

PropertyIndex PropertyIndex::build(const KnowledgeBase& kb, Lexicon& lexicon,
                                   std::span<const PropertyId> scored,
                                   std::span<const PropertyId> string_valued, WeightMode mode)
{
    PropertyIndex index;
    const std::size_t n = kb.num_entities();
    std::vector<bool> is_scored(kb.num_properties(), false);
    for (PropertyId p : scored) {
        is_scored.at(p) = true;
    }

    // Counts: N_p and |E_{p,v}|. Facts are unique per (e, p, v).
    index.entity_counts_.assign(kb.num_properties(), 0);
    std::unordered_map<std::uint64_t, std::size_t> value_counts;
    std::vector<PropertyId> seen;
    for (EntityId e = 0; e < n; ++e) {
        seen.clear();
        for (const PropertyFact& f : kb.prop_facts(e)) {
            if (!is_scored[f.property]) {
                continue;
            }
            ++value_counts[key(f.property, f.value)];
            if (std::find(seen.begin(), seen.end(), f.property) == seen.end()) {
                seen.push_back(f.property);
                ++index.entity_counts_[f.property];
            }
        }
    }
    for (const auto& [k, count] : value_counts) {
        const auto p = static_cast<PropertyId>(k >> 32);
        const double w =
            mode == WeightMode::Idf
                ? std::log10(static_cast<double>(index.entity_counts_[p]) / static_cast<double>(count))
                : 1.0;
        index.value_weights_.emplace(k, w);
    }

    index.weight_sums_.assign(n, 0.0);
    for (EntityId e = 0; e < n; ++e) {
        double sum = 0.0;
        for (const PropertyFact& f : kb.prop_facts(e)) {
            if (!is_scored[f.property]) {
                continue;
            }
            const double w = index.value_weights_.at(key(f.property, f.value));
            index.facts_.data.push_back({f.property, f.value, w});
            sum += w;
        }
        index.facts_.offsets.push_back(index.facts_.data.size());
        index.weight_sums_[e] = sum;
    }

    // Word-level data for string-valued properties.
    std::vector<std::vector<WordId>> words(kb.num_literals());
    std::vector<bool> tokenized(kb.num_literals(), false);
    std::unordered_map<std::uint64_t, std::size_t> word_df;  // (p, w) -> #entities
    std::vector<WordId> entity_words;
    for (EntityId e = 0; e < n; ++e) {
        for (PropertyId p : string_valued) {
            entity_words.clear();
            for (const PropertyFact& f : kb.prop_facts(e)) {
                if (f.property != p) {
                    continue;
                }
                if (!tokenized[f.value]) {
                    tokenized[f.value] = true;
                    auto& ids = words[f.value];
                    for (const std::string& w : tokenize(kb.literal(f.value).raw)) {
                        ids.push_back(lexicon.intern(w));
                    }
                    std::sort(ids.begin(), ids.end());
                }
                entity_words.insert(entity_words.end(), words[f.value].begin(),
                                    words[f.value].end());
            }
            std::sort(entity_words.begin(), entity_words.end());
            entity_words.erase(std::unique(entity_words.begin(), entity_words.end()),
                               entity_words.end());
            for (WordId w : entity_words) {
                ++word_df[key(p, w)];
            }
        }
    }
    for (const auto& [k, df] : word_df) {
        const auto p = static_cast<PropertyId>(k >> 32);
        const double w =
            mode == WeightMode::Idf
                ? std::log10(static_cast<double>(index.entity_counts_[p]) / static_cast<double>(df))
                : 1.0;
        index.word_weights_.emplace(k, w);
    }
    for (const auto& ids : words) {
        index.literal_words_.data.insert(index.literal_words_.data.end(), ids.begin(), ids.end());
        index.literal_words_.offsets.push_back(index.literal_words_.data.size());
    }
    return index;
}

double PropertyIndex::value_weight(PropertyId p, LiteralId v) const
{
    auto it = value_weights_.find(key(p, v));
    return it == value_weights_.end() ? 0.0 : it->second;
}

double PropertyIndex::word_weight(PropertyId p, WordId w) const
{
    auto it = word_weights_.find(key(p, w));
    return it == word_weights_.end() ? 0.0 : it->second;
}

}  // namespace sigma
