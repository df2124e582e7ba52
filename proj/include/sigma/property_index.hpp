#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "sigma/alignment_config.hpp"
#include "sigma/knowledge_base.hpp"
#include "sigma/word_index.hpp"

namespace sigma {

/// Property-value weights of one KB: w_{p,v} = log10(N_p / |E_{p,v}|),
/// where N_p counts entities with any value for p. Restricted to the
/// properties that take part in the matched property pairs.
class PropertyIndex {
  public:
    struct WeightedFact {
        PropertyId property;
        LiteralId value;
        double weight;
    };

    /// `scored` lists the properties used for scoring; `string_valued` the
    /// subset compared with the word-level similarity, whose literals get
    /// tokenized and property-local word IDF weights.
    static PropertyIndex build(const KnowledgeBase& kb, Lexicon& lexicon,
                               std::span<const PropertyId> scored,
                               std::span<const PropertyId> string_valued,
                               WeightMode mode = WeightMode::Idf);

    /// Facts of `e` over scored properties, in KB order.
    std::span<const WeightedFact> facts(EntityId e) const { return facts_.row(e); }
    double weight_sum(EntityId e) const { return weight_sums_[e]; }

    double value_weight(PropertyId p, LiteralId v) const;
    std::size_t entities_with(PropertyId p) const
    {
        return p < entity_counts_.size() ? entity_counts_[p] : 0;
    }

    /// Tokens of a string-valued literal, ascending word id.
    std::span<const WordId> literal_words(LiteralId v) const
    {
        return v < literal_words_.rows() ? literal_words_.row(v) : std::span<const WordId>{};
    }
    /// IDF of word `w` among the values of property `p`.
    double word_weight(PropertyId p, WordId w) const;

  private:
    static std::uint64_t key(std::uint32_t a, std::uint32_t b)
    {
        return (std::uint64_t{a} << 32) | b;
    }

    Csr<WeightedFact> facts_;
    std::vector<double> weight_sums_;
    std::vector<std::size_t> entity_counts_;
    std::unordered_map<std::uint64_t, double> value_weights_;
    Csr<WordId> literal_words_;
    std::unordered_map<std::uint64_t, double> word_weights_;
};

}  // namespace sigma
