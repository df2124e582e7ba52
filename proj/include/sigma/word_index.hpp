#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sigma/alignment_config.hpp"
#include "sigma/knowledge_base.hpp"

namespace sigma {

/// Word dictionary shared by both KBs so that word ids are comparable.
class Lexicon {
  public:
    WordId intern(std::string_view word);
    std::optional<WordId> find(std::string_view word) const;
    const std::string& word(WordId w) const { return words_.at(w); }
    std::size_t size() const noexcept { return words_.size(); }

  private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, WordId> index_;
};

/// Compressed rows of ids: row r is data[offsets[r] .. offsets[r+1]).
template <typename T>
struct Csr {
    std::vector<std::size_t> offsets{0};
    std::vector<T> data;

    std::span<const T> row(std::size_t r) const
    {
        return {data.data() + offsets[r], offsets[r + 1] - offsets[r]};
    }
    std::size_t rows() const noexcept { return offsets.size() - 1; }
};

/// Label-word inverted index of one KB with IDF weights
/// w_v = log10(|E| / |E_v|) and an automatically built stop-word list.
class WordIndex {
  public:
    /// Tokenizes every entity's label values (union of their words), builds
    /// postings and weights. The `stopword_count` most frequent words are
    /// flagged, ties at the last rank included.
    static WordIndex build(const KnowledgeBase& kb, Lexicon& lexicon, std::size_t stopword_count,
                           WeightMode mode = WeightMode::Idf);

    /// Label words of `e`, ascending word id, duplicate-free.
    std::span<const WordId> words(EntityId e) const { return entity_words_.row(e); }
    /// Entities whose label contains `w`; empty if the word never occurs here.
    std::span<const EntityId> postings(WordId w) const
    {
        return w < postings_.rows() ? postings_.row(w) : std::span<const EntityId>{};
    }
    std::size_t document_frequency(WordId w) const { return postings(w).size(); }

    /// Weight used in string similarity (IDF, or 1 in uniform mode).
    double weight(WordId w) const { return w < weights_.size() ? weights_[w] : 0.0; }
    double idf(WordId w) const { return w < idf_.size() ? idf_[w] : 0.0; }
    /// Sum of weight() over words(e).
    double weight_sum(EntityId e) const { return weight_sums_[e]; }

    bool is_stopword(WordId w) const { return w < stopwords_.size() && stopwords_[w]; }
    std::size_t num_stopwords() const noexcept { return num_stopwords_; }
    std::size_t vocabulary_size() const noexcept { return vocabulary_size_; }
    std::size_t num_entities() const noexcept { return entity_words_.rows(); }

    /// Normalized first label of each entity (empty if none).
    const std::string& normalized_label(EntityId e) const { return normalized_labels_[e]; }

  private:
    Csr<WordId> entity_words_;
    Csr<EntityId> postings_;
    std::vector<double> weights_;
    std::vector<double> idf_;
    std::vector<double> weight_sums_;
    std::vector<bool> stopwords_;
    std::vector<std::string> normalized_labels_;
    std::size_t num_stopwords_ = 0;
    std::size_t vocabulary_size_ = 0;
};

/// log10|E1| + log10|E2|. ConfigError when either KB is empty.
double auto_smoothing(const KnowledgeBase& first, const KnowledgeBase& second);

}  // namespace sigma
