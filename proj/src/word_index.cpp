#include "sigma/word_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sigma/tokenize.hpp"

namespace sigma {

WordId Lexicon::intern(std::string_view word)
{
    auto [it, inserted] = index_.try_emplace(std::string(word), static_cast<WordId>(words_.size()));
    if (inserted) {
        words_.emplace_back(word);
    }
    return it->second;
}

std::optional<WordId> Lexicon::find(std::string_view word) const
{
    auto it = index_.find(std::string(word));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

WordIndex WordIndex::build(const KnowledgeBase& kb, Lexicon& lexicon, std::size_t stopword_count,
                           WeightMode mode)
{
    WordIndex index;
    const std::size_t n = kb.num_entities();
    index.normalized_labels_.resize(n);
    index.entity_words_.offsets.reserve(n + 1);

    std::vector<WordId> ids;
    for (EntityId e = 0; e < n; ++e) {
        ids.clear();
        auto labels = kb.labels(e);
        for (std::size_t k = 0; k < labels.size(); ++k) {
            for (const std::string& w : tokenize(labels[k])) {
                ids.push_back(lexicon.intern(w));
            }
            if (k == 0) {
                index.normalized_labels_[e] = normalize_text(labels[k]);
            }
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        index.entity_words_.data.insert(index.entity_words_.data.end(), ids.begin(), ids.end());
        index.entity_words_.offsets.push_back(index.entity_words_.data.size());
    }

    const std::size_t vocab = lexicon.size();
    std::vector<std::size_t> df(vocab, 0);
    for (WordId w : index.entity_words_.data) {
        ++df[w];
    }
    index.postings_.offsets.assign(vocab + 1, 0);
    for (std::size_t w = 0; w < vocab; ++w) {
        index.postings_.offsets[w + 1] = index.postings_.offsets[w] + df[w];
    }
    index.postings_.data.resize(index.entity_words_.data.size());
    std::vector<std::size_t> cursor(index.postings_.offsets.begin(),
                                    index.postings_.offsets.end() - 1);
    for (EntityId e = 0; e < n; ++e) {
        for (WordId w : index.entity_words_.row(e)) {
            index.postings_.data[cursor[w]++] = e;
        }
    }

    index.idf_.assign(vocab, 0.0);
    index.weights_.assign(vocab, 0.0);
    std::vector<WordId> present;
    for (WordId w = 0; w < vocab; ++w) {
        if (df[w] == 0) {
            continue;
        }
        present.push_back(w);
        index.idf_[w] = std::log10(static_cast<double>(n) / static_cast<double>(df[w]));
        index.weights_[w] = mode == WeightMode::Idf ? index.idf_[w] : 1.0;
    }
    index.vocabulary_size_ = present.size();

    index.weight_sums_.assign(n, 0.0);
    for (EntityId e = 0; e < n; ++e) {
        double sum = 0.0;
        for (WordId w : index.entity_words_.row(e)) {
            sum += index.weights_[w];
        }
        index.weight_sums_[e] = sum;
    }

    index.stopwords_.assign(vocab, false);
    const std::size_t take = std::min(stopword_count, present.size());
    if (take > 0) {
        std::sort(present.begin(), present.end(), [&](WordId a, WordId b) {
            return df[a] != df[b] ? df[a] > df[b] : a < b;
        });
        const std::size_t cutoff = df[present[take - 1]];
        for (WordId w : present) {
            if (df[w] < cutoff) {
                break;
            }
            index.stopwords_[w] = true;
            ++index.num_stopwords_;
        }
    }
    return index;
}

double auto_smoothing(const KnowledgeBase& first, const KnowledgeBase& second)
{
    if (first.num_entities() == 0 || second.num_entities() == 0) {
        throw ConfigError("auto smoothing needs non-empty knowledge bases");
    }
    return std::log10(static_cast<double>(first.num_entities())) +
           std::log10(static_cast<double>(second.num_entities()));
}

}  // namespace sigma
