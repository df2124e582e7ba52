#include "sigma/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

namespace sigma {

namespace {

// Portable sampling on top of mt19937_64, whose output sequence is fixed by
// the standard (the distributions are not).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n)
    {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
    bool chance(double p) { return unit() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t k = v.size(); k > 1; --k) {
            std::swap(v[k - 1], v[below(k)]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

class Zipf {
  public:
    Zipf(std::size_t n, double exponent) : cumulative_(n)
    {
        double total = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
            cumulative_[r] = total;
        }
    }
    std::size_t operator()(Rng& rng) const
    {
        const double u = rng.unit() * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
    }

  private:
    std::vector<double> cumulative_;
};

constexpr const char* kSyllables[] = {
    "ba", "be", "bi", "bo", "bu", "da", "de", "di", "do", "du", "fa", "fe", "fi", "fo", "fu", "ga",
    "ge", "gi", "go", "gu", "ka", "ke", "ki", "ko", "ku", "la", "le", "li", "lo", "lu", "ma", "me",
    "mi", "mo", "mu", "na", "ne", "ni", "no", "nu", "pa", "pe", "pi", "po", "pu", "ra", "re", "ri",
    "ro", "ru", "sa", "se", "si", "so", "su", "ta", "te", "ti", "to", "tu", "va", "ve", "vi", "vo"};
constexpr std::size_t kNumSyllables = std::size(kSyllables);

std::string pseudo_word(std::size_t w)
{
    std::string out;
    for (std::size_t x = w + kNumSyllables; x > 0; x /= kNumSyllables) {
        out.insert(0, kSyllables[x % kNumSyllables]);
    }
    return out;
}

std::string join(const std::vector<std::size_t>& words, const std::vector<std::string>& vocab)
{
    std::string out;
    for (std::size_t w : words) {
        if (!out.empty()) {
            out += ' ';
        }
        out += vocab[w];
    }
    return out;
}

void check_prob(double p, const char* name)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError(fmt::format("{} must lie in [0, 1], got {}", name, p));
    }
}

bool is_movie(std::size_t k) { return k % 3 == 0; }

}  // namespace

void SynthParams::validate() const
{
    if (n_entities < 1) {
        throw ConfigError("n_entities must be at least 1");
    }
    if (n_relations < 1) {
        throw ConfigError("n_relations must be at least 1");
    }
    if (vocab_size < 1) {
        throw ConfigError("vocab_size must be at least 1");
    }
    if (words_min < 1 || words_max < words_min) {
        throw ConfigError("need 1 <= words_min <= words_max");
    }
    if (!(avg_degree >= 0.0) || !std::isfinite(avg_degree)) {
        throw ConfigError("avg_degree must be non-negative");
    }
    if (!(zipf_exponent >= 0.0)) {
        throw ConfigError("zipf_exponent must be non-negative");
    }
    check_prob(word_drop_prob, "word_drop_prob");
    check_prob(word_swap_prob, "word_swap_prob");
    check_prob(edge_drop_prob, "edge_drop_prob");
    check_prob(duplicate_label_frac, "duplicate_label_frac");
    check_prob(prop_year_frac, "prop_year_frac");
    check_prob(year_noise_prob, "year_noise_prob");
}

SynthInstance generate(const SynthParams& params)
{
    params.validate();
    const std::size_t n = params.n_entities;
    Rng rng(params.rng_seed);

    std::vector<std::size_t> movies;
    std::vector<std::size_t> people;
    for (std::size_t k = 0; k < n; ++k) {
        (is_movie(k) ? movies : people).push_back(k);
    }
    const auto n_edges = static_cast<std::size_t>(std::llround(params.avg_degree * n / 2.0));
    const double capacity =
        static_cast<double>(movies.size()) * people.size() * params.n_relations;
    if (n_edges > 0 && static_cast<double>(n_edges) > capacity / 2.0) {
        throw ConfigError(fmt::format(
            "average degree {} infeasible for {} entities ({} edges, at most {} distinct)",
            params.avg_degree, n, n_edges, capacity));
    }

    std::vector<std::string> vocab(params.vocab_size);
    for (std::size_t w = 0; w < vocab.size(); ++w) {
        vocab[w] = pseudo_word(w);
    }
    const Zipf zipf(params.vocab_size, params.zipf_exponent);

    // Labels of KB1.
    std::vector<std::vector<std::size_t>> labels(n);
    for (auto& label : labels) {
        const std::size_t len =
            params.words_min + rng.below(params.words_max - params.words_min + 1);
        for (std::size_t t = 0; t < len; ++t) {
            std::size_t w = zipf(rng);
            for (int attempt = 0; attempt < 16 && std::count(label.begin(), label.end(), w);
                 ++attempt) {
                w = zipf(rng);
            }
            label.push_back(w);
        }
    }
    auto dup_count = static_cast<std::size_t>(std::floor(params.duplicate_label_frac * n));
    if (dup_count == 1) {
        dup_count = n >= 2 ? 2 : 0;
    }
    if (dup_count >= 2) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        order.resize(dup_count);
        // Groups of two; an odd leftover joins the last group.
        for (std::size_t g = 0; g + 1 < dup_count; g += 2) {
            labels[order[g + 1]] = labels[order[g]];
            if (g + 3 == dup_count) {
                labels[order[g + 2]] = labels[order[g]];
            }
        }
    }

    std::vector<int> years(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        if (rng.chance(params.prop_year_frac)) {
            years[k] = is_movie(k) ? 1920 + static_cast<int>(rng.below(101))
                                   : 1900 + static_cast<int>(rng.below(100));
        }
    }

    struct Fact {
        std::size_t person;
        std::size_t movie;
        std::size_t relation;
    };
    std::vector<Fact> edges;
    edges.reserve(n_edges);
    {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(n_edges * 2);
        while (edges.size() < n_edges) {
            const std::size_t p = people[rng.below(people.size())];
            const std::size_t m = movies[rng.below(movies.size())];
            const std::size_t r = rng.below(params.n_relations);
            const std::uint64_t key = (static_cast<std::uint64_t>(p) * n + m) * params.n_relations + r;
            if (seen.insert(key).second) {
                edges.push_back({p, m, r});
            }
        }
    }

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    auto id1 = [](std::size_t k) { return fmt::format("e{}", k); };
    auto id2 = [&](std::size_t k) { return fmt::format("x{}", perm[k]); };

    SynthInstance out;
    for (std::size_t k = 0; k < n; ++k) {
        out.prop1.push_back({id1(k), "label", join(labels[k], vocab)});
        if (years[k] != 0) {
            const int month = 1 + static_cast<int>(rng.below(12));
            const int day = 1 + static_cast<int>(rng.below(28));
            out.prop1.push_back({id1(k), is_movie(k) ? "released" : "born",
                                 fmt::format("{:04}-{:02}-{:02}", years[k], month, day)});
        }
    }
    for (const Fact& f : edges) {
        out.rel1.push_back({id1(f.person), fmt::format("r{}", f.relation), id1(f.movie)});
    }

    // KB2: corrupted copy, listed in its own id order.
    std::vector<std::size_t> by_id2(n);
    for (std::size_t k = 0; k < n; ++k) {
        by_id2[perm[k]] = k;
    }
    std::vector<std::vector<Triple>> prop2_of(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::size_t> words;
        for (std::size_t w : labels[k]) {
            if (!rng.chance(params.word_drop_prob)) {
                words.push_back(w);
            }
        }
        if (words.empty()) {
            words.push_back(labels[k][rng.below(labels[k].size())]);
        }
        if (words.size() >= 2 && rng.chance(params.word_swap_prob)) {
            const std::size_t a = rng.below(words.size());
            const std::size_t b = (a + 1 + rng.below(words.size() - 1)) % words.size();
            std::swap(words[a], words[b]);
        }
        prop2_of[k].push_back({id2(k), "name", join(words, vocab)});
        if (years[k] != 0) {
            int year = years[k];
            if (rng.chance(params.year_noise_prob)) {
                const int shift = 1 + static_cast<int>(rng.below(5));
                year += rng.chance(0.5) ? shift : -shift;
            }
            prop2_of[k].push_back(
                {id2(k), is_movie(k) ? "year_released" : "birth_year", fmt::format("{}", year)});
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (Triple& t : prop2_of[by_id2[x]]) {
            out.prop2.push_back(std::move(t));
        }
    }
    for (const Fact& f : edges) {
        if (rng.chance(params.edge_drop_prob)) {
            continue;
        }
        // Odd relations are stored movie -> person in KB2.
        if (f.relation % 2 == 0) {
            out.rel2.push_back({id2(f.person), fmt::format("s{}", f.relation), id2(f.movie)});
        } else {
            out.rel2.push_back({id2(f.movie), fmt::format("s{}", f.relation), id2(f.person)});
        }
    }
    std::sort(out.rel2.begin(), out.rel2.end(), [](const Triple& a, const Triple& b) {
        return std::tie(a.subject, a.predicate, a.object) <
               std::tie(b.subject, b.predicate, b.object);
    });

    std::string& map = out.mapping;
    for (std::size_t r = 0; r < params.n_relations; ++r) {
        map += fmt::format("rel\tr{}\ts{}{}\n", r, r, r % 2 == 0 ? "" : "^-1");
    }
    map += "prop\treleased\tyear_released\tyear\n";
    map += "prop\tborn\tbirth_year\tyear\n";
    map += "label\tlabel\tname\n";

    for (std::size_t k = 0; k < n; ++k) {
        out.ground_truth.push_back({id1(k), id2(k)});
    }
    return out;
}

KnowledgeBase SynthInstance::first() const
{
    KnowledgeBase kb("kb1");
    add_rel_triples(kb, rel1);
    add_prop_triples(kb, prop1);
    return kb;
}

KnowledgeBase SynthInstance::second() const
{
    KnowledgeBase kb("kb2");
    add_rel_triples(kb, rel2);
    add_prop_triples(kb, prop2);
    return kb;
}

AlignmentConfig SynthInstance::config() const
{
    std::istringstream in(mapping);
    return parse_alignment_config(in, "<synth mapping>");
}

void write_triples(std::ostream& out, const std::vector<Triple>& triples)
{
    for (const Triple& t : triples) {
        out << t.subject << '\t' << t.predicate << '\t' << t.object << '\n';
    }
}

void write_instance(const SynthInstance& instance, const std::string& dir)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream f(fs::path(dir) / name, std::ios::binary);
        if (!f) {
            throw std::runtime_error(fmt::format("cannot write {}/{}", dir, name));
        }
        return f;
    };
    {
        auto f = open("kb1_rel.tsv");
        write_triples(f, instance.rel1);
    }
    {
        auto f = open("kb1_prop.tsv");
        write_triples(f, instance.prop1);
    }
    {
        auto f = open("kb2_rel.tsv");
        write_triples(f, instance.rel2);
    }
    {
        auto f = open("kb2_prop.tsv");
        write_triples(f, instance.prop2);
    }
    {
        auto f = open("mapping.tsv");
        f << instance.mapping;
    }
    {
        auto f = open("gt.tsv");
        write_ground_truth(f, instance.ground_truth);
    }
}

}  // namespace sigma
