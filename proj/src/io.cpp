#include "sigma/io.hpp"

#include <charconv>
#include <fstream>
#include <unordered_map>

#include <fmt/format.h>

#include "text_util.hpp"

namespace sigma {

namespace {

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }
    return in;
}

}  // namespace

std::vector<Triple> parse_triples(std::istream& in, std::string_view source)
{
    std::vector<Triple> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        auto fields = detail::split_tabs(line);
        if (fields.size() != 3) {
            throw ParseError(std::string(source), line_no,
                             fmt::format("expected 3 fields, got {}", fields.size()));
        }
        for (auto f : fields) {
            if (f.empty()) {
                throw ParseError(std::string(source), line_no, "empty field");
            }
        }
        out.push_back({std::string(fields[0]), std::string(fields[1]), std::string(fields[2])});
    }
    return out;
}

std::vector<Triple> parse_triples(const std::string& path)
{
    auto in = open_input(path);
    return parse_triples(in, path);
}

void add_rel_triples(KnowledgeBase& kb, const std::vector<Triple>& triples)
{
    for (const Triple& t : triples) {
        EntityId e = kb.intern_entity(t.subject);
        RelationId r = kb.declare_relation(t.predicate);
        EntityId e2 = kb.intern_entity(t.object);
        kb.add_rel_fact(e, r, e2);
    }
}

void add_prop_triples(KnowledgeBase& kb, const std::vector<Triple>& triples)
{
    for (const Triple& t : triples) {
        EntityId e = kb.intern_entity(t.subject);
        PropertyId p = kb.declare_property(t.predicate);
        LiteralId v = kb.intern_literal(t.object);
        kb.add_prop_fact(e, p, v);
    }
}

KnowledgeBase load_knowledge_base(const std::string& rel_path, const std::string& prop_path,
                                  std::string name)
{
    KnowledgeBase kb(std::move(name));
    add_rel_triples(kb, parse_triples(rel_path));
    add_prop_triples(kb, parse_triples(prop_path));
    return kb;
}

std::vector<SurfacePair> parse_ground_truth(std::istream& in, std::string_view source)
{
    std::vector<SurfacePair> out;
    std::unordered_map<std::string, std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        auto fields = detail::split_tabs(line);
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
            throw ParseError(std::string(source), line_no, "expected 2 fields: <kb1_id> <kb2_id>");
        }
        auto [it, inserted] = seen.try_emplace(std::string(fields[0]), std::string(fields[1]));
        if (!inserted) {
            if (it->second != fields[1]) {
                throw ParseError(std::string(source), line_no,
                                 fmt::format("'{}' mapped to two entities", fields[0]));
            }
            continue;
        }
        out.push_back({std::string(fields[0]), std::string(fields[1])});
    }
    return out;
}

std::vector<SurfacePair> load_ground_truth(const std::string& path)
{
    auto in = open_input(path);
    return parse_ground_truth(in, path);
}

void write_ground_truth(std::ostream& out, const std::vector<SurfacePair>& pairs)
{
    for (const auto& p : pairs) {
        out << p.first << '\t' << p.second << '\n';
    }
}

void write_matched_pairs(std::ostream& out, const std::vector<PredictedPair>& pairs)
{
    for (const auto& p : pairs) {
        out << fmt::format("{}\t{}\t{:.6f}\t{}\n", p.first, p.second, p.score, p.iteration);
    }
}

std::vector<PredictedPair> parse_matched_pairs(std::istream& in, std::string_view source)
{
    std::vector<PredictedPair> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        auto fields = detail::split_tabs(line);
        if (fields.size() != 4 && fields.size() != 2) {
            throw ParseError(std::string(source), line_no,
                             "expected 4 fields: <kb1_id> <kb2_id> <score> <iteration>");
        }
        PredictedPair p{std::string(fields[0]), std::string(fields[1]), 0.0, out.size()};
        if (fields.size() == 4) {
            auto [p1, e1] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(),
                                            p.score);
            auto [p2, e2] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(),
                                            p.iteration);
            if (e1 != std::errc{} || p1 != fields[2].data() + fields[2].size() ||
                e2 != std::errc{} || p2 != fields[3].data() + fields[3].size()) {
                throw ParseError(std::string(source), line_no, "bad score or iteration field");
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<PredictedPair> load_matched_pairs(const std::string& path)
{
    auto in = open_input(path);
    return parse_matched_pairs(in, path);
}

}  // namespace sigma
