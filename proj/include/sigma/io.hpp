#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sigma/knowledge_base.hpp"

namespace sigma {

struct Triple {
    std::string subject;
    std::string predicate;
    std::string object;

    friend bool operator==(const Triple&, const Triple&) = default;
};

/// One triple per line, three tab-separated fields. Blank lines and lines
/// starting with '#' are skipped. ParseError carries the line number.
std::vector<Triple> parse_triples(std::istream& in, std::string_view source = "<triples>");
std::vector<Triple> parse_triples(const std::string& path);

/// Builds a KB from a relationship-facts file and a property-facts file.
/// Relations and properties are declared as they are encountered.
KnowledgeBase load_knowledge_base(const std::string& rel_path, const std::string& prop_path,
                                  std::string name);
void add_rel_triples(KnowledgeBase& kb, const std::vector<Triple>& triples);
void add_prop_triples(KnowledgeBase& kb, const std::vector<Triple>& triples);

/// Ground truth: a partial map from KB1 surface ids to KB2 surface ids.
struct SurfacePair {
    std::string first;
    std::string second;

    friend bool operator==(const SurfacePair&, const SurfacePair&) = default;
};

/// Two tab-separated ids per line. A KB1 id mapped twice is a ParseError.
std::vector<SurfacePair> parse_ground_truth(std::istream& in, std::string_view source = "<gt>");
std::vector<SurfacePair> load_ground_truth(const std::string& path);
void write_ground_truth(std::ostream& out, const std::vector<SurfacePair>& pairs);

/// A line of the matched-pairs file.
struct PredictedPair {
    std::string first;
    std::string second;
    double score = 0.0;
    std::size_t iteration = 0;
};

/// `<kb1_id>\t<kb2_id>\t<score:%.6f>\t<iteration>` per line.
void write_matched_pairs(std::ostream& out, const std::vector<PredictedPair>& pairs);
std::vector<PredictedPair> parse_matched_pairs(std::istream& in,
                                               std::string_view source = "<pairs>");
std::vector<PredictedPair> load_matched_pairs(const std::string& path);

}  // namespace sigma
