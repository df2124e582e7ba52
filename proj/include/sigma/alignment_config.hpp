#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigma/knowledge_base.hpp"

namespace sigma {

enum class SimKind { Year, Exact, String };
enum class WeightMode { Uniform, Idf };
enum class NeighborWeightMode { Uniform, Inverse };
enum class SeedMode { ExactString, File, None };

std::string_view to_string(SimKind kind);
std::string_view to_string(NeighborWeightMode mode);
std::string_view to_string(SeedMode mode);
SimKind parse_sim_kind(std::string_view s);
NeighborWeightMode parse_neighbor_weight_mode(std::string_view s);
SeedMode parse_seed_mode(std::string_view s);

/// A relation name may carry the "^-1" suffix to denote the inverse.
struct RelationMatch {
    std::string first;
    std::string second;
};

struct PropertyMatch {
    std::string first;
    std::string second;
    SimKind kind = SimKind::Exact;
};

/// Cross-KB alignment configuration: manual relation/property mapping plus
/// every tunable parameter. Defaults are the standard configuration.
struct AlignmentConfig {
    std::vector<RelationMatch> relations;
    std::vector<PropertyMatch> properties;
    std::string label_first;
    std::string label_second;

    double alpha = 1.0 / 3.0;      // graph tradeoff
    double beta = 0.25;            // property tradeoff inside the static score
    double stop_threshold = 0.25;  // loop stops on a popped key <= this
    double s0_threshold = 0.75;    // S0 suggestions below this are dropped
    std::optional<double> smoothing;  // nullopt = auto
    NeighborWeightMode neighbor_weight = NeighborWeightMode::Uniform;
    WeightMode string_weight = WeightMode::Idf;
    WeightMode property_weight = WeightMode::Idf;
    SeedMode seed_mode = SeedMode::ExactString;
    bool use_s0 = true;
    bool propose_neighbors = true;
    std::size_t stopword_count = 1000;

    /// Sets a parameter by its mapping-file name. ConfigError on an unknown
    /// name or bad value.
    void set_param(std::string_view name, std::string_view value);

    /// Throws ConfigError when a value is out of range.
    void validate() const;
};

/// Parses the mapping file format:
///   rel    <r1> <r2>
///   prop   <p1> <p2> <year|exact|string>
///   label  <p1> <p2>
///   param  <name> <value>
/// Fields are tab-separated; '#' comments and blank lines are skipped.
AlignmentConfig parse_alignment_config(std::istream& in, std::string_view source = "<mapping>");
AlignmentConfig load_alignment_config(const std::string& path);

/// Relation and property ids of `config` resolved against two KBs.
struct ResolvedMapping {
    /// (r, s) pairs over KB relation ids, closed under inversion, sorted, unique.
    std::vector<std::pair<RelationId, RelationId>> relations;
    struct Property {
        PropertyId first;
        PropertyId second;
        SimKind kind;
    };
    std::vector<Property> properties;
    std::vector<std::string> warnings;
};

/// Resolves names; unknown names become warnings (logged) and are dropped.
/// Also installs the label properties on the KBs when they exist.
ResolvedMapping resolve_mapping(const AlignmentConfig& config, KnowledgeBase& first,
                                KnowledgeBase& second);

}  // namespace sigma
