#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sigma/literal.hpp"
#include "sigma/types.hpp"

namespace sigma {

/// Outgoing relationship edge as stored in an entity's adjacency list.
struct Edge {
    RelationId relation;
    EntityId neighbor;
};

struct PropertyFact {
    PropertyId property;
    LiteralId value;
};

/// In-memory knowledge base: interned entities and literals, relationship
/// facts closed under inversion, property facts, and per-entity adjacency.
///
/// Relation ids come in pairs: a declared relation gets an even id `r`, its
/// inverse is `r ^ 1`. Every relationship fact is stored in both directions.
/// Facts are sets; re-adding an existing fact is a no-op.
///
/// Built by a single writer; treat as immutable afterwards.
class KnowledgeBase {
  public:
    static constexpr std::string_view kInverseSuffix = "^-1";

    explicit KnowledgeBase(std::string name = {}) : name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

    EntityId intern_entity(std::string_view surface_id);
    std::optional<EntityId> find_entity(std::string_view surface_id) const;
    const std::string& surface_id(EntityId e) const { return entity_names_.at(e); }
    std::size_t num_entities() const noexcept { return entity_names_.size(); }

    /// Returns the forward id. Names ending in "^-1" are reserved.
    RelationId declare_relation(std::string_view name);
    /// Looks up a relation; a trailing "^-1" selects the inverse.
    std::optional<RelationId> find_relation(std::string_view name) const;
    std::string relation_name(RelationId r) const;
    /// Count of relation ids, inverses included.
    std::size_t num_relations() const noexcept { return 2 * relation_names_.size(); }
    static constexpr RelationId inverse(RelationId r) noexcept { return r ^ 1U; }
    static constexpr bool is_forward(RelationId r) noexcept { return (r & 1U) == 0; }

    PropertyId declare_property(std::string_view name);
    std::optional<PropertyId> find_property(std::string_view name) const;
    const std::string& property_name(PropertyId p) const { return property_names_.at(p); }
    std::size_t num_properties() const noexcept { return property_names_.size(); }

    LiteralId intern_literal(std::string_view raw);
    const Literal& literal(LiteralId id) const { return literals_.at(id); }
    std::size_t num_literals() const noexcept { return literals_.size(); }

    /// Adds (e, r, e2) and (e2, r^-1, e). `r` must be a declared forward
    /// relation, otherwise ConfigError. Returns false for a duplicate.
    bool add_rel_fact(EntityId e, RelationId r, EntityId e2);
    bool has_rel_fact(EntityId e, RelationId r, EntityId e2) const;

    /// Returns false for a duplicate.
    bool add_prop_fact(EntityId e, PropertyId p, LiteralId value);

    std::span<const Edge> adjacency(EntityId e) const { return adjacency_.at(e); }
    std::span<const PropertyFact> prop_facts(EntityId e) const { return prop_facts_.at(e); }

    /// Number of stored relationship facts, inverse copies included.
    std::size_t num_rel_facts() const noexcept { return rel_fact_set_.size(); }
    std::size_t num_prop_facts() const noexcept { return prop_fact_set_.size(); }

    void set_label_property(PropertyId p);
    std::optional<PropertyId> label_property() const noexcept { return label_property_; }

    /// Values of the label property for `e`, in insertion order.
    std::vector<std::string_view> labels(EntityId e) const;

  private:
    struct TripleKey {
        std::uint32_t a, b, c;
        friend bool operator==(const TripleKey&, const TripleKey&) = default;
    };
    struct TripleHash {
        std::size_t operator()(const TripleKey& t) const noexcept
        {
            std::uint64_t h = (std::uint64_t{t.a} << 32) ^ t.c;
            h ^= std::uint64_t{t.b} * 0x9E3779B97F4A7C15ULL;
            h ^= h >> 29;
            h *= 0xBF58476D1CE4E5B9ULL;
            return static_cast<std::size_t>(h ^ (h >> 32));
        }
    };

    std::string name_;
    std::vector<std::string> entity_names_;
    std::unordered_map<std::string, EntityId> entity_index_;
    std::vector<std::string> relation_names_;  // forward names, id = 2 * position
    std::unordered_map<std::string, RelationId> relation_index_;
    std::vector<std::string> property_names_;
    std::unordered_map<std::string, PropertyId> property_index_;
    std::vector<Literal> literals_;
    std::unordered_map<std::string, LiteralId> literal_index_;

    std::vector<std::vector<Edge>> adjacency_;
    std::vector<std::vector<PropertyFact>> prop_facts_;
    std::unordered_set<TripleKey, TripleHash> rel_fact_set_;
    std::unordered_set<TripleKey, TripleHash> prop_fact_set_;
    std::optional<PropertyId> label_property_;
};

}  // namespace sigma
