#include "sigma/knowledge_base.hpp"

#include <fmt/format.h>

namespace sigma {

namespace {

bool has_inverse_suffix(std::string_view name)
{
    return name.ends_with(KnowledgeBase::kInverseSuffix);
}

}  // namespace

EntityId KnowledgeBase::intern_entity(std::string_view surface_id)
{
    auto [it, inserted] = entity_index_.try_emplace(std::string(surface_id),
                                                    static_cast<EntityId>(entity_names_.size()));
    if (inserted) {
        entity_names_.emplace_back(surface_id);
        adjacency_.emplace_back();
        prop_facts_.emplace_back();
    }
    return it->second;
}

std::optional<EntityId> KnowledgeBase::find_entity(std::string_view surface_id) const
{
    auto it = entity_index_.find(std::string(surface_id));
    if (it == entity_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

RelationId KnowledgeBase::declare_relation(std::string_view name)
{
    if (name.empty() || has_inverse_suffix(name)) {
        throw ConfigError(fmt::format("invalid relation name '{}'", name));
    }
    auto [it, inserted] = relation_index_.try_emplace(
        std::string(name), static_cast<RelationId>(2 * relation_names_.size()));
    if (inserted) {
        relation_names_.emplace_back(name);
    }
    return it->second;
}

std::optional<RelationId> KnowledgeBase::find_relation(std::string_view name) const
{
    bool inverted = has_inverse_suffix(name);
    if (inverted) {
        name.remove_suffix(kInverseSuffix.size());
    }
    auto it = relation_index_.find(std::string(name));
    if (it == relation_index_.end()) {
        return std::nullopt;
    }
    return inverted ? inverse(it->second) : it->second;
}

std::string KnowledgeBase::relation_name(RelationId r) const
{
    const std::string& base = relation_names_.at(r / 2);
    return is_forward(r) ? base : base + std::string(kInverseSuffix);
}

PropertyId KnowledgeBase::declare_property(std::string_view name)
{
    if (name.empty()) {
        throw ConfigError("empty property name");
    }
    auto [it, inserted] = property_index_.try_emplace(
        std::string(name), static_cast<PropertyId>(property_names_.size()));
    if (inserted) {
        property_names_.emplace_back(name);
    }
    return it->second;
}

std::optional<PropertyId> KnowledgeBase::find_property(std::string_view name) const
{
    auto it = property_index_.find(std::string(name));
    if (it == property_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

LiteralId KnowledgeBase::intern_literal(std::string_view raw)
{
    auto [it, inserted] =
        literal_index_.try_emplace(std::string(raw), static_cast<LiteralId>(literals_.size()));
    if (inserted) {
        literals_.push_back(Literal::parse(raw));
    }
    return it->second;
}

bool KnowledgeBase::add_rel_fact(EntityId e, RelationId r, EntityId e2)
{
    if (!is_forward(r) || r / 2 >= relation_names_.size()) {
        throw ConfigError(fmt::format("unknown relation id {} in KB '{}'", r, name_));
    }
    if (e >= num_entities() || e2 >= num_entities()) {
        throw ConfigError(fmt::format("unknown entity in relationship fact of KB '{}'", name_));
    }
    if (!rel_fact_set_.insert({e, r, e2}).second) {
        return false;
    }
    rel_fact_set_.insert({e2, inverse(r), e});
    adjacency_[e].push_back({r, e2});
    adjacency_[e2].push_back({inverse(r), e});
    return true;
}

bool KnowledgeBase::has_rel_fact(EntityId e, RelationId r, EntityId e2) const
{
    return rel_fact_set_.contains({e, r, e2});
}

bool KnowledgeBase::add_prop_fact(EntityId e, PropertyId p, LiteralId value)
{
    if (e >= num_entities() || p >= num_properties() || value >= num_literals()) {
        throw ConfigError(fmt::format("unknown id in property fact of KB '{}'", name_));
    }
    if (!prop_fact_set_.insert({e, p, value}).second) {
        return false;
    }
    prop_facts_[e].push_back({p, value});
    return true;
}

void KnowledgeBase::set_label_property(PropertyId p)
{
    if (p >= num_properties()) {
        throw ConfigError(fmt::format("unknown label property id {} in KB '{}'", p, name_));
    }
    label_property_ = p;
}

std::vector<std::string_view> KnowledgeBase::labels(EntityId e) const
{
    std::vector<std::string_view> out;
    if (!label_property_) {
        return out;
    }
    for (const PropertyFact& f : prop_facts_.at(e)) {
        if (f.property == *label_property_) {
            out.emplace_back(literals_[f.value].raw);
        }
    }
    return out;
}

}  // namespace sigma
