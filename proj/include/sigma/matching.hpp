#pragma once

#include <optional>
#include <vector>

#include "sigma/types.hpp"

namespace sigma {

struct TraceEntry {
    std::size_t iteration;
    EntityPair pair;
    double score;
};

/// 1-1 partial mapping between the entities of two knowledge bases, with
/// the ordered list of committed pairs.
class Matching {
  public:
    Matching() = default;
    Matching(std::size_t n_first, std::size_t n_second)
        : forward_(n_first, kNoEntity), backward_(n_second, kNoEntity)
    {
    }

    /// Sets m(i) = j. Returns false, leaving the matching unchanged, when
    /// either endpoint is already matched.
    [[nodiscard]] bool commit(EntityId i, EntityId j, double score, std::size_t iteration);

    std::optional<EntityId> forward(EntityId i) const
    {
        EntityId j = forward_.at(i);
        return j == kNoEntity ? std::nullopt : std::optional<EntityId>(j);
    }
    std::optional<EntityId> backward(EntityId j) const
    {
        EntityId i = backward_.at(j);
        return i == kNoEntity ? std::nullopt : std::optional<EntityId>(i);
    }

    /// Unchecked variants for hot loops: kNoEntity when unmatched.
    EntityId forward_raw(EntityId i) const noexcept { return forward_[i]; }
    EntityId backward_raw(EntityId j) const noexcept { return backward_[j]; }

    bool first_matched(EntityId i) const { return forward_.at(i) != kNoEntity; }
    bool second_matched(EntityId j) const { return backward_.at(j) != kNoEntity; }
    bool contains(EntityPair p) const { return forward_.at(p.left) == p.right; }

    std::size_t size() const noexcept { return trace_.size(); }
    bool empty() const noexcept { return trace_.empty(); }
    std::size_t first_size() const noexcept { return forward_.size(); }
    std::size_t second_size() const noexcept { return backward_.size(); }

    const std::vector<TraceEntry>& trace() const noexcept { return trace_; }

  private:
    std::vector<EntityId> forward_;
    std::vector<EntityId> backward_;
    std::vector<TraceEntry> trace_;
};

}  // namespace sigma
