#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace sigma {

// Dense per-KB indices. Entity ids of KB1 and KB2 live in different spaces;
// by convention `i`, `k` index KB1 and `j`, `l` index KB2.
using EntityId = std::uint32_t;
using RelationId = std::uint32_t;
using PropertyId = std::uint32_t;
using LiteralId = std::uint32_t;
using WordId = std::uint32_t;

inline constexpr EntityId kNoEntity = std::numeric_limits<EntityId>::max();

struct EntityPair {
    EntityId left = kNoEntity;
    EntityId right = kNoEntity;

    friend auto operator<=>(const EntityPair&, const EntityPair&) = default;
};

enum class Side { First, Second };

/// Bad configuration: unknown relation, malformed mapping line, invalid parameter.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

}  // namespace sigma
