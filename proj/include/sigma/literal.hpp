#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sigma {

enum class LiteralType { Integer, Date, String };

struct Date {
    int year = 0;
    int month = 0;  // 0 when absent
    int day = 0;    // 0 when absent

    friend bool operator==(const Date&, const Date&) = default;
};

/// A property value. Parsed as integer first, then ISO date
/// (YYYY[-MM[-DD]]), otherwise kept as a string.
struct Literal {
    LiteralType type = LiteralType::String;
    std::string raw;
    std::int64_t integer = 0;
    Date date{};

    static Literal parse(std::string_view raw);

    /// Year component for integers and dates; nullopt for strings.
    std::optional<int> year() const;
};

}  // namespace sigma
