#include "sigma/literal.hpp"

#include <charconv>

namespace sigma {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

std::optional<std::int64_t> parse_integer(std::string_view s)
{
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        digits.remove_prefix(1);
    }
    if (!all_digits(digits)) {
        return std::nullopt;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return value;
}

std::optional<int> parse_fixed(std::string_view s, std::size_t width)
{
    if (s.size() != width || !all_digits(s)) {
        return std::nullopt;
    }
    int value = 0;
    std::from_chars(s.data(), s.data() + s.size(), value);
    return value;
}

std::optional<Date> parse_date(std::string_view s)
{
    Date d;
    auto year = parse_fixed(s.substr(0, 4), 4);
    if (!year) {
        return std::nullopt;
    }
    d.year = *year;
    if (s.size() == 4) {
        return d;
    }
    if (s.size() != 7 && s.size() != 10) {
        return std::nullopt;
    }
    if (s[4] != '-') {
        return std::nullopt;
    }
    auto month = parse_fixed(s.substr(5, 2), 2);
    if (!month || *month < 1 || *month > 12) {
        return std::nullopt;
    }
    d.month = *month;
    if (s.size() == 7) {
        return d;
    }
    if (s[7] != '-') {
        return std::nullopt;
    }
    auto day = parse_fixed(s.substr(8, 2), 2);
    if (!day || *day < 1 || *day > 31) {
        return std::nullopt;
    }
    d.day = *day;
    return d;
}

}  // namespace

Literal Literal::parse(std::string_view raw)
{
    Literal lit;
    lit.raw = std::string(raw);
    if (auto value = parse_integer(raw)) {
        lit.type = LiteralType::Integer;
        lit.integer = *value;
    } else if (auto date = parse_date(raw)) {
        lit.type = LiteralType::Date;
        lit.date = *date;
    }
    return lit;
}

std::optional<int> Literal::year() const
{
    switch (type) {
    case LiteralType::Integer:
        return static_cast<int>(integer);
    case LiteralType::Date:
        return date.year;
    case LiteralType::String:
        break;
    }
    return std::nullopt;
}

}  // namespace sigma
