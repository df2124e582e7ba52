#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sigma::detail {

inline void strip_cr(std::string& line)
{
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
}

inline bool is_blank_or_comment(std::string_view line)
{
    auto pos = line.find_first_not_of(" \t");
    return pos == std::string_view::npos || line[pos] == '#';
}

inline std::vector<std::string_view> split_tabs(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

}  // namespace sigma::detail
