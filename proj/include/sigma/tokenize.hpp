#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sigma {

/// Word tokens of `raw`: NFKD-normalized, casefolded, combining marks
/// dropped, every other non-alphanumeric code point treated as a
/// separator. Duplicates are removed keeping first occurrences.
std::vector<std::string> tokenize(std::string_view raw);

/// Same normalization as tokenize() but keeps repeated words; tokens are
/// joined by single spaces. Used for exact label comparison.
std::string normalize_text(std::string_view raw);

}  // namespace sigma
