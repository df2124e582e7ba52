#include "sigma/tokenize.hpp"

#include <algorithm>
#include <unordered_set>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

namespace sigma {

namespace {

bool is_ascii(std::string_view s)
{
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

// Lowercased text with separators replaced by spaces.
std::string fold(std::string_view raw)
{
    std::string out;
    if (is_ascii(raw)) {
        out.reserve(raw.size());
        for (char c : raw) {
            if (c >= 'A' && c <= 'Z') {
                out.push_back(static_cast<char>(c - 'A' + 'a'));
            } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
                out.push_back(c);
            } else {
                out.push_back(' ');
            }
        }
        return out;
    }

    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfkd = icu::Normalizer2::getNFKDInstance(status);
    icu::UnicodeString text = icu::UnicodeString::fromUTF8(
        icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
    if (U_SUCCESS(status)) {
        icu::UnicodeString normalized = nfkd->normalize(text, status);
        if (U_SUCCESS(status)) {
            text = std::move(normalized);
        }
    }
    text.foldCase();

    icu::UnicodeString cleaned;
    for (int32_t pos = 0; pos < text.length();) {
        UChar32 c = text.char32At(pos);
        pos += U16_LENGTH(c);
        if (u_charType(c) == U_NON_SPACING_MARK) {
            continue;
        }
        cleaned.append(u_isalnum(c) ? c : UChar32{' '});
    }
    cleaned.toUTF8String(out);
    return out;
}

template <typename Fn>
void for_each_word(std::string_view folded, Fn&& fn)
{
    std::size_t pos = 0;
    while (pos < folded.size()) {
        auto start = folded.find_first_not_of(' ', pos);
        if (start == std::string_view::npos) {
            break;
        }
        auto end = folded.find(' ', start);
        if (end == std::string_view::npos) {
            end = folded.size();
        }
        fn(folded.substr(start, end - start));
        pos = end;
    }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw)
{
    const std::string folded = fold(raw);
    std::vector<std::string> out;
    std::unordered_set<std::string_view> seen;
    for_each_word(folded, [&](std::string_view w) {
        if (seen.insert(w).second) {
            out.emplace_back(w);
        }
    });
    return out;
}

std::string normalize_text(std::string_view raw)
{
    const std::string folded = fold(raw);
    std::string out;
    for_each_word(folded, [&](std::string_view w) {
        if (!out.empty()) {
            out.push_back(' ');
        }
        out.append(w);
    });
    return out;
}

}  // namespace sigma
