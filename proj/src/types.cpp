#include "biaslens/types.hpp"

#include <algorithm>
#include <cctype>

namespace biaslens {

std::string_view to_string(Gender g) {
    switch (g) {
        case Gender::female: return "female";
        case Gender::male: return "male";
        default: return "other";
    }
}

std::string_view to_string(Group g) {
    switch (g) {
        case Group::left: return "left";
        case Group::right: return "right";
        case Group::alt_right: return "alt_right";
        default: return "none";
    }
}

std::string_view to_string(ExtSentiment s) {
    return s == ExtSentiment::positive ? "positive" : "negative";
}

Gender parse_gender(std::string_view text) {
    std::string t = ascii_lower(text);
    if (t == "female" || t == "f") return Gender::female;
    if (t == "male" || t == "m") return Gender::male;
    if (t == "other") return Gender::other;
    throw std::invalid_argument("unknown gender: '" + std::string(text) + "'");
}

Group parse_group(std::string_view text) {
    std::string t = ascii_lower(text);
    if (t == "left") return Group::left;
    if (t == "right") return Group::right;
    if (t == "alt_right" || t == "alt-right" || t == "altright") return Group::alt_right;
    if (t == "none" || t.empty()) return Group::none;
    throw std::invalid_argument("unknown group: '" + std::string(text) + "'");
}

ExtSentiment parse_ext_sentiment(std::string_view text) {
    std::string t = ascii_lower(text);
    if (t == "positive") return ExtSentiment::positive;
    if (t == "negative") return ExtSentiment::negative;
    throw std::invalid_argument("unknown sentiment label: '" + std::string(text) + "'");
}

std::string ascii_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
    });
    return out;
}

bool ascii_iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        unsigned char x = a[i], y = b[i];
        if (x < 0x80) x = static_cast<unsigned char>(std::tolower(x));
        if (y < 0x80) y = static_cast<unsigned char>(std::tolower(y));
        if (x != y) return false;
    }
    return true;
}

}  // namespace biaslens
