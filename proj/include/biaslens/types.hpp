#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace biaslens {

enum class Gender { female, male, other };
enum class Group { left, right, alt_right, none };
enum class ExtSentiment { positive, negative };

// Index into the {female, male} pair used by every binary comparison.
// Gender::other is counted in totals but excluded from two-sample analyses.
inline std::optional<int> binary_index(Gender g) {
    switch (g) {
        case Gender::female: return 0;
        case Gender::male: return 1;
        default: return std::nullopt;
    }
}

std::string_view to_string(Gender g);
std::string_view to_string(Group g);
std::string_view to_string(ExtSentiment s);

Gender parse_gender(std::string_view text);
Group parse_group(std::string_view text);
ExtSentiment parse_ext_sentiment(std::string_view text);

// Error taxonomy matching the CLI exit codes: 1 = config, 2 = ingest.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ASCII-only case fold; bytes >= 0x80 pass through untouched so UTF-8
// sequences (and therefore diacritics) stay distinct.
std::string ascii_lower(std::string_view text);
bool ascii_iequals(std::string_view a, std::string_view b);

}  // namespace biaslens
