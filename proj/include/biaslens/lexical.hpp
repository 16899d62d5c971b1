#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "biaslens/corpus.hpp"
#include "biaslens/stats/tests.hpp"

namespace biaslens {

// Descriptor co-occurrence counts over binary-gender data points:
//   occurrence n(w,g)  - descriptor occurrences, one per mention record;
//   entity_docs e(w,g) - entities of gender g whose descriptor set holds w,
//                        i.e. each politician counts as one document.
struct DescriptorCounts {
    std::map<std::string, std::array<std::int64_t, 2>> occurrence;
    std::map<std::string, std::array<std::int64_t, 2>> entity_docs;
    std::array<std::int64_t, 2> occurrence_totals{};   // n(g)
    std::array<std::int64_t, 2> entities_with_descriptors{};  // e(g)

    std::int64_t total_occurrences() const { return occurrence_totals[0] + occurrence_totals[1]; }
    std::int64_t total_entities() const {  // E
        return entities_with_descriptors[0] + entities_with_descriptors[1];
    }
};

DescriptorCounts collect_counts(const CorpusSnapshot& corpus);

// Per gender, (word, score) sorted by descending score, ties broken by
// ascending word.
struct RankedLexicon {
    std::array<std::vector<std::pair<std::string, double>>, 2> by_gender;
};

// Which counts the min-count rule inspects: the word's total occurrence
// count (default), or its occurrence count within each gender separately.
enum class MinCountScope { total, per_gender };

// PMI(w,g) = ln( n(w,g) * N / (n(w) * n(g)) ) from occurrence counts.
RankedLexicon pmi_traditional(const DescriptorCounts& counts, std::int64_t min_count = 3,
                              MinCountScope scope = MinCountScope::total);

// PMIe(w,g) = ln( e(w,g) * E / (e(w) * e(g)) ): every entity is one
// document, which suppresses words riding on a single popular politician.
// The min-count rule still reads occurrence counts.
RankedLexicon pmi_entity(const DescriptorCounts& counts, std::int64_t min_count = 3,
                         MinCountScope scope = MinCountScope::total);

struct TopWords {
    std::array<std::vector<std::pair<std::string, double>>, 2> by_gender;
    bool truncated_female = false;  // true when the lexicon held fewer than k
    bool truncated_male = false;
};

TopWords top_k(const RankedLexicon& lexicon, std::size_t k);

enum class Sense { profession, belief, attribute, body, family, clothing, label, other };
inline constexpr std::size_t kSenseCount = 8;

std::string_view to_string(Sense s);
Sense parse_sense(std::string_view text);

struct SenseAnnotation {
    std::string word;
    Gender gender = Gender::other;
    Sense sense = Sense::other;
    int sentiment = 0;  // -1, 0, +1
};

// CSV word,gender,sense,sentiment (header tolerated). The three-column form
// word,sense,sentiment needs the ranked word lists to recover which gender a
// word was extracted for; a word on both lists yields two annotations.
std::vector<SenseAnnotation> load_annotations(const std::filesystem::path& path);
std::vector<SenseAnnotation> load_annotations(const std::filesystem::path& path,
                                              const TopWords& extracted);

struct SenseDistribution {
    std::array<std::array<std::int64_t, kSenseCount>, 2> counts{};     // [female|male][sense]
    std::array<std::array<std::int64_t, 3>, 2> sentiment_counts{};     // [gender][-1,0,+1]
    std::vector<Sense> pooled;  // senses absent everywhere, folded into other
    stats::TestResult chi2;
    double cramers_v = 0.0;
    stats::TestResult body_or;          // female body odds vs male
    stats::TestResult professional_or;  // male profession+belief odds vs female
    stats::TestResult attribute_or;     // female attribute odds vs male
};

SenseDistribution sense_distribution(std::span<const SenseAnnotation> annotations);

}  // namespace biaslens
