#include "biaslens/lexical.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "biaslens/csv.hpp"

namespace biaslens {

DescriptorCounts collect_counts(const CorpusSnapshot& corpus) {
    DescriptorCounts counts;
    std::unordered_map<std::string, std::unordered_set<std::string>> entity_words;
    std::unordered_map<std::string, int> entity_gender;
    bool any = false;
    for (const DataPoint& dp : corpus.datapoints()) {
        auto idx = binary_index(dp.gender);
        if (!idx) continue;
        for (const std::string& raw : dp.descriptors) {
            std::string word = ascii_lower(raw);
            if (word.empty()) continue;
            any = true;
            ++counts.occurrence[word][*idx];
            ++counts.occurrence_totals[*idx];
            if (entity_words[dp.entity_id].insert(word).second) ++counts.entity_docs[word][*idx];
            entity_gender[dp.entity_id] = *idx;
        }
    }
    if (!any) throw std::domain_error("collect_counts: corpus has no descriptors");
    std::int64_t set_insertions = 0;
    for (const auto& [entity, words] : entity_words) {
        if (!words.empty()) ++counts.entities_with_descriptors[entity_gender[entity]];
        set_insertions += static_cast<std::int64_t>(words.size());
    }
    // e(w) decomposes into e(w,f) + e(w,m): the per-gender document tallies
    // must add up to the total number of (entity, word) incidences.
    std::int64_t doc_total = 0;
    for (const auto& [word, docs] : counts.entity_docs) doc_total += docs[0] + docs[1];
    if (doc_total != set_insertions)
        throw std::logic_error("collect_counts: entity-document decomposition broken");
    return counts;
}

namespace {

bool passes_min_count(const std::array<std::int64_t, 2>& occ, std::int64_t min_count,
                      MinCountScope scope) {
    if (scope == MinCountScope::total) return occ[0] + occ[1] >= min_count;
    return occ[0] >= min_count && occ[1] >= min_count;
}

void sort_ranked(RankedLexicon& lex) {
    for (auto& list : lex.by_gender) {
        std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
    }
}

}  // namespace

RankedLexicon pmi_traditional(const DescriptorCounts& counts, std::int64_t min_count,
                              MinCountScope scope) {
    if (counts.total_occurrences() <= 0)
        throw std::invalid_argument("pmi_traditional: no descriptor occurrences");
    const double n_total = static_cast<double>(counts.total_occurrences());
    RankedLexicon lex;
    for (const auto& [word, occ] : counts.occurrence) {
        if (!passes_min_count(occ, min_count, scope)) continue;
        double n_word = static_cast<double>(occ[0] + occ[1]);
        for (int g = 0; g < 2; ++g) {
            if (occ[g] <= 0) continue;
            double n_gender = static_cast<double>(counts.occurrence_totals[g]);
            double score = std::log(static_cast<double>(occ[g]) * n_total / (n_word * n_gender));
            lex.by_gender[g].emplace_back(word, score);
        }
    }
    sort_ranked(lex);
    return lex;
}

RankedLexicon pmi_entity(const DescriptorCounts& counts, std::int64_t min_count,
                         MinCountScope scope) {
    if (counts.total_entities() <= 0)
        throw std::invalid_argument("pmi_entity: no entities with descriptors");
    const double e_total = static_cast<double>(counts.total_entities());
    RankedLexicon lex;
    for (const auto& [word, docs] : counts.entity_docs) {
        auto occ_it = counts.occurrence.find(word);
        if (occ_it == counts.occurrence.end() ||
            !passes_min_count(occ_it->second, min_count, scope))
            continue;
        double e_word = static_cast<double>(docs[0] + docs[1]);
        for (int g = 0; g < 2; ++g) {
            if (docs[g] <= 0) continue;
            double e_gender = static_cast<double>(counts.entities_with_descriptors[g]);
            double score = std::log(static_cast<double>(docs[g]) * e_total / (e_word * e_gender));
            lex.by_gender[g].emplace_back(word, score);
        }
    }
    sort_ranked(lex);
    return lex;
}

TopWords top_k(const RankedLexicon& lexicon, std::size_t k) {
    if (k < 1) throw std::invalid_argument("top_k: k must be >= 1");
    TopWords out;
    for (int g = 0; g < 2; ++g) {
        const auto& list = lexicon.by_gender[g];
        std::size_t take = std::min(k, list.size());
        out.by_gender[g].assign(list.begin(), list.begin() + take);
    }
    out.truncated_female = lexicon.by_gender[0].size() < k;
    out.truncated_male = lexicon.by_gender[1].size() < k;
    return out;
}

std::string_view to_string(Sense s) {
    switch (s) {
        case Sense::profession: return "profession";
        case Sense::belief: return "belief";
        case Sense::attribute: return "attribute";
        case Sense::body: return "body";
        case Sense::family: return "family";
        case Sense::clothing: return "clothing";
        case Sense::label: return "label";
        default: return "other";
    }
}

Sense parse_sense(std::string_view text) {
    std::string t = ascii_lower(text);
    if (t == "profession") return Sense::profession;
    if (t == "belief") return Sense::belief;
    if (t == "attribute") return Sense::attribute;
    if (t == "body") return Sense::body;
    if (t == "family") return Sense::family;
    if (t == "clothing") return Sense::clothing;
    if (t == "label") return Sense::label;
    if (t == "other") return Sense::other;
    throw std::invalid_argument("unknown sense: '" + std::string(text) + "'");
}

namespace {

int parse_sentiment(const std::string& field) {
    if (field == "-1") return -1;
    if (field == "0") return 0;
    if (field == "1" || field == "+1") return 1;
    throw IngestError("annotation sentiment must be -1, 0 or 1; got '" + field + "'");
}

bool is_header(const std::vector<std::string>& row) { return !row.empty() && row[0] == "word"; }

}  // namespace

std::vector<SenseAnnotation> load_annotations(const std::filesystem::path& path) {
    auto rows = csv::read_file(path);
    std::vector<SenseAnnotation> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 0 && is_header(rows[i])) continue;
        const auto& row = rows[i];
        if (row.size() != 4)
            throw IngestError("annotations row " + std::to_string(i + 1) +
                              ": expected word,gender,sense,sentiment");
        SenseAnnotation a;
        a.word = ascii_lower(row[0]);
        a.gender = parse_gender(row[1]);
        a.sense = parse_sense(row[2]);
        a.sentiment = parse_sentiment(row[3]);
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<SenseAnnotation> load_annotations(const std::filesystem::path& path,
                                              const TopWords& extracted) {
    auto rows = csv::read_file(path);
    if (!rows.empty() && !is_header(rows[0]) && rows[0].size() == 4) return load_annotations(path);
    if (!rows.empty() && is_header(rows[0]) && rows[0].size() == 4) return load_annotations(path);

    std::array<std::unordered_set<std::string>, 2> in_list;
    for (int g = 0; g < 2; ++g)
        for (const auto& [word, score] : extracted.by_gender[g]) in_list[g].insert(word);

    std::vector<SenseAnnotation> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 0 && is_header(rows[i])) continue;
        const auto& row = rows[i];
        if (row.size() != 3)
            throw IngestError("annotations row " + std::to_string(i + 1) +
                              ": expected word,sense,sentiment");
        SenseAnnotation a;
        a.word = ascii_lower(row[0]);
        a.sense = parse_sense(row[1]);
        a.sentiment = parse_sentiment(row[2]);
        for (int g = 0; g < 2; ++g) {
            if (in_list[g].count(a.word)) {
                a.gender = g == 0 ? Gender::female : Gender::male;
                out.push_back(a);
            }
        }
    }
    return out;
}

SenseDistribution sense_distribution(std::span<const SenseAnnotation> annotations) {
    SenseDistribution out;
    for (const SenseAnnotation& a : annotations) {
        auto idx = binary_index(a.gender);
        if (!idx) throw std::invalid_argument("sense_distribution: annotation without binary gender");
        ++out.counts[*idx][static_cast<int>(a.sense)];
        ++out.sentiment_counts[*idx][a.sentiment + 1];
    }
    std::array<std::int64_t, 2> totals{};
    for (int g = 0; g < 2; ++g)
        for (std::size_t s = 0; s < kSenseCount; ++s) totals[g] += out.counts[g][s];
    if (totals[0] == 0 || totals[1] == 0)
        throw std::domain_error("sense_distribution: need annotations for both genders");

    // Senses absent from both genders would carry zero expected counts; they
    // are pooled into "other" (numerically: dropped) and reported as such.
    stats::ContingencyTable table;
    table.row_labels = {"female", "male"};
    for (std::size_t s = 0; s < kSenseCount; ++s) {
        if (out.counts[0][s] + out.counts[1][s] == 0) {
            out.pooled.push_back(static_cast<Sense>(s));
            continue;
        }
        table.col_labels.emplace_back(to_string(static_cast<Sense>(s)));
    }
    table.counts.assign(2, {});
    for (int g = 0; g < 2; ++g)
        for (std::size_t s = 0; s < kSenseCount; ++s)
            if (out.counts[0][s] + out.counts[1][s] > 0) table.counts[g].push_back(out.counts[g][s]);

    out.chi2 = stats::chi_square(table);
    out.cramers_v = stats::cramers_v(out.chi2.statistic, table.total(), 2, table.cols());

    // A category empty for both genders leaves its odds ratio undefined
    // (NaN statistic) instead of failing the whole distribution.
    auto sense_or = [&](int first, std::initializer_list<Sense> senses, const std::string& label) {
        std::int64_t in_first = 0, in_second = 0;
        for (Sense s : senses) {
            in_first += out.counts[first][static_cast<int>(s)];
            in_second += out.counts[1 - first][static_cast<int>(s)];
        }
        stats::TestResult r;
        r.label = label;
        try {
            r = stats::odds_ratio(in_first, totals[first] - in_first, in_second,
                                  totals[1 - first] - in_second);
            r.label = label;
        } catch (const std::domain_error&) {
            // keep the NaN statistic
        }
        return r;
    };
    out.body_or = sense_or(0, {Sense::body}, "or:female_body");
    out.professional_or =
        sense_or(1, {Sense::profession, Sense::belief}, "or:male_profession_belief");
    out.attribute_or = sense_or(0, {Sense::attribute}, "or:female_attribute");
    return out;
}

}  // namespace biaslens
