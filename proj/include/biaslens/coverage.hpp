#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biaslens/corpus.hpp"
#include "biaslens/stats/tests.hpp"

namespace biaslens {

// Percentages are over the female/male binary; "other" entities appear in
// snapshot totals but not here.
struct GenderShares {
    double female_datapoint_pct = 0.0;
    double male_datapoint_pct = 0.0;
    double female_entities_mentioned_pct = 0.0;
    double male_entities_mentioned_pct = 0.0;
    std::size_t female_datapoints = 0;
    std::size_t male_datapoints = 0;
    std::size_t female_entities_mentioned = 0;
    std::size_t male_entities_mentioned = 0;
};

GenderShares mention_proportions(const CorpusSnapshot& corpus);

enum class InDegreeMode { mentions, unique_comments };

struct InDegreeTable {
    struct Row {
        std::string entity_id;
        Gender gender = Gender::other;
        std::int64_t degree = 0;
    };
    std::vector<Row> rows;  // sorted by entity_id

    std::vector<double> degrees(Gender g) const;
    // (k, fraction of mentioned entities of this gender with degree >= k),
    // one point per distinct observed degree, ascending.
    std::vector<std::pair<std::int64_t, double>> ccdf(Gender g) const;
};

// In-degree of an entity: number of data points referencing it (default), or
// number of distinct comments in unique_comments mode.
InDegreeTable in_degree_distribution(const CorpusSnapshot& corpus,
                                     InDegreeMode mode = InDegreeMode::mentions);

// KS comparison of the female and male in-degree samples.
stats::TestResult compare_in_degrees(const InDegreeTable& table);

struct LengthComparison {
    stats::TestResult t;
    double cohens_d = 0.0;
    stats::SummaryStats female;
    stats::SummaryStats male;
};

// Pooled t + Cohen's d on token counts of comments that mention exactly one
// distinct politician, split by that politician's gender.
LengthComparison compare_lengths(const CorpusSnapshot& corpus);

struct CrossPartisanComparison {
    stats::AnovaResult anova;
    std::vector<stats::TukeyComparison> tukey;  // over the gender x group cells
};

// Two-way ANOVA (gender, group, interaction) of single-entity comment
// lengths over the left/right/alt_right groups, with Tukey HSD and Cohen's d
// per cell pair. Every one of the six cells must be non-empty.
CrossPartisanComparison cross_partisan_lengths(const CorpusSnapshot& corpus);

// Shared helper: (value, gender label, group label, cell key) rows for
// single-entity partisan comments; used by both the length and the affect
// cross-partisan analyses.
struct PartisanObservation {
    double value = 0.0;
    std::string gender;
    std::string group;
};

CrossPartisanComparison cross_partisan_anova(const std::vector<PartisanObservation>& observations);

}  // namespace biaslens
