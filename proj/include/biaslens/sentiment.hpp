#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>

#include "biaslens/corpus.hpp"
#include "biaslens/coverage.hpp"
#include "biaslens/stats/tests.hpp"

namespace biaslens {

struct VadScores {
    double valence = 0.0;
    double arousal = 0.0;
    double dominance = 0.0;
};

class VadLexicon {
public:
    // Tab-separated word, valence, arousal, dominance in [0,1]; one header
    // line tolerated. Malformed lines and out-of-range scores abort the load.
    static VadLexicon load(const std::filesystem::path& path);

    void add(std::string word, VadScores scores);
    const VadScores* find(std::string_view word) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::unordered_map<std::string, VadScores> entries_;
};

struct CommentAffect {
    double valence = 0.0;
    double arousal = 0.0;
    double dominance = 0.0;
    std::size_t in_corpus_count = 0;  // tokens found in the lexicon
    std::size_t total_tokens = 0;
    bool defined() const { return in_corpus_count >= 1; }
};

// Per-dimension sums averaged over the number of in-lexicon tokens; tokens
// outside the lexicon are ignored; no lemmatization. Zero coverage leaves
// the affect undefined (the comment is excluded from affect statistics, not
// scored 0).
CommentAffect score_comment(std::string_view body, const VadLexicon& lexicon);

struct AffectDimensionBias {
    stats::TestResult t;
    double cohens_d = 0.0;
    stats::SummaryStats female;
    stats::SummaryStats male;
    // Sarle's coefficient per gender; the observed affect distributions are
    // bimodal on real data and this records that without causal claims.
    double bimodality_female = 0.0;
    double bimodality_male = 0.0;
};

struct AffectBias {
    AffectDimensionBias valence;
    AffectDimensionBias dominance;
    // Arousal is scored and reported but takes part in no test.
    stats::SummaryStats arousal_female;
    stats::SummaryStats arousal_male;
    std::size_t comments_scored = 0;
    std::size_t comments_zero_coverage = 0;
};

// Pooled t + Cohen's d on average valence and dominance of single-entity
// comments, split by gender. include_multi_entity adds multi-entity comments
// once per distinct mentioned binary gender (sensitivity mode).
AffectBias affect_bias(const CorpusSnapshot& corpus, const VadLexicon& lexicon,
                       bool include_multi_entity = false);

struct CrossPartisanAffect {
    CrossPartisanComparison valence;
    CrossPartisanComparison dominance;
};

CrossPartisanAffect cross_partisan_affect(const CorpusSnapshot& corpus, const VadLexicon& lexicon,
                                          bool include_multi_entity = false);

struct ExternalLabelBias {
    std::array<std::array<std::int64_t, 2>, 2> counts{};  // [female|male][positive|negative]
    stats::TestResult chi2;
    double cramers_v = 0.0;
    stats::TestResult male_positive_or;  // male positive-label odds vs female
};

// 2x2 gender x sentiment-label analysis of externally supplied labels on
// single-entity comments; the classifier that produced them is out of scope.
ExternalLabelBias external_label_bias(const CorpusSnapshot& corpus);

}  // namespace biaslens
