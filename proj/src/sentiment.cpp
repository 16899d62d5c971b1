#include "biaslens/sentiment.hpp"

#include <charconv>
#include <fstream>
#include <set>

namespace biaslens {

namespace {

bool parse_score(std::string_view field, double& out) {
    auto res = std::from_chars(field.data(), field.data() + field.size(), out);
    return res.ec == std::errc{} && res.ptr == field.data() + field.size();
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

}  // namespace

void VadLexicon::add(std::string word, VadScores scores) {
    for (double s : {scores.valence, scores.arousal, scores.dominance})
        if (s < 0.0 || s > 1.0)
            throw IngestError("vad lexicon: score out of [0,1] for word '" + word + "'");
    entries_[ascii_lower(word)] = scores;
}

const VadScores* VadLexicon::find(std::string_view word) const {
    auto it = entries_.find(std::string(word));
    return it == entries_.end() ? nullptr : &it->second;
}

VadLexicon VadLexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open VAD lexicon: " + path.string());
    VadLexicon lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 4)
            throw IngestError("vad lexicon line " + std::to_string(line_no) + ": expected 4 fields");
        VadScores s;
        bool ok = parse_score(fields[1], s.valence) && parse_score(fields[2], s.arousal) &&
                  parse_score(fields[3], s.dominance);
        if (!ok) {
            if (line_no == 1) continue;  // header line
            throw IngestError("vad lexicon line " + std::to_string(line_no) + ": bad scores");
        }
        lex.add(std::string(fields[0]), s);
    }
    return lex;
}

CommentAffect score_comment(std::string_view body, const VadLexicon& lexicon) {
    CommentAffect affect;
    TokenSequence tokens = tokenize(body);
    affect.total_tokens = tokens.count();
    double v = 0.0, a = 0.0, d = 0.0;
    for (const std::string& token : tokens.tokens) {
        const VadScores* s = lexicon.find(token);
        if (!s) continue;
        v += s->valence;
        a += s->arousal;
        d += s->dominance;
        ++affect.in_corpus_count;
    }
    if (affect.in_corpus_count > 0) {
        double n = static_cast<double>(affect.in_corpus_count);
        affect.valence = v / n;
        affect.arousal = a / n;
        affect.dominance = d / n;
    }
    return affect;
}

namespace {

struct ScoredComment {
    std::size_t comment_index;
    Gender gender;
    CommentAffect affect;
};

// Affect-scored comments with their attributed gender(s); multi-entity
// comments contribute once per distinct binary gender when included.
std::vector<ScoredComment> score_corpus(const CorpusSnapshot& corpus, const VadLexicon& lexicon,
                                        bool include_multi_entity, std::size_t& zero_coverage) {
    std::vector<ScoredComment> out;
    zero_coverage = 0;
    const auto& dps = corpus.datapoints();
    for (std::size_t c = 0; c < corpus.comments().size(); ++c) {
        std::set<Gender> genders;
        std::set<std::string_view> entities;
        for (std::size_t i = corpus.datapoint_begin(c); i < corpus.datapoint_end(c); ++i) {
            entities.insert(dps[i].entity_id);
            if (binary_index(dps[i].gender)) genders.insert(dps[i].gender);
        }
        if (genders.empty()) continue;
        if (!include_multi_entity && entities.size() != 1) continue;
        CommentAffect affect = score_comment(corpus.comments()[c].body, lexicon);
        if (!affect.defined()) {
            ++zero_coverage;
            continue;
        }
        for (Gender g : genders) out.push_back({c, g, affect});
    }
    return out;
}

AffectDimensionBias dimension_bias(const std::vector<double>& female,
                                   const std::vector<double>& male) {
    AffectDimensionBias bias;
    bias.female = stats::summarize(female);
    bias.male = stats::summarize(male);
    bias.t = stats::t_test_pooled(bias.male, bias.female);
    bias.cohens_d = stats::cohens_d(bias.male, bias.female);
    if (female.size() >= 4 && bias.female.sd > 0.0)
        bias.bimodality_female = stats::bimodality_coefficient(female);
    if (male.size() >= 4 && bias.male.sd > 0.0)
        bias.bimodality_male = stats::bimodality_coefficient(male);
    return bias;
}

}  // namespace

AffectBias affect_bias(const CorpusSnapshot& corpus, const VadLexicon& lexicon,
                       bool include_multi_entity) {
    std::size_t zero_coverage = 0;
    auto scored = score_corpus(corpus, lexicon, include_multi_entity, zero_coverage);
    std::vector<double> val_f, val_m, dom_f, dom_m, aro_f, aro_m;
    for (const auto& sc : scored) {
        if (sc.gender == Gender::female) {
            val_f.push_back(sc.affect.valence);
            dom_f.push_back(sc.affect.dominance);
            aro_f.push_back(sc.affect.arousal);
        } else {
            val_m.push_back(sc.affect.valence);
            dom_m.push_back(sc.affect.dominance);
            aro_m.push_back(sc.affect.arousal);
        }
    }
    if (val_f.size() < 2 || val_m.size() < 2)
        throw std::domain_error("affect_bias: a gender has fewer than 2 scored comments");
    AffectBias out;
    out.valence = dimension_bias(val_f, val_m);
    out.dominance = dimension_bias(dom_f, dom_m);
    out.arousal_female = stats::summarize(aro_f);
    out.arousal_male = stats::summarize(aro_m);
    out.comments_scored = scored.size();
    out.comments_zero_coverage = zero_coverage;
    return out;
}

CrossPartisanAffect cross_partisan_affect(const CorpusSnapshot& corpus, const VadLexicon& lexicon,
                                          bool include_multi_entity) {
    std::size_t zero_coverage = 0;
    auto scored = score_corpus(corpus, lexicon, include_multi_entity, zero_coverage);
    std::vector<PartisanObservation> valence, dominance;
    for (const auto& sc : scored) {
        Group group = corpus.comments()[sc.comment_index].group;
        if (group != Group::left && group != Group::right && group != Group::alt_right) continue;
        PartisanObservation obs;
        obs.gender = std::string(to_string(sc.gender));
        obs.group = std::string(to_string(group));
        obs.value = sc.affect.valence;
        valence.push_back(obs);
        obs.value = sc.affect.dominance;
        dominance.push_back(std::move(obs));
    }
    if (valence.empty())
        throw std::domain_error("cross_partisan_affect: no partisan scored comments");
    CrossPartisanAffect out;
    out.valence = cross_partisan_anova(valence);
    out.dominance = cross_partisan_anova(dominance);
    return out;
}

ExternalLabelBias external_label_bias(const CorpusSnapshot& corpus) {
    ExternalLabelBias out;
    const auto& dps = corpus.datapoints();
    for (std::size_t c = 0; c < corpus.comments().size(); ++c) {
        std::size_t begin = corpus.datapoint_begin(c), end = corpus.datapoint_end(c);
        if (begin == end) continue;
        bool single = true;
        for (std::size_t i = begin + 1; i < end && single; ++i)
            single = dps[i].entity_id == dps[begin].entity_id;
        if (!single) continue;
        auto idx = binary_index(dps[begin].gender);
        if (!idx) continue;
        std::optional<ExtSentiment> label;
        for (std::size_t i = begin; i < end && !label; ++i) label = dps[i].external_sentiment;
        if (!label) continue;
        ++out.counts[*idx][*label == ExtSentiment::positive ? 0 : 1];
    }
    std::int64_t female_total = out.counts[0][0] + out.counts[0][1];
    std::int64_t male_total = out.counts[1][0] + out.counts[1][1];
    if (female_total == 0 || male_total == 0)
        throw std::domain_error("external_label_bias: labels missing for a gender");

    stats::ContingencyTable table;
    table.row_labels = {"female", "male"};
    table.col_labels = {"positive", "negative"};
    table.counts = {{out.counts[0][0], out.counts[0][1]}, {out.counts[1][0], out.counts[1][1]}};
    out.chi2 = stats::chi_square(table);
    out.cramers_v = stats::cramers_v(out.chi2.statistic, table.total(), 2, 2);
    out.male_positive_or =
        stats::odds_ratio(out.counts[1][0], out.counts[1][1], out.counts[0][0], out.counts[0][1]);
    out.male_positive_or.label = "or:male_positive";
    return out;
}

}  // namespace biaslens
