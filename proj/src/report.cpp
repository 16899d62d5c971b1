#include "biaslens/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <span>

#include "biaslens/combinatorial.hpp"
#include "biaslens/corpus.hpp"
#include "biaslens/coverage.hpp"
#include "biaslens/csv.hpp"
#include "biaslens/lexical.hpp"
#include "biaslens/nominal.hpp"
#include "biaslens/sentiment.hpp"

namespace biaslens {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view data) {
    std::uint64_t h = fnv1a64(data);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

namespace {

// Streaming FNV-1a so fingerprints never materialize the whole corpus.
class FnvStream {
public:
    void update(std::string_view data) {
        for (unsigned char c : data) {
            hash_ ^= c;
            hash_ *= 0x100000001B3ULL;
        }
    }
    void update_sep() { update("\x1f"); }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash_));
        return std::string(buf);
    }

private:
    std::uint64_t hash_ = 0xCBF29CE484222325ULL;
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

using nlohmann::json;

json test_json(const stats::TestResult& t) {
    json j;
    j["label"] = t.label;
    j["statistic"] = t.statistic;
    if (std::isfinite(t.df)) j["df"] = t.df;
    if (std::isfinite(t.df2)) j["df2"] = t.df2;
    j["p"] = t.p_value;
    if (t.p_less_than) j["p_qualifier"] = "<";
    if (t.effect_size) j["effect_size"] = *t.effect_size;
    if (t.ci_low && t.ci_high) j["ci95"] = {*t.ci_low, *t.ci_high};
    return j;
}

json summary_json(const stats::SummaryStats& s) {
    return {{"mean", s.mean}, {"sd", s.sd}, {"n", s.n}};
}

json cross_partisan_json(const CrossPartisanComparison& cp) {
    json anova;
    anova["gender"] = test_json(cp.anova.factor_a);
    anova["group"] = test_json(cp.anova.factor_b);
    anova["interaction"] = test_json(cp.anova.interaction);
    anova["residual_df"] = cp.anova.residual_df;
    anova["mse"] = cp.anova.mse;
    json tukey = json::array();
    for (const auto& cmp : cp.tukey) {
        json item;
        item["lhs"] = cmp.lhs;
        item["rhs"] = cmp.rhs;
        item["mean_difference"] = cmp.mean_difference;
        item["q"] = cmp.test.statistic;
        item["df"] = cmp.test.df;
        item["p"] = cmp.test.p_value;
        if (cmp.test.effect_size) item["cohens_d"] = *cmp.test.effect_size;
        tukey.push_back(std::move(item));
    }
    return {{"anova", std::move(anova)}, {"tukey", std::move(tukey)}};
}

std::string scope_file_tag(std::string_view scope) {
    std::string tag(scope);
    for (char& c : tag)
        if (c == ':' || c == '/') c = '-';
    return tag;
}

const char* cell_key(int given, int add) {
    static const char* keys[2][2] = {{"female:female", "female:male"},
                                     {"male:female", "male:male"}};
    return keys[given][add];
}

std::string histogram_csv_rows(const std::string& tag, std::span<const double> values, int bins) {
    std::string rows;
    if (values.empty()) return rows;
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (hi <= lo) hi = lo + 1e-9;
    std::vector<std::int64_t> count(bins, 0);
    for (double v : values) {
        int b = static_cast<int>((v - lo) / (hi - lo) * bins);
        ++count[std::clamp(b, 0, bins - 1)];
    }
    for (int b = 0; b < bins; ++b) {
        double bin_lo = lo + (hi - lo) * b / bins;
        double bin_hi = lo + (hi - lo) * (b + 1) / bins;
        rows += tag + "," + csv::format_double(bin_lo) + "," + csv::format_double(bin_hi) + "," +
                std::to_string(count[b]) + "\n";
    }
    return rows;
}

struct PipelineContext {
    const RunConfig* config = nullptr;
    std::shared_ptr<const Registry> registry;
    VadLexicon vad;
    std::optional<std::filesystem::path> annotations;
};

json run_section(const std::function<json()>& fn, bool& any_error) {
    try {
        return fn();
    } catch (const std::exception& e) {
        any_error = true;
        return json{{"error", e.what()}};
    }
}

json coverage_section(const CorpusSnapshot& corpus, const PipelineContext& ctx,
                      const std::string& scope, bool cross_partisan, ReportBundle& bundle) {
    const RunConfig& cfg = *ctx.config;
    json section;
    GenderShares shares = mention_proportions(corpus);
    section["proportions"] = {
        {"female_datapoint_pct", shares.female_datapoint_pct},
        {"male_datapoint_pct", shares.male_datapoint_pct},
        {"female_entities_mentioned_pct", shares.female_entities_mentioned_pct},
        {"male_entities_mentioned_pct", shares.male_entities_mentioned_pct},
        {"female_datapoints", shares.female_datapoints},
        {"male_datapoints", shares.male_datapoints},
        {"female_entities_mentioned", shares.female_entities_mentioned},
        {"male_entities_mentioned", shares.male_entities_mentioned}};

    InDegreeMode mode =
        cfg.indegree_unique_comments ? InDegreeMode::unique_comments : InDegreeMode::mentions;
    InDegreeTable table = in_degree_distribution(corpus, mode);
    json indeg;
    indeg["mode"] = cfg.indegree_unique_comments ? "unique_comments" : "mentions";
    auto degrees_f = table.degrees(Gender::female);
    auto degrees_m = table.degrees(Gender::male);
    indeg["max_female"] =
        degrees_f.empty() ? 0.0 : *std::max_element(degrees_f.begin(), degrees_f.end());
    indeg["max_male"] =
        degrees_m.empty() ? 0.0 : *std::max_element(degrees_m.begin(), degrees_m.end());
    indeg["ks"] = test_json(compare_in_degrees(table));
    section["in_degree"] = std::move(indeg);

    if (cfg.formats.count("csv")) {
        std::string csv_text = "k,ccdf,gender\n";
        for (Gender g : {Gender::female, Gender::male}) {
            for (const auto& [k, frac] : table.ccdf(g))
                csv_text += std::to_string(k) + "," + csv::format_double(frac) + "," +
                            std::string(to_string(g)) + "\n";
        }
        bundle.sidecars.emplace_back("plots/ccdf_" + scope_file_tag(scope) + ".csv",
                                     std::move(csv_text));
    }

    LengthComparison lengths = compare_lengths(corpus);
    section["lengths"] = {{"t", test_json(lengths.t)},
                          {"cohens_d", lengths.cohens_d},
                          {"female", summary_json(lengths.female)},
                          {"male", summary_json(lengths.male)}};

    if (cross_partisan) {
        bool ignored = false;
        section["cross_partisan"] =
            run_section([&] { return cross_partisan_json(cross_partisan_lengths(corpus)); }, ignored);
    }
    return section;
}

json combinatorial_section(const CorpusSnapshot& corpus, const PipelineContext& ctx,
                           const std::string& scope, ReportBundle& bundle) {
    const RunConfig& cfg = *ctx.config;
    MentionUnit unit = cfg.dedup_mentions ? MentionUnit::distinct_entity : MentionUnit::record;
    SlotModel model =
        cfg.permutation_unit == "resample" ? SlotModel::resample : SlotModel::permute;
    std::uint64_t scope_seed = splitmix64(cfg.seed ^ fnv1a64(scope));

    LTable observed = conditional_L(corpus, unit);
    NullEnsemble ensemble =
        null_ensemble(corpus, cfg.permutations, scope_seed, model, unit, cfg.threads);
    auto significance = combinatorial_significance(observed, ensemble);

    json section;
    section["k"] = ensemble.k;
    section["seed"] = scope_seed;
    section["model"] = model == SlotModel::permute ? "permute" : "resample";
    section["mention_unit"] = unit == MentionUnit::record ? "record" : "distinct_entity";
    json obs, sig;
    for (int given = 0; given < 2; ++given) {
        for (int add = 0; add < 2; ++add) {
            const char* key = cell_key(given, add);
            obs[key] = observed.defined[given][add] ? json(observed.values[given][add]) : json();
            json cell;
            cell["p"] = significance[given][add].p;
            if (significance[given][add].less_than) cell["p_qualifier"] = "<";
            cell["usable_nulls"] = significance[given][add].usable_nulls;
            sig[key] = std::move(cell);
        }
    }
    section["observed"] = std::move(obs);
    section["significance"] = std::move(sig);

    if (cfg.formats.count("csv")) {
        std::string hist = "cell,bin_lo,bin_hi,count\n";
        std::string ltab = "given,additional,value,p,p_qualifier\n";
        for (int given = 0; given < 2; ++given) {
            for (int add = 0; add < 2; ++add) {
                std::vector<double> nulls;
                for (const LTable& s : ensemble.samples)
                    if (s.defined[given][add]) nulls.push_back(s.values[given][add]);
                hist += histogram_csv_rows(cell_key(given, add), nulls, 60);
                ltab += std::string(given == 0 ? "female" : "male") + "," +
                        (add == 0 ? "female" : "male") + "," +
                        csv::format_double(observed.values[given][add]) + "," +
                        csv::format_double(significance[given][add].p) + "," +
                        (significance[given][add].less_than ? "<" : "=") + "\n";
            }
        }
        bundle.sidecars.emplace_back("plots/null_hist_" + scope_file_tag(scope) + ".csv",
                                     std::move(hist));
        bundle.sidecars.emplace_back("tables/l_table_" + scope_file_tag(scope) + ".csv",
                                     std::move(ltab));
    }
    return section;
}

json name_table_json(const NameTable& table) {
    json counts, proportions;
    for (int g = 0; g < 2; ++g) {
        const char* gender = g == 0 ? "female" : "male";
        for (int c = 0; c < 4; ++c) {
            NameClass cls = static_cast<NameClass>(c);
            counts[gender][std::string(to_string(cls))] = table.counts[g][c];
            proportions[gender][std::string(to_string(cls))] = table.proportion_pct(g, cls);
        }
    }
    return {{"counts", std::move(counts)}, {"proportions_pct", std::move(proportions)}};
}

json nominal_section(const CorpusSnapshot& corpus, const PipelineContext& ctx,
                     const std::string& scope, ReportBundle& bundle) {
    const RunConfig& cfg = *ctx.config;
    HonorificPolicy policy;
    policy.strip = cfg.strip_honorifics;
    NameTable table = name_distribution(corpus, *ctx.registry, policy);
    NominalTests tests = nominal_tests(table);

    json section = name_table_json(table);
    section["chi2"] = test_json(tests.chi2);
    section["cramers_v"] = tests.cramers_v;
    section["odds_ratios"] = {{"female_given", test_json(tests.given_or)},
                              {"male_surname", test_json(tests.surname_or)},
                              {"female_full", test_json(tests.full_or)},
                              {"male_professional", test_json(tests.professional_or)}};

    // Both honorific modes are reported whenever they disagree by more than
    // half a percentage point on any cell.
    HonorificPolicy opposite = policy;
    opposite.strip = !policy.strip;
    NameTable alt = name_distribution(corpus, *ctx.registry, opposite);
    double max_delta = 0.0;
    for (int g = 0; g < 2; ++g)
        for (int c = 0; c < 4; ++c)
            max_delta = std::max(max_delta,
                                 std::fabs(table.proportion_pct(g, static_cast<NameClass>(c)) -
                                           alt.proportion_pct(g, static_cast<NameClass>(c))));
    if (max_delta > 0.5) {
        json sensitivity = name_table_json(alt);
        sensitivity["strip_honorifics"] = opposite.strip;
        sensitivity["max_cell_delta_pct"] = max_delta;
        section["honorific_sensitivity"] = std::move(sensitivity);
    }

    if (cfg.formats.count("csv")) {
        std::string csv_text = "gender,class,count,proportion_pct\n";
        for (int g = 0; g < 2; ++g) {
            for (int c = 0; c < 4; ++c) {
                NameClass cls = static_cast<NameClass>(c);
                csv_text += std::string(g == 0 ? "female" : "male") + "," +
                            std::string(to_string(cls)) + "," + std::to_string(table.counts[g][c]) +
                            "," + csv::format_double(table.proportion_pct(g, cls)) + "\n";
            }
        }
        bundle.sidecars.emplace_back("tables/name_distribution_" + scope_file_tag(scope) + ".csv",
                                     std::move(csv_text));
    }
    return section;
}

json affect_dimension_json(const AffectDimensionBias& d) {
    return {{"t", test_json(d.t)},
            {"cohens_d", d.cohens_d},
            {"female", summary_json(d.female)},
            {"male", summary_json(d.male)},
            {"bimodality",
             {{"female", d.bimodality_female}, {"male", d.bimodality_male}}}};
}

json sentimental_section(const CorpusSnapshot& corpus, const PipelineContext& ctx,
                         const std::string& scope, bool cross_partisan, ReportBundle& bundle) {
    const RunConfig& cfg = *ctx.config;
    AffectBias bias = affect_bias(corpus, ctx.vad, cfg.include_multi_entity_affect);
    json section;
    section["valence"] = affect_dimension_json(bias.valence);
    section["dominance"] = affect_dimension_json(bias.dominance);
    section["arousal"] = {{"female", summary_json(bias.arousal_female)},
                          {"male", summary_json(bias.arousal_male)}};
    section["comments_scored"] = bias.comments_scored;
    section["comments_zero_coverage"] = bias.comments_zero_coverage;

    bool ignored = false;
    section["external_labels"] = run_section(
        [&] {
            ExternalLabelBias ext = external_label_bias(corpus);
            return json{{"counts",
                         {{"female", {{"positive", ext.counts[0][0]}, {"negative", ext.counts[0][1]}}},
                          {"male", {{"positive", ext.counts[1][0]}, {"negative", ext.counts[1][1]}}}}},
                        {"chi2", test_json(ext.chi2)},
                        {"cramers_v", ext.cramers_v},
                        {"male_positive_or", test_json(ext.male_positive_or)}};
        },
        ignored);

    if (cross_partisan) {
        section["cross_partisan"] = run_section(
            [&] {
                CrossPartisanAffect cp =
                    cross_partisan_affect(corpus, ctx.vad, cfg.include_multi_entity_affect);
                return json{{"valence", cross_partisan_json(cp.valence)},
                            {"dominance", cross_partisan_json(cp.dominance)}};
            },
            ignored);
    }

    if (cfg.formats.count("csv")) {
        std::array<std::vector<double>, 2> valence, dominance;
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
            CommentAffect affect = score_comment(corpus.comments()[c].body, ctx.vad);
            if (!affect.defined()) continue;
            valence[*idx].push_back(affect.valence);
            dominance[*idx].push_back(affect.dominance);
        }
        std::string hist = "dimension,gender,bin_lo,bin_hi,count\n";
        for (int g = 0; g < 2; ++g) {
            const std::string gender = g == 0 ? "female" : "male";
            hist += histogram_csv_rows("valence," + gender, valence[g], 40);
            hist += histogram_csv_rows("dominance," + gender, dominance[g], 40);
        }
        bundle.sidecars.emplace_back("plots/affect_hist_" + scope_file_tag(scope) + ".csv",
                                     std::move(hist));
    }
    return section;
}

json ranked_words_json(const TopWords& top) {
    json out;
    for (int g = 0; g < 2; ++g) {
        json list = json::array();
        for (const auto& [word, score] : top.by_gender[g]) list.push_back({word, score});
        out[g == 0 ? "female" : "male"] = std::move(list);
    }
    return out;
}

std::string ranked_csv(const TopWords& top) {
    std::string text = "gender,rank,word,score\n";
    for (int g = 0; g < 2; ++g) {
        for (std::size_t i = 0; i < top.by_gender[g].size(); ++i) {
            const auto& [word, score] = top.by_gender[g][i];
            text += std::string(g == 0 ? "female" : "male") + "," + std::to_string(i + 1) + "," +
                    csv::escape_field(word) + "," + csv::format_double(score) + "\n";
        }
    }
    return text;
}

json sense_distribution_json(const SenseDistribution& dist) {
    json counts, sentiment;
    for (int g = 0; g < 2; ++g) {
        const char* gender = g == 0 ? "female" : "male";
        for (std::size_t s = 0; s < kSenseCount; ++s)
            counts[gender][std::string(to_string(static_cast<Sense>(s)))] = dist.counts[g][s];
        sentiment[gender] = {{"negative", dist.sentiment_counts[g][0]},
                             {"neutral", dist.sentiment_counts[g][1]},
                             {"positive", dist.sentiment_counts[g][2]}};
    }
    json pooled = json::array();
    for (Sense s : dist.pooled) pooled.push_back(std::string(to_string(s)));
    return {{"counts", std::move(counts)},
            {"sentiment", std::move(sentiment)},
            {"pooled_senses", std::move(pooled)},
            {"chi2", test_json(dist.chi2)},
            {"cramers_v", dist.cramers_v},
            {"odds_ratios",
             {{"female_body", test_json(dist.body_or)},
              {"male_profession_belief", test_json(dist.professional_or)},
              {"female_attribute", test_json(dist.attribute_or)}}}};
}

json lexical_section(const CorpusSnapshot& corpus, const PipelineContext& ctx,
                     const std::string& scope, bool is_group_scope, ReportBundle& bundle) {
    const RunConfig& cfg = *ctx.config;
    MinCountScope mc_scope =
        cfg.per_gender_min_count ? MinCountScope::per_gender : MinCountScope::total;
    DescriptorCounts counts = collect_counts(corpus);
    RankedLexicon pmi = pmi_traditional(counts, cfg.min_count, mc_scope);
    RankedLexicon pmie = pmi_entity(counts, cfg.min_count, mc_scope);
    std::size_t k = static_cast<std::size_t>(is_group_scope ? cfg.top_k_group : cfg.top_k);
    TopWords top_pmi = top_k(pmi, k);
    TopWords top_pmie = top_k(pmie, k);

    json section;
    section["distinct_descriptors"] = counts.occurrence.size();
    section["entities_with_descriptors"] = {{"female", counts.entities_with_descriptors[0]},
                                            {"male", counts.entities_with_descriptors[1]}};
    section["occurrences"] = {{"female", counts.occurrence_totals[0]},
                              {"male", counts.occurrence_totals[1]}};
    section["top_k"] = k;
    section["pmi_top"] = ranked_words_json(top_pmi);
    section["pmie_top"] = ranked_words_json(top_pmie);

    if (ctx.annotations) {
        bool ignored = false;
        section["senses"] = run_section(
            [&] {
                auto annotations = load_annotations(*ctx.annotations, top_pmie);
                // keep only annotations for words this scope actually extracted
                std::array<std::unordered_map<std::string, bool>, 2> in_scope;
                for (int g = 0; g < 2; ++g)
                    for (const auto& [word, score] : top_pmie.by_gender[g]) in_scope[g][word] = true;
                std::vector<SenseAnnotation> usable;
                for (const auto& a : annotations) {
                    auto idx = binary_index(a.gender);
                    if (idx && in_scope[*idx].count(a.word)) usable.push_back(a);
                }
                SenseDistribution dist = sense_distribution(usable);
                json j = sense_distribution_json(dist);
                j["annotations_used"] = usable.size();
                if (cfg.formats.count("csv")) {
                    std::string csv_text = "gender,sense,count\n";
                    for (int g = 0; g < 2; ++g)
                        for (std::size_t s = 0; s < kSenseCount; ++s)
                            csv_text += std::string(g == 0 ? "female" : "male") + "," +
                                        std::string(to_string(static_cast<Sense>(s))) + "," +
                                        std::to_string(dist.counts[g][s]) + "\n";
                    bundle.sidecars.emplace_back(
                        "tables/sense_distribution_" + scope_file_tag(scope) + ".csv",
                        std::move(csv_text));
                }
                return j;
            },
            ignored);
    }

    if (cfg.formats.count("csv")) {
        bundle.sidecars.emplace_back("tables/lexicon_pmi_" + scope_file_tag(scope) + ".csv",
                                     ranked_csv(top_pmi));
        bundle.sidecars.emplace_back("tables/lexicon_pmie_" + scope_file_tag(scope) + ".csv",
                                     ranked_csv(top_pmie));
    }
    return section;
}

json scope_counts_json(const CorpusSnapshot& corpus) {
    const CorpusCounts& c = corpus.counts();
    return {{"comments", c.comments},
            {"datapoints", c.datapoints},
            {"datapoints_by_gender",
             {{"female", c.datapoints_by_gender[0]},
              {"male", c.datapoints_by_gender[1]},
              {"other", c.datapoints_by_gender[2]}}},
            {"comments_by_group",
             {{"left", c.comments_by_group[0]},
              {"right", c.comments_by_group[1]},
              {"alt_right", c.comments_by_group[2]},
              {"none", c.comments_by_group[3]}}}};
}

json analyze_scope(const CorpusSnapshot& corpus, const std::string& scope, bool overall_like,
                   const PipelineContext& ctx, ReportBundle& bundle) {
    const RunConfig& cfg = *ctx.config;
    json scope_json;
    scope_json["counts"] = scope_counts_json(corpus);
    if (cfg.analyses.count("coverage"))
        scope_json["coverage"] = run_section(
            [&] { return coverage_section(corpus, ctx, scope, overall_like, bundle); },
            bundle.any_error);
    if (cfg.analyses.count("combinatorial"))
        scope_json["combinatorial"] = run_section(
            [&] { return combinatorial_section(corpus, ctx, scope, bundle); }, bundle.any_error);
    if (cfg.analyses.count("nominal"))
        scope_json["nominal"] = run_section(
            [&] { return nominal_section(corpus, ctx, scope, bundle); }, bundle.any_error);
    if (cfg.analyses.count("sentimental"))
        scope_json["sentimental"] = run_section(
            [&] { return sentimental_section(corpus, ctx, scope, overall_like, bundle); },
            bundle.any_error);
    if (cfg.analyses.count("lexical"))
        scope_json["lexical"] = run_section(
            [&] { return lexical_section(corpus, ctx, scope, !overall_like, bundle); },
            bundle.any_error);
    return scope_json;
}

std::string corpus_fingerprint(const CorpusSnapshot& corpus) {
    FnvStream fnv;
    const auto& dps = corpus.datapoints();
    for (std::size_t c = 0; c < corpus.comments().size(); ++c) {
        const Comment& comment = corpus.comments()[c];
        fnv.update(comment.comment_id);
        fnv.update_sep();
        fnv.update(comment.subreddit);
        fnv.update_sep();
        fnv.update(to_string(comment.group));
        fnv.update_sep();
        fnv.update(std::to_string(comment.created_at));
        fnv.update_sep();
        fnv.update(comment.body);
        fnv.update_sep();
        for (std::size_t i = corpus.datapoint_begin(c); i < corpus.datapoint_end(c); ++i) {
            fnv.update(dps[i].entity_id);
            fnv.update_sep();
            fnv.update(dps[i].surface);
            fnv.update_sep();
            for (const auto& d : dps[i].descriptors) {
                fnv.update(d);
                fnv.update_sep();
            }
            if (dps[i].external_sentiment) fnv.update(to_string(*dps[i].external_sentiment));
            fnv.update_sep();
        }
    }
    return fnv.hex();
}

}  // namespace

RunConfig RunConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("config file is not valid JSON: " + path.string());
    RunConfig cfg;
    cfg.apply_json(doc);
    return cfg;
}

void RunConfig::apply_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    static const std::set<std::string> known_keys = {
        "corpus",       "registry",       "groups",
        "vad",          "annotations",    "bot_patterns",
        "analyses",     "permutations",   "seed",
        "min_count",    "per_gender_min_count", "top_k",
        "top_k_group",  "exclude_entities", "out",
        "formats",      "max_malformed_fraction", "strip_honorifics",
        "dedup_mentions", "indegree_unique_comments", "include_multi_entity_affect",
        "permutation_unit", "threads"};
    for (const auto& [key, value] : doc.items())
        if (!known_keys.count(key)) throw ConfigError("config: unknown key '" + key + "'");
    auto get_path = [&](const char* key, std::filesystem::path& target) {
        if (doc.contains(key)) target = doc.at(key).get<std::string>();
    };
    try {
        get_path("corpus", corpus);
        get_path("registry", registry);
        get_path("groups", groups);
        get_path("vad", vad);
        if (doc.contains("annotations") && !doc.at("annotations").is_null())
            annotations = std::filesystem::path(doc.at("annotations").get<std::string>());
        if (doc.contains("bot_patterns") && !doc.at("bot_patterns").is_null())
            bot_patterns = std::filesystem::path(doc.at("bot_patterns").get<std::string>());
        if (doc.contains("analyses")) {
            analyses.clear();
            for (const auto& a : doc.at("analyses")) analyses.insert(a.get<std::string>());
        }
        if (doc.contains("permutations")) permutations = doc.at("permutations").get<int>();
        if (doc.contains("seed")) seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("min_count")) min_count = doc.at("min_count").get<int>();
        if (doc.contains("per_gender_min_count"))
            per_gender_min_count = doc.at("per_gender_min_count").get<bool>();
        if (doc.contains("top_k")) top_k = doc.at("top_k").get<int>();
        if (doc.contains("top_k_group")) top_k_group = doc.at("top_k_group").get<int>();
        if (doc.contains("exclude_entities")) {
            exclude_entities.clear();
            for (const auto& e : doc.at("exclude_entities"))
                exclude_entities.push_back(e.get<std::string>());
        }
        get_path("out", out);
        if (doc.contains("formats")) {
            formats.clear();
            for (const auto& f : doc.at("formats")) formats.insert(f.get<std::string>());
        }
        if (doc.contains("max_malformed_fraction"))
            max_malformed_fraction = doc.at("max_malformed_fraction").get<double>();
        if (doc.contains("strip_honorifics")) strip_honorifics = doc.at("strip_honorifics").get<bool>();
        if (doc.contains("dedup_mentions")) dedup_mentions = doc.at("dedup_mentions").get<bool>();
        if (doc.contains("indegree_unique_comments"))
            indegree_unique_comments = doc.at("indegree_unique_comments").get<bool>();
        if (doc.contains("include_multi_entity_affect"))
            include_multi_entity_affect = doc.at("include_multi_entity_affect").get<bool>();
        if (doc.contains("permutation_unit"))
            permutation_unit = doc.at("permutation_unit").get<std::string>();
        if (doc.contains("threads")) threads = doc.at("threads").get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

json RunConfig::to_json() const {
    json doc;
    doc["corpus"] = corpus.string();
    doc["registry"] = registry.string();
    doc["groups"] = groups.string();
    doc["vad"] = vad.string();
    doc["annotations"] = annotations ? json(annotations->string()) : json();
    doc["bot_patterns"] = bot_patterns ? json(bot_patterns->string()) : json();
    doc["analyses"] = analyses;
    doc["permutations"] = permutations;
    doc["seed"] = seed;
    doc["min_count"] = min_count;
    doc["per_gender_min_count"] = per_gender_min_count;
    doc["top_k"] = top_k;
    doc["top_k_group"] = top_k_group;
    doc["exclude_entities"] = exclude_entities;
    doc["out"] = out.string();
    doc["formats"] = formats;
    doc["max_malformed_fraction"] = max_malformed_fraction;
    doc["strip_honorifics"] = strip_honorifics;
    doc["dedup_mentions"] = dedup_mentions;
    doc["indegree_unique_comments"] = indegree_unique_comments;
    doc["include_multi_entity_affect"] = include_multi_entity_affect;
    doc["permutation_unit"] = permutation_unit;
    doc["threads"] = threads;
    return doc;
}

json RunConfig::analytic_json() const {
    json doc = to_json();
    doc.erase("out");
    doc.erase("formats");
    doc.erase("threads");
    return doc;
}

void RunConfig::validate() const {
    auto must_exist = [](const std::filesystem::path& p, const char* what) {
        if (p.empty()) throw ConfigError(std::string("config: missing ") + what + " path");
        if (!std::filesystem::exists(p))
            throw ConfigError(std::string("config: ") + what + " path does not exist: " + p.string());
    };
    must_exist(corpus, "corpus");
    must_exist(registry, "registry");
    must_exist(groups, "groups");
    must_exist(vad, "vad");
    if (annotations) must_exist(*annotations, "annotations");
    if (bot_patterns) must_exist(*bot_patterns, "bot_patterns");
    if (permutations < 1) throw ConfigError("config: permutations must be >= 1");
    if (min_count < 1) throw ConfigError("config: min_count must be >= 1");
    if (top_k < 1 || top_k_group < 1) throw ConfigError("config: top_k must be >= 1");
    if (max_malformed_fraction < 0.0 || max_malformed_fraction > 1.0)
        throw ConfigError("config: max_malformed_fraction must be in [0,1]");
    static const std::set<std::string> known = {"coverage", "combinatorial", "nominal",
                                                "sentimental", "lexical"};
    for (const auto& a : analyses)
        if (!known.count(a)) throw ConfigError("config: unknown analysis '" + a + "'");
    for (const auto& f : formats)
        if (f != "json" && f != "csv") throw ConfigError("config: unknown format '" + f + "'");
    if (permutation_unit != "mention" && permutation_unit != "resample")
        throw ConfigError("config: permutation_unit must be 'mention' or 'resample'");
}

ReportBundle run_pipeline(const RunConfig& config) {
    config.validate();

    PipelineContext ctx;
    ctx.config = &config;
    ctx.registry = std::make_shared<const Registry>(Registry::load(config.registry));
    GroupMap group_map = load_group_map(config.groups);
    ctx.vad = VadLexicon::load(config.vad);
    ctx.annotations = config.annotations;

    std::vector<std::string> patterns = {"i am a bot"};
    if (config.bot_patterns) {
        patterns.clear();
        std::ifstream in(*config.bot_patterns);
        if (!in) throw ConfigError("cannot open bot-patterns file: " + config.bot_patterns->string());
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) patterns.push_back(line);
        }
        if (patterns.empty()) throw ConfigError("bot-patterns file has no patterns");
    }

    LoadResult loaded =
        load_corpus(config.corpus, ctx.registry, group_map, config.max_malformed_fraction);
    BotFilterResult filtered = filter_bots(loaded.corpus, patterns);
    const CorpusSnapshot& corpus = filtered.corpus;

    ReportBundle bundle;
    json& doc = bundle.document;

    json ingest;
    ingest["total_lines"] = loaded.report.total_lines;
    ingest["loaded"] = loaded.report.loaded;
    ingest["malformed"] = loaded.report.malformed;
    json issues = json::array();
    for (std::size_t i = 0; i < loaded.report.issues.size() && i < 100; ++i)
        issues.push_back({{"line", loaded.report.issues[i].line},
                          {"reason", loaded.report.issues[i].reason}});
    ingest["issues"] = std::move(issues);
    if (loaded.report.issues.size() > 100)
        ingest["issues_truncated"] = loaded.report.issues.size() - 100;

    json bots;
    bots["patterns"] = patterns;
    bots["removed"] = filtered.removed_comment_ids.size();
    json removed_ids = json::array();
    for (std::size_t i = 0; i < filtered.removed_comment_ids.size() && i < 100; ++i)
        removed_ids.push_back(filtered.removed_comment_ids[i]);
    bots["removed_ids"] = std::move(removed_ids);

    std::string config_json = config.analytic_json().dump();
    doc["metadata"] = {{"tool", "biaslens"},
                       {"version", "0.1.0"},
                       {"config", config.analytic_json()},
                       {"config_hash", fnv1a64_hex(config_json)},
                       {"corpus_fingerprint", corpus_fingerprint(corpus)},
                       {"ingest", std::move(ingest)},
                       {"bot_filter", std::move(bots)}};

    json scopes;
    scopes["overall"] = analyze_scope(corpus, "overall", true, ctx, bundle);

    auto groups = partition(corpus, PartitionKey::group);
    for (const char* g : {"left", "right", "alt_right"}) {
        auto it = groups.find(g);
        if (it == groups.end() || it->second.empty()) continue;
        std::string scope = std::string("group:") + g;
        scopes[scope] = analyze_scope(it->second, scope, false, ctx, bundle);
    }

    for (const std::string& entity : config.exclude_entities) {
        std::string scope = "excluding:" + entity;
        scopes[scope] = run_section(
            [&] {
                CorpusSnapshot reduced = exclude_entity(corpus, entity);
                return analyze_scope(reduced, scope, true, ctx, bundle);
            },
            bundle.any_error);
    }
    doc["scopes"] = std::move(scopes);
    return bundle;
}

Manifest emit_report(const ReportBundle& bundle, const std::filesystem::path& out_dir,
                     const std::set<std::string>& formats, double wall_clock_seconds) {
    std::filesystem::create_directories(out_dir);
    Manifest manifest;
    manifest.wall_clock_seconds = wall_clock_seconds;

    auto write_file = [&](const std::string& rel, const std::string& content) {
        std::filesystem::path full = out_dir / rel;
        std::filesystem::create_directories(full.parent_path());
        std::ofstream out(full, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write output file: " + full.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.close();
        manifest.files.push_back({rel, content.size(), fnv1a64_hex(content)});
    };

    if (formats.count("json")) write_file("report.json", bundle.document.dump(2) + "\n");
    if (formats.count("csv"))
        for (const auto& [rel, content] : bundle.sidecars) write_file(rel, content);

    std::sort(manifest.files.begin(), manifest.files.end(),
              [](const EmittedFile& a, const EmittedFile& b) { return a.path < b.path; });

    nlohmann::json mjson;
    mjson["timing_seconds"] = manifest.wall_clock_seconds;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : manifest.files)
        files.push_back({{"path", f.path}, {"bytes", f.bytes}, {"fnv1a64", f.fnv1a64}});
    mjson["files"] = std::move(files);
    std::ofstream mout(out_dir / "manifest.json", std::ios::binary);
    std::string mtext = mjson.dump(2) + "\n";
    mout.write(mtext.data(), static_cast<std::streamsize>(mtext.size()));
    return manifest;
}

}  // namespace biaslens
