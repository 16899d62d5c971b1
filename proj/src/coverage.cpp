#include "biaslens/coverage.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace biaslens {

namespace {

// Gender of the single distinct entity in a comment, or nullopt for
// multi-entity (or binary-less) comments.
std::optional<Gender> single_entity_gender(const CorpusSnapshot& corpus, std::size_t comment_index) {
    std::size_t begin = corpus.datapoint_begin(comment_index);
    std::size_t end = corpus.datapoint_end(comment_index);
    if (begin == end) return std::nullopt;
    const auto& dps = corpus.datapoints();
    const std::string& first = dps[begin].entity_id;
    for (std::size_t i = begin + 1; i < end; ++i)
        if (dps[i].entity_id != first) return std::nullopt;
    return dps[begin].gender;
}

}  // namespace

GenderShares mention_proportions(const CorpusSnapshot& corpus) {
    if (corpus.empty()) throw std::invalid_argument("mention_proportions: empty corpus");
    const Registry& registry = *corpus.registry();

    GenderShares out;
    out.female_datapoints = corpus.counts().datapoints_by_gender[0];
    out.male_datapoints = corpus.counts().datapoints_by_gender[1];
    double binary_total = static_cast<double>(out.female_datapoints + out.male_datapoints);
    if (binary_total > 0) {
        out.female_datapoint_pct = 100.0 * out.female_datapoints / binary_total;
        out.male_datapoint_pct = 100.0 * out.male_datapoints / binary_total;
    }

    std::unordered_set<std::string> seen_f, seen_m;
    for (const DataPoint& dp : corpus.datapoints()) {
        if (dp.gender == Gender::female) seen_f.insert(dp.entity_id);
        else if (dp.gender == Gender::male) seen_m.insert(dp.entity_id);
    }
    out.female_entities_mentioned = seen_f.size();
    out.male_entities_mentioned = seen_m.size();
    if (registry.gender_total(Gender::female) > 0)
        out.female_entities_mentioned_pct =
            100.0 * seen_f.size() / static_cast<double>(registry.gender_total(Gender::female));
    if (registry.gender_total(Gender::male) > 0)
        out.male_entities_mentioned_pct =
            100.0 * seen_m.size() / static_cast<double>(registry.gender_total(Gender::male));
    return out;
}

std::vector<double> InDegreeTable::degrees(Gender g) const {
    std::vector<double> out;
    for (const Row& row : rows)
        if (row.gender == g) out.push_back(static_cast<double>(row.degree));
    return out;
}

std::vector<std::pair<std::int64_t, double>> InDegreeTable::ccdf(Gender g) const {
    std::vector<std::int64_t> ds;
    for (const Row& row : rows)
        if (row.gender == g) ds.push_back(row.degree);
    std::sort(ds.begin(), ds.end());
    std::vector<std::pair<std::int64_t, double>> points;
    const double n = static_cast<double>(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i > 0 && ds[i] == ds[i - 1]) continue;
        // entities with degree >= ds[i] are those at positions i..n-1
        points.emplace_back(ds[i], (n - static_cast<double>(i)) / n);
    }
    return points;
}

InDegreeTable in_degree_distribution(const CorpusSnapshot& corpus, InDegreeMode mode) {
    if (corpus.empty()) throw std::invalid_argument("in_degree_distribution: empty corpus");
    std::map<std::string, InDegreeTable::Row> acc;
    const auto& dps = corpus.datapoints();
    if (mode == InDegreeMode::mentions) {
        for (const DataPoint& dp : dps) {
            auto& row = acc[dp.entity_id];
            row.entity_id = dp.entity_id;
            row.gender = dp.gender;
            ++row.degree;
        }
    } else {
        // data points are contiguous per comment, so distinct-comment counts
        // only need the previous comment index per entity
        std::unordered_map<std::string, std::uint32_t> last_comment;
        for (const DataPoint& dp : dps) {
            auto& row = acc[dp.entity_id];
            auto it = last_comment.find(dp.entity_id);
            if (it != last_comment.end() && it->second == dp.comment_index && row.degree > 0) continue;
            last_comment[dp.entity_id] = dp.comment_index;
            row.entity_id = dp.entity_id;
            row.gender = dp.gender;
            ++row.degree;
        }
    }
    InDegreeTable table;
    table.rows.reserve(acc.size());
    for (auto& [id, row] : acc) table.rows.push_back(std::move(row));
    return table;
}

stats::TestResult compare_in_degrees(const InDegreeTable& table) {
    std::vector<double> f = table.degrees(Gender::female);
    std::vector<double> m = table.degrees(Gender::male);
    if (f.empty() || m.empty())
        throw std::domain_error("compare_in_degrees: a gender has no mentioned entities");
    return stats::ks_two_sample(f, m);
}

LengthComparison compare_lengths(const CorpusSnapshot& corpus) {
    std::vector<double> lengths_f, lengths_m;
    for (std::size_t c = 0; c < corpus.comments().size(); ++c) {
        auto g = single_entity_gender(corpus, c);
        if (!g) continue;
        auto idx = binary_index(*g);
        if (!idx) continue;
        double len = static_cast<double>(token_count(corpus.comments()[c].body));
        (*idx == 0 ? lengths_f : lengths_m).push_back(len);
    }
    if (lengths_f.empty() || lengths_m.empty())
        throw std::domain_error("compare_lengths: a gender has no single-entity comments");
    LengthComparison out;
    out.female = stats::summarize(lengths_f);
    out.male = stats::summarize(lengths_m);
    out.t = stats::t_test_pooled(out.male, out.female);
    out.cohens_d = stats::cohens_d(out.male, out.female);
    return out;
}

CrossPartisanComparison cross_partisan_anova(const std::vector<PartisanObservation>& observations) {
    std::vector<double> values;
    std::vector<std::string> gender_labels, group_labels;
    std::map<std::string, std::vector<double>> cells;
    for (const auto& obs : observations) {
        values.push_back(obs.value);
        gender_labels.push_back(obs.gender);
        group_labels.push_back(obs.group);
        cells[obs.group + ":" + obs.gender].push_back(obs.value);
    }
    CrossPartisanComparison out;
    out.anova = stats::anova_two_way(values, gender_labels, group_labels, "gender", "group");
    out.tukey = stats::tukey_hsd(cells);
    return out;
}

CrossPartisanComparison cross_partisan_lengths(const CorpusSnapshot& corpus) {
    std::vector<PartisanObservation> observations;
    for (std::size_t c = 0; c < corpus.comments().size(); ++c) {
        const Comment& comment = corpus.comments()[c];
        if (comment.group != Group::left && comment.group != Group::right &&
            comment.group != Group::alt_right)
            continue;
        auto g = single_entity_gender(corpus, c);
        if (!g || !binary_index(*g)) continue;
        observations.push_back({static_cast<double>(token_count(comment.body)),
                                std::string(to_string(*g)), std::string(to_string(comment.group))});
    }
    if (observations.empty())
        throw std::domain_error("cross_partisan_lengths: no partisan single-entity comments");
    return cross_partisan_anova(observations);
}

}  // namespace biaslens
