#include "biaslens/nominal.hpp"

#include <unordered_map>

namespace biaslens {

std::string_view to_string(NameClass c) {
    switch (c) {
        case NameClass::given: return "given";
        case NameClass::surname: return "surname";
        case NameClass::full: return "full";
        default: return "other";
    }
}

const std::vector<std::string>& default_honorifics() {
    static const std::vector<std::string> titles = {
        "mr",       "mrs",      "ms",        "miss",          "mx",           "dr",
        "sir",      "dame",     "lord",      "lady",          "madam",        "madame",
        "sen",      "senator",  "rep",       "representative", "congressman", "congresswoman",
        "gov",      "governor", "president", "pres",          "pm",           "premier",
        "chancellor", "minister", "secretary", "mayor",       "councillor",   "justice"};
    return titles;
}

const std::vector<std::string>& HonorificPolicy::effective_titles() const {
    return titles.empty() ? default_honorifics() : titles;
}

namespace {

std::string_view trim_ws(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool is_honorific(std::string_view token, const std::vector<std::string>& titles) {
    if (!token.empty() && token.back() == '.') token.remove_suffix(1);
    for (const auto& t : titles)
        if (ascii_iequals(token, t)) return true;
    return false;
}

std::string_view strip_honorifics(std::string_view surface, const std::vector<std::string>& titles) {
    for (;;) {
        auto space = surface.find(' ');
        if (space == std::string_view::npos) return surface;  // lone title stays as written
        if (!is_honorific(surface.substr(0, space), titles)) return surface;
        surface = trim_ws(surface.substr(space + 1));
        if (surface.empty()) return surface;
    }
}

}  // namespace

NameClass classify_reference(std::string_view surface, const NameSet& names,
                             const HonorificPolicy& policy) {
    std::string_view s = trim_ws(surface);
    if (s.empty()) throw std::invalid_argument("classify_reference: empty surface");
    if (policy.strip) s = strip_honorifics(s, policy.effective_titles());
    if (ascii_iequals(s, names.full)) return NameClass::full;
    if (ascii_iequals(s, names.given)) return NameClass::given;
    if (ascii_iequals(s, names.surname)) return NameClass::surname;
    return NameClass::other;
}

std::int64_t NameTable::gender_total(int gender_idx) const {
    std::int64_t sum = 0;
    for (auto v : counts[gender_idx]) sum += v;
    return sum;
}

double NameTable::proportion_pct(int gender_idx, NameClass c) const {
    std::int64_t total = gender_total(gender_idx);
    if (total == 0) return 0.0;
    return 100.0 * static_cast<double>(counts[gender_idx][static_cast<int>(c)]) /
           static_cast<double>(total);
}

stats::ContingencyTable NameTable::contingency() const {
    stats::ContingencyTable table;
    table.row_labels = {"female", "male"};
    table.col_labels = {"given", "surname", "full", "other"};
    table.counts = {{counts[0].begin(), counts[0].end()}, {counts[1].begin(), counts[1].end()}};
    return table;
}

NameTable name_distribution(const CorpusSnapshot& corpus, const Registry& registry,
                            const HonorificPolicy& policy) {
    if (corpus.empty()) throw std::invalid_argument("name_distribution: empty corpus");
    NameTable table;
    std::unordered_map<std::string, NameSet> name_cache;
    for (const DataPoint& dp : corpus.datapoints()) {
        auto idx = binary_index(dp.gender);
        if (!idx) continue;
        auto it = name_cache.find(dp.entity_id);
        if (it == name_cache.end())
            it = name_cache.emplace(dp.entity_id, effective_names(registry.at(dp.entity_id))).first;
        NameClass c = classify_reference(dp.surface, it->second, policy);
        ++table.counts[*idx][static_cast<int>(c)];
    }
    return table;
}

namespace {

// Odds of `cls` (optionally pooled with `extra`) for gender `first` against
// the opposite gender.
stats::TestResult class_odds(const NameTable& table, int first, NameClass cls,
                             std::optional<NameClass> extra, const std::string& label) {
    int second = 1 - first;
    std::int64_t in_first = table.counts[first][static_cast<int>(cls)];
    std::int64_t in_second = table.counts[second][static_cast<int>(cls)];
    if (extra) {
        in_first += table.counts[first][static_cast<int>(*extra)];
        in_second += table.counts[second][static_cast<int>(*extra)];
    }
    stats::TestResult r = stats::odds_ratio(in_first, table.gender_total(first) - in_first,
                                            in_second, table.gender_total(second) - in_second);
    r.label = label;
    return r;
}

}  // namespace

NominalTests nominal_tests(const NameTable& table) {
    NominalTests out;
    auto contingency = table.contingency();
    out.chi2 = stats::chi_square(contingency);
    out.cramers_v = stats::cramers_v(out.chi2.statistic, contingency.total(), 2, 4);
    out.given_or = class_odds(table, 0, NameClass::given, std::nullopt, "or:female_given");
    out.surname_or = class_odds(table, 1, NameClass::surname, std::nullopt, "or:male_surname");
    out.full_or = class_odds(table, 0, NameClass::full, std::nullopt, "or:female_full");
    out.professional_or =
        class_odds(table, 1, NameClass::surname, NameClass::full, "or:male_professional");
    return out;
}

}  // namespace biaslens
