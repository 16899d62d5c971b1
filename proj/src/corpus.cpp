#include "biaslens/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "biaslens/csv.hpp"
#include "json.hpp"

namespace biaslens {

namespace {

bool is_space_byte(unsigned char c) { return c < 0x80 && std::isspace(c); }
bool is_word_byte(unsigned char c) { return c >= 0x80 || std::isalnum(c); }

std::size_t count_occurrences(std::string_view text, std::string_view needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string_view::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

namespace {

// Walks the whitespace-delimited chunks of a body and hands each token to
// the visitor as (trimmed_view, is_name_token); the name placeholder is
// recognized before trimming so its brackets survive.
template <typename Visitor>
void for_each_token(std::string_view body, Visitor&& visit) {
    std::size_t i = 0;
    const std::size_t n = body.size();
    while (i < n) {
        while (i < n && is_space_byte(body[i])) ++i;
        std::size_t j = i;
        while (j < n && !is_space_byte(body[j])) ++j;
        if (j > i) {
            std::string_view chunk = body.substr(i, j - i);
            if (chunk.find(kNameToken) != std::string_view::npos) {
                visit(kNameToken, true);
            } else {
                std::size_t b = 0, e = chunk.size();
                while (b < e && !is_word_byte(chunk[b])) ++b;
                while (e > b && !is_word_byte(chunk[e - 1])) --e;
                if (e > b) visit(chunk.substr(b, e - b), false);
            }
        }
        i = j;
    }
}

}  // namespace

TokenSequence tokenize(std::string_view body) {
    TokenSequence seq;
    for_each_token(body, [&](std::string_view token, bool is_name) {
        seq.tokens.push_back(is_name ? std::string(kNameToken) : ascii_lower(token));
    });
    return seq;
}

std::size_t token_count(std::string_view body) {
    std::size_t count = 0;
    for_each_token(body, [&](std::string_view, bool) { ++count; });
    return count;
}

CorpusSnapshot CorpusSnapshot::build(std::vector<Comment> comments, std::vector<DataPoint> datapoints,
                                     std::shared_ptr<const Registry> registry) {
    std::stable_sort(datapoints.begin(), datapoints.end(),
                     [](const DataPoint& a, const DataPoint& b) { return a.comment_index < b.comment_index; });

    CorpusSnapshot snap;
    snap.dp_offsets_.assign(comments.size() + 1, 0);
    for (const DataPoint& dp : datapoints) {
        if (dp.comment_index >= comments.size())
            throw std::invalid_argument("snapshot: data point references comment out of range");
        ++snap.dp_offsets_[dp.comment_index + 1];
    }
    for (std::size_t c = 0; c < comments.size(); ++c) {
        std::size_t have = snap.dp_offsets_[c + 1];
        if (have != comments[c].surface_references.size())
            throw std::invalid_argument("snapshot: comment '" + comments[c].comment_id +
                                        "' has " + std::to_string(comments[c].surface_references.size()) +
                                        " references but " + std::to_string(have) + " data points");
        snap.dp_offsets_[c + 1] += snap.dp_offsets_[c];
    }

    snap.counts_.comments = comments.size();
    snap.counts_.datapoints = datapoints.size();
    for (const Comment& c : comments) ++snap.counts_.comments_by_group[static_cast<int>(c.group)];
    for (const DataPoint& dp : datapoints) ++snap.counts_.datapoints_by_gender[static_cast<int>(dp.gender)];

    snap.comments_ = std::move(comments);
    snap.datapoints_ = std::move(datapoints);
    snap.registry_ = std::move(registry);
    return snap;
}

CorpusSnapshot CorpusSnapshot::subset(const std::vector<bool>& keep_comment) const {
    std::vector<std::uint32_t> remap(comments_.size(), 0);
    std::vector<Comment> kept_comments;
    for (std::size_t c = 0; c < comments_.size(); ++c) {
        if (keep_comment[c]) {
            remap[c] = static_cast<std::uint32_t>(kept_comments.size());
            kept_comments.push_back(comments_[c]);
        }
    }
    std::vector<DataPoint> kept_dps;
    for (const DataPoint& dp : datapoints_) {
        if (keep_comment[dp.comment_index]) {
            kept_dps.push_back(dp);
            kept_dps.back().comment_index = remap[dp.comment_index];
        }
    }
    return build(std::move(kept_comments), std::move(kept_dps), registry_);
}

GroupMap load_group_map(const std::filesystem::path& path) {
    GroupMap map;
    auto rows = csv::read_file(path);
    std::size_t start = 0;
    if (!rows.empty() && !rows[0].empty() && rows[0][0] == "subreddit") start = 1;
    for (std::size_t i = start; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != 2)
            throw IngestError("group map: row " + std::to_string(i + 1) + " needs 2 fields");
        try {
            map[row[0]] = parse_group(row[1]);
        } catch (const std::invalid_argument& e) {
            throw IngestError("group map: row " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return map;
}

namespace {

// Parses one JSONL record; throws std::invalid_argument with the reason on
// any schema violation.
void parse_comment_line(const std::string& line, const Registry& registry, const GroupMap& group_map,
                        std::uint32_t comment_index, Comment& out_comment,
                        std::vector<DataPoint>& out_dps) {
    nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded()) throw std::invalid_argument("invalid JSON");
    if (!doc.is_object()) throw std::invalid_argument("record is not an object");

    auto require = [&](const char* key) -> const nlohmann::json& {
        auto it = doc.find(key);
        if (it == doc.end()) throw std::invalid_argument(std::string("missing field '") + key + "'");
        return *it;
    };

    const auto& id = require("id");
    const auto& subreddit = require("subreddit");
    const auto& body = require("body");
    const auto& created = require("created_utc");
    const auto& mentions = require("mentions");
    if (!id.is_string() || id.get_ref<const std::string&>().empty())
        throw std::invalid_argument("'id' must be a non-empty string");
    if (!subreddit.is_string()) throw std::invalid_argument("'subreddit' must be a string");
    if (!body.is_string()) throw std::invalid_argument("'body' must be a string");
    if (!created.is_number_integer()) throw std::invalid_argument("'created_utc' must be an integer");
    if (!mentions.is_array()) throw std::invalid_argument("'mentions' must be an array");
    if (mentions.empty()) throw std::invalid_argument("comment has no resolvable mentions");

    Comment c;
    c.comment_id = id.get<std::string>();
    c.subreddit = subreddit.get<std::string>();
    c.body = body.get<std::string>();
    c.created_at = created.get<std::int64_t>();
    auto git = group_map.find(c.subreddit);
    c.group = git == group_map.end() ? Group::none : git->second;

    std::vector<DataPoint> dps;
    for (const auto& m : mentions) {
        if (!m.is_object()) throw std::invalid_argument("mention is not an object");
        auto eit = m.find("entity");
        auto sit = m.find("surface");
        if (eit == m.end() || !eit->is_string())
            throw std::invalid_argument("mention missing string 'entity'");
        if (sit == m.end() || !sit->is_string())
            throw std::invalid_argument("mention missing string 'surface'");
        DataPoint dp;
        dp.comment_index = comment_index;
        dp.entity_id = eit->get<std::string>();
        dp.surface = sit->get<std::string>();
        const EntityRecord* rec = registry.find(dp.entity_id);
        if (!rec) throw std::invalid_argument("unknown entity '" + dp.entity_id + "'");
        dp.gender = rec->gender;
        if (auto dit = m.find("descriptors"); dit != m.end() && !dit->is_null()) {
            if (!dit->is_array()) throw std::invalid_argument("'descriptors' must be an array");
            for (const auto& d : *dit) {
                if (!d.is_string()) throw std::invalid_argument("descriptor must be a string");
                dp.descriptors.push_back(ascii_lower(d.get<std::string>()));
            }
        }
        if (auto xit = m.find("ext_sentiment"); xit != m.end() && !xit->is_null()) {
            if (!xit->is_string()) throw std::invalid_argument("'ext_sentiment' must be a string or null");
            dp.external_sentiment = parse_ext_sentiment(xit->get<std::string>());
        }
        c.surface_references.push_back({dp.entity_id, dp.surface});
        dps.push_back(std::move(dp));
    }

    std::size_t name_tokens = count_occurrences(c.body, kNameToken);
    if (name_tokens != dps.size())
        throw std::invalid_argument("body has " + std::to_string(name_tokens) + " " +
                                    std::string(kNameToken) + " tokens but " +
                                    std::to_string(dps.size()) + " mentions");

    out_comment = std::move(c);
    out_dps = std::move(dps);
}

}  // namespace

LoadResult load_corpus(const std::filesystem::path& path, std::shared_ptr<const Registry> registry,
                       const GroupMap& group_map, double max_malformed_fraction) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open corpus file: " + path.string());
    if (!registry) throw std::invalid_argument("load_corpus: null registry");

    std::vector<Comment> comments;
    std::vector<DataPoint> datapoints;
    IngestReport report;
    std::string line;
    std::size_t line_no = 0;
    std::unordered_map<std::string, std::size_t> seen_ids;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++report.total_lines;
        Comment c;
        std::vector<DataPoint> dps;
        try {
            parse_comment_line(line, *registry, group_map,
                               static_cast<std::uint32_t>(comments.size()), c, dps);
            auto [it, inserted] = seen_ids.emplace(c.comment_id, line_no);
            if (!inserted)
                throw std::invalid_argument("duplicate comment id '" + c.comment_id +
                                            "' (first seen at line " + std::to_string(it->second) + ")");
        } catch (const std::invalid_argument& e) {
            ++report.malformed;
            report.issues.push_back({line_no, e.what()});
            continue;
        }
        comments.push_back(std::move(c));
        for (auto& dp : dps) datapoints.push_back(std::move(dp));
        ++report.loaded;
    }

    if (report.total_lines > 0) {
        double frac = static_cast<double>(report.malformed) / static_cast<double>(report.total_lines);
        if (frac > max_malformed_fraction) {
            std::string msg = "corpus ingest aborted: " + std::to_string(report.malformed) + " of " +
                              std::to_string(report.total_lines) + " lines malformed (limit " +
                              std::to_string(max_malformed_fraction * 100.0) + "%); first issues:";
            for (std::size_t i = 0; i < report.issues.size() && i < 5; ++i)
                msg += "\n  line " + std::to_string(report.issues[i].line) + ": " + report.issues[i].reason;
            throw IngestError(msg);
        }
    }

    LoadResult result;
    result.corpus = CorpusSnapshot::build(std::move(comments), std::move(datapoints), std::move(registry));
    result.report = std::move(report);
    return result;
}

BotFilterResult filter_bots(const CorpusSnapshot& corpus, const std::vector<std::string>& patterns) {
    if (patterns.empty()) throw std::invalid_argument("filter_bots: empty pattern list");
    std::vector<std::string> lowered;
    lowered.reserve(patterns.size());
    for (const auto& p : patterns) lowered.push_back(ascii_lower(p));

    const auto& comments = corpus.comments();
    std::vector<bool> keep(comments.size(), true);
    BotFilterResult result;
    for (std::size_t i = 0; i < comments.size(); ++i) {
        std::string body = ascii_lower(comments[i].body);
        for (const auto& p : lowered) {
            if (!p.empty() && body.find(p) != std::string::npos) {
                keep[i] = false;
                result.removed_comment_ids.push_back(comments[i].comment_id);
                break;
            }
        }
    }
    result.corpus = corpus.subset(keep);
    return result;
}

std::map<std::string, CorpusSnapshot> partition(const CorpusSnapshot& corpus, PartitionKey by) {
    const auto& comments = corpus.comments();
    std::map<std::string, std::vector<bool>> masks;
    for (std::size_t i = 0; i < comments.size(); ++i) {
        std::string key = by == PartitionKey::group ? std::string(to_string(comments[i].group))
                                                    : comments[i].subreddit;
        auto [it, inserted] = masks.emplace(std::move(key), std::vector<bool>());
        if (inserted) it->second.assign(comments.size(), false);
        it->second[i] = true;
    }
    std::map<std::string, CorpusSnapshot> parts;
    for (auto& [key, mask] : masks) parts.emplace(key, corpus.subset(mask));
    return parts;
}

CorpusSnapshot exclude_entity(const CorpusSnapshot& corpus, std::string_view entity_id) {
    if (corpus.registry() && !corpus.registry()->contains(entity_id))
        throw std::out_of_range("exclude_entity: unknown entity id '" + std::string(entity_id) + "'");
    std::vector<bool> keep(corpus.comments().size(), true);
    for (const DataPoint& dp : corpus.datapoints()) {
        if (dp.entity_id == entity_id) keep[dp.comment_index] = false;
    }
    return corpus.subset(keep);
}

}  // namespace biaslens
