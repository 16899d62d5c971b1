#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "biaslens/registry.hpp"
#include "biaslens/types.hpp"

namespace biaslens {

// Placeholder every resolved entity reference was replaced with upstream.
inline constexpr std::string_view kNameToken = "[NAME]";

struct SurfaceReference {
    std::string entity_id;
    std::string surface;
};

struct Comment {
    std::string comment_id;
    std::string subreddit;
    Group group = Group::none;
    std::string body;
    std::vector<SurfaceReference> surface_references;
    std::int64_t created_at = 0;
    bool is_bot = false;
};

// One (comment, entity-mention) pair; a comment mentioning k politicians
// yields k data points.
struct DataPoint {
    std::uint32_t comment_index = 0;
    std::string entity_id;
    std::string surface;
    std::vector<std::string> descriptors;
    std::optional<ExtSentiment> external_sentiment;
    Gender gender = Gender::other;  // resolved from the registry at ingest
};

struct TokenSequence {
    std::vector<std::string> tokens;
    std::size_t count() const { return tokens.size(); }
};

// Lower-cases, splits on whitespace, strips leading/trailing characters that
// are neither ASCII alphanumerics nor UTF-8 continuation/lead bytes. Internal
// apostrophes and hyphens survive; a chunk containing "[NAME]" collapses to
// that single token. Pure-punctuation chunks vanish.
TokenSequence tokenize(std::string_view body);

// Same rules, no token materialization; equal to tokenize(body).count().
std::size_t token_count(std::string_view body);

struct CorpusCounts {
    std::size_t comments = 0;
    std::size_t datapoints = 0;
    std::array<std::size_t, 3> datapoints_by_gender{};  // {female, male, other}
    std::array<std::size_t, 4> comments_by_group{};     // {left, right, alt_right, none}
};

// Immutable after construction; all accessors are safe for concurrent reads.
class CorpusSnapshot {
public:
    CorpusSnapshot() = default;

    // Validates the mention-count invariant (sum of per-comment references ==
    // number of data points, with data points sorted by comment) and caches
    // the per-gender / per-group totals.
    static CorpusSnapshot build(std::vector<Comment> comments, std::vector<DataPoint> datapoints,
                                std::shared_ptr<const Registry> registry);

    const std::vector<Comment>& comments() const { return comments_; }
    const std::vector<DataPoint>& datapoints() const { return datapoints_; }
    const std::shared_ptr<const Registry>& registry() const { return registry_; }
    const CorpusCounts& counts() const { return counts_; }
    bool empty() const { return comments_.empty(); }

    // Data points of one comment occupy the contiguous index range
    // [datapoint_begin(c), datapoint_end(c)).
    std::size_t datapoint_begin(std::size_t comment_index) const { return dp_offsets_[comment_index]; }
    std::size_t datapoint_end(std::size_t comment_index) const { return dp_offsets_[comment_index + 1]; }

    // New snapshot from the comments whose flag is set; data-point comment
    // indices are remapped.
    CorpusSnapshot subset(const std::vector<bool>& keep_comment) const;

private:
    std::vector<Comment> comments_;
    std::vector<DataPoint> datapoints_;
    std::vector<std::size_t> dp_offsets_;
    std::shared_ptr<const Registry> registry_;
    CorpusCounts counts_;
};

struct IngestIssue {
    std::size_t line = 0;  // 1-based line number in the source file
    std::string reason;
};

struct IngestReport {
    std::size_t total_lines = 0;
    std::size_t loaded = 0;
    std::size_t malformed = 0;
    std::vector<IngestIssue> issues;
};

struct LoadResult {
    CorpusSnapshot corpus;
    IngestReport report;
};

using GroupMap = std::unordered_map<std::string, Group>;

// Two-column CSV subreddit,group; header tolerated. Subreddits absent from
// the table fall into Group::none.
GroupMap load_group_map(const std::filesystem::path& path);

// JSONL, one comment per line:
//   {"id":..., "subreddit":..., "body":..., "created_utc":...,
//    "mentions":[{"entity":..., "surface":..., "descriptors":[...],
//                 "ext_sentiment":"positive"|"negative"|null}]}
// Malformed lines (bad JSON, schema violations, unknown entities, mention
// count not matching the [NAME] tokens in the body, no mentions at all) are
// recorded with their line number. More than max_malformed_fraction of
// malformed lines aborts the load.
LoadResult load_corpus(const std::filesystem::path& path, std::shared_ptr<const Registry> registry,
                       const GroupMap& group_map, double max_malformed_fraction = 0.01);

struct BotFilterResult {
    CorpusSnapshot corpus;
    std::vector<std::string> removed_comment_ids;
};

// Case-insensitive substring search of each pattern in the comment body.
BotFilterResult filter_bots(const CorpusSnapshot& corpus, const std::vector<std::string>& patterns);

enum class PartitionKey { group, subreddit };

std::map<std::string, CorpusSnapshot> partition(const CorpusSnapshot& corpus, PartitionKey by);

// Removes every comment that mentions the entity at all, not just the
// mention records.
CorpusSnapshot exclude_entity(const CorpusSnapshot& corpus, std::string_view entity_id);

}  // namespace biaslens
