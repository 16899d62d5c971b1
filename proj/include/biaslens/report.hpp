#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace biaslens {

// Everything a run needs, loadable from a JSON config file with CLI flag
// overrides applied on top (flags win). A fixed seed makes the emitted
// bundle byte-identical across runs.
struct RunConfig {
    std::filesystem::path corpus;
    std::filesystem::path registry;
    std::filesystem::path groups;
    std::filesystem::path vad;
    std::optional<std::filesystem::path> annotations;
    std::optional<std::filesystem::path> bot_patterns;

    std::set<std::string> analyses = {"coverage", "combinatorial", "nominal", "sentimental",
                                      "lexical"};
    int permutations = 10000;
    std::uint64_t seed = 1;
    int min_count = 3;
    bool per_gender_min_count = false;
    int top_k = 100;
    int top_k_group = 50;
    std::vector<std::string> exclude_entities;
    std::filesystem::path out = "report";
    std::set<std::string> formats = {"json", "csv"};
    double max_malformed_fraction = 0.01;
    bool strip_honorifics = true;
    bool dedup_mentions = false;
    bool indegree_unique_comments = false;
    bool include_multi_entity_affect = false;
    std::string permutation_unit = "mention";  // "mention" | "resample"
    int threads = 0;

    static RunConfig from_json_file(const std::filesystem::path& path);
    void apply_json(const nlohmann::json& doc);  // shared by file load and overrides
    nlohmann::json to_json() const;              // full config, file round-trip
    // The analytic configuration embedded in reports: delivery knobs (output
    // directory, formats, thread count) do not change any computed number
    // and stay out of the reproducibility fingerprint.
    nlohmann::json analytic_json() const;
    void validate() const;  // throws ConfigError
};

struct ReportBundle {
    nlohmann::json document;  // the master report
    // Relative path -> file content for every sidecar CSV.
    std::vector<std::pair<std::string, std::string>> sidecars;
    bool any_error = false;
};

// Ingest, bot-filter, then run every enabled analysis over the overall
// corpus, each partisan group, and each entity-exclusion robustness scope.
// A failing analysis is recorded as an errored section and never aborts the
// others.
ReportBundle run_pipeline(const RunConfig& config);

struct EmittedFile {
    std::string path;  // relative to the output directory
    std::uint64_t bytes = 0;
    std::string fnv1a64;
};

struct Manifest {
    std::vector<EmittedFile> files;
    double wall_clock_seconds = 0.0;  // excluded from determinism guarantees
};

// Writes report.json (json format), the sidecar CSVs (csv format) and a
// manifest.json listing every emitted file with its content hash.
Manifest emit_report(const ReportBundle& bundle, const std::filesystem::path& out_dir,
                     const std::set<std::string>& formats, double wall_clock_seconds = 0.0);

std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

}  // namespace biaslens
