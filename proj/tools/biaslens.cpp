// biaslens: corpus gender-bias quantification over entity-linked comment
// corpora. `biaslens run --config FILE [overrides]` executes the full
// pipeline and writes a report bundle; exit codes: 0 success, 1 config
// error, 2 ingest error, 3 partial analysis failure.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "biaslens/report.hpp"
#include "biaslens/types.hpp"

int main(int argc, char** argv) {
    CLI::App app{"biaslens - gender-bias quantification for entity-linked comment corpora"};
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "run the analysis pipeline");
    std::string config_path;
    std::string corpus, registry, vad, groups, annotations, bot_patterns, out, format;
    std::vector<std::string> exclude;
    int permutations = -1, top_k = -1, threads = -1;
    long long seed = -1;
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--corpus", corpus, "corpus JSONL path");
    run->add_option("--registry", registry, "registry CSV path");
    run->add_option("--vad", vad, "VAD lexicon TSV path");
    run->add_option("--groups", groups, "subreddit,group CSV path");
    run->add_option("--annotations", annotations, "sense annotation CSV path");
    run->add_option("--bot-patterns", bot_patterns, "bot pattern file, one per line");
    run->add_option("--exclude-entity", exclude, "entity id to exclude (repeatable)");
    run->add_option("--permutations", permutations, "null-model sample count K");
    run->add_option("--seed", seed, "master RNG seed");
    run->add_option("--top-k", top_k, "gendered-word list length");
    run->add_option("--out", out, "output directory");
    run->add_option("--format", format, "comma-separated formats: json,csv");
    run->add_option("--threads", threads, "worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        biaslens::RunConfig config;
        if (!config_path.empty()) config = biaslens::RunConfig::from_json_file(config_path);

        // flag overrides win over the config file
        if (!corpus.empty()) config.corpus = corpus;
        if (!registry.empty()) config.registry = registry;
        if (!vad.empty()) config.vad = vad;
        if (!groups.empty()) config.groups = groups;
        if (!annotations.empty()) config.annotations = annotations;
        if (!bot_patterns.empty()) config.bot_patterns = bot_patterns;
        if (!exclude.empty()) config.exclude_entities = exclude;
        if (permutations >= 0) config.permutations = permutations;
        if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
        if (top_k >= 0) config.top_k = top_k;
        if (threads >= 0) config.threads = threads;
        if (!out.empty()) config.out = out;
        if (!format.empty()) {
            config.formats.clear();
            std::size_t start = 0;
            while (start <= format.size()) {
                auto comma = format.find(',', start);
                if (comma == std::string::npos) comma = format.size();
                if (comma > start) config.formats.insert(format.substr(start, comma - start));
                start = comma + 1;
            }
        }

        auto started = std::chrono::steady_clock::now();
        biaslens::ReportBundle bundle = biaslens::run_pipeline(config);
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        biaslens::Manifest manifest = biaslens::emit_report(bundle, config.out, config.formats, elapsed);

        std::cerr << "biaslens: wrote " << manifest.files.size() << " files to " << config.out.string()
                  << " in " << elapsed << "s\n";
        if (bundle.any_error) {
            std::cerr << "biaslens: some analysis sections failed; see the report for details\n";
            return 3;
        }
        return 0;
    } catch (const biaslens::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const biaslens::IngestError& e) {
        std::cerr << "ingest error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
