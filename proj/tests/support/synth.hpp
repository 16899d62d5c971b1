#pragma once

// Deterministic synthetic corpus files for pipeline and CLI tests: a
// registry, group map, VAD lexicon, descriptor annotations, and a JSONL
// corpus with every analysis surface populated (all six gender x group
// cells, multi-entity comments, external labels, bot disclaimers).

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

namespace fixtures {

struct SynthPaths {
    std::filesystem::path corpus;
    std::filesystem::path registry;
    std::filesystem::path groups;
    std::filesystem::path vad;
    std::filesystem::path annotations;
};

struct SynthSpec {
    std::size_t comments = 200;
    std::uint64_t seed = 42;
    std::size_t females = 8;
    std::size_t males = 14;
};

inline SynthPaths generate_corpus(const std::filesystem::path& dir, const SynthSpec& spec = {}) {
    std::filesystem::create_directories(dir);
    std::mt19937_64 rng(spec.seed);
    auto pick = [&](auto& pool) -> decltype(auto) {
        std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
        return pool[d(rng)];
    };

    SynthPaths paths;
    paths.corpus = dir / "corpus.jsonl";
    paths.registry = dir / "registry.csv";
    paths.groups = dir / "groups.csv";
    paths.vad = dir / "vad.tsv";
    paths.annotations = dir / "annotations.csv";

    static const std::vector<std::string> female_given = {"Mette", "Elena",  "Priya", "Sanna",
                                                          "Jacinda", "Kamala", "Nadia", "Ingrid"};
    static const std::vector<std::string> male_given = {"Donald", "Bernard", "George", "Justin",
                                                        "Boris",  "Emmanuel", "Pedro",  "Olaf",
                                                        "Viktor", "Andres",  "Mateusz", "Janez",
                                                        "Stefan", "Micheal"};
    static const std::vector<std::string> surnames = {
        "Frederiksen", "Warren", "Trump",    "Sanders", "Bush",    "Ardern",  "Marin",  "Harris",
        "Johnson",     "Macron", "Sanchez",  "Scholz",  "Orban",   "Duda",    "Jansa",  "Lofven",
        "Varadkar",    "Rinne",  "Costa",    "Bettel",  "Plenkovic", "Borissov"};

    struct Entity {
        std::string id, given, surname, gender;
    };
    std::vector<Entity> entities;
    for (std::size_t i = 0; i < spec.females; ++i)
        entities.push_back({"F" + std::to_string(i + 1), female_given[i % female_given.size()],
                            surnames[i % surnames.size()], "female"});
    for (std::size_t i = 0; i < spec.males; ++i)
        entities.push_back({"M" + std::to_string(i + 1), male_given[i % male_given.size()],
                            surnames[(i + spec.females) % surnames.size()], "male"});
    entities.push_back({"X1", "Alex", "Reed", "other"});

    {
        std::ofstream out(paths.registry);
        out << "entity_id,full_name,given_name,surname,gender,country\n";
        for (std::size_t i = 0; i < entities.size(); ++i) {
            const Entity& e = entities[i];
            // leave the name columns blank for some rows so the
            // approximation path is exercised end to end
            bool record_names = i % 3 != 2;
            out << e.id << "," << e.given << " " << e.surname << ","
                << (record_names ? e.given : "") << "," << (record_names ? e.surname : "") << ","
                << e.gender << ",\n";
        }
    }
    {
        std::ofstream out(paths.groups);
        out << "subreddit,group\n";
        out << "leftsub,left\nrightsub,right\ndonaldsub,alt_right\npolitics,none\n";
    }

    struct VadWord {
        const char* word;
        double v, a, d;
    };
    static const std::vector<VadWord> vad_words = {
        {"kill", 0.052, 0.931, 0.736},   {"loved", 1.0, 0.519, 0.673},
        {"great", 0.895, 0.6, 0.684},    {"terrible", 0.103, 0.755, 0.362},
        {"strong", 0.806, 0.617, 0.851}, {"weak", 0.147, 0.355, 0.172},
        {"happy", 0.96, 0.732, 0.85},    {"corrupt", 0.072, 0.68, 0.526},
        {"honest", 0.886, 0.396, 0.744}, {"policy", 0.633, 0.304, 0.633},
        {"vote", 0.741, 0.568, 0.706},   {"scandal", 0.18, 0.816, 0.435},
        {"leader", 0.824, 0.598, 0.868}, {"failure", 0.085, 0.602, 0.268},
        {"win", 0.903, 0.779, 0.798},    {"lose", 0.164, 0.62, 0.283},
        {"calm", 0.802, 0.118, 0.672},   {"angry", 0.122, 0.886, 0.604},
        {"smart", 0.9, 0.525, 0.806},    {"foolish", 0.161, 0.52, 0.329}};
    {
        std::ofstream out(paths.vad);
        out << "word\tvalence\tarousal\tdominance\n";
        for (const auto& w : vad_words)
            out << w.word << "\t" << w.v << "\t" << w.a << "\t" << w.d << "\n";
    }

    static const std::vector<std::string> fillers = {"the",  "a",    "of",  "and",  "to",
                                                     "in",   "that", "it",  "for",  "on",
                                                     "with", "as",   "was", "at",   "by"};
    static const std::vector<std::string> descriptor_pool = {
        "senator",  "president", "liberal",   "conservative", "smart",   "foolish",
        "dress",    "suit",      "mother",    "father",       "angry",   "calm",
        "corrupt",  "honest",    "beautiful", "strong",       "radical", "moderate"};
    {
        std::ofstream out(paths.annotations);
        out << "word,sense,sentiment\n";
        static const char* senses[] = {"profession", "profession", "belief", "belief",
                                       "attribute",  "attribute",  "clothing", "clothing",
                                       "family",     "family",     "attribute", "attribute",
                                       "label",      "attribute",  "body",     "attribute",
                                       "belief",     "belief"};
        static const int sentiments[] = {0, 0, 0, 0, 1, -1, 0, 0, 0, 0, -1, 1, -1, 1, 1, 1, -1, 0};
        for (std::size_t i = 0; i < descriptor_pool.size(); ++i)
            out << descriptor_pool[i] << "," << senses[i] << "," << sentiments[i] << "\n";
    }

    static const std::vector<std::string> subreddits = {"leftsub", "rightsub", "donaldsub",
                                                        "politics", "news"};

    std::ofstream out(paths.corpus);
    std::size_t comment_no = 0;
    auto entity_index = [&](const std::string& gender) {
        // weighted toward a few popular politicians per gender
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::size_t base = gender == "female" ? 0 : spec.females;
        std::size_t count = gender == "female" ? spec.females : spec.males;
        if (u(rng) < 0.5) return base;  // the most popular one
        std::uniform_int_distribution<std::size_t> d(0, count - 1);
        return base + d(rng);
    };

    auto emit_comment = [&](const std::string& subreddit, const std::vector<std::size_t>& who,
                            bool bot) {
        nlohmann::json doc;
        doc["id"] = "c" + std::to_string(++comment_no);
        doc["subreddit"] = subreddit;
        std::uniform_int_distribution<int> len(6, 46);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int body_words = len(rng);
        std::vector<std::string> tokens;
        for (int i = 0; i < body_words; ++i) {
            if (u(rng) < 0.45)
                tokens.push_back(pick(vad_words).word);
            else
                tokens.push_back(pick(fillers));
        }
        for (std::size_t m = 0; m < who.size(); ++m) tokens.push_back("[NAME]");
        if (bot) tokens.push_back("I am a bot, beep boop");
        std::shuffle(tokens.begin(), tokens.end(), rng);
        std::string body;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (i) body += ' ';
            body += tokens[i];
        }
        doc["body"] = body;
        doc["created_utc"] = 1546300800 + static_cast<long>(comment_no);
        nlohmann::json mentions = nlohmann::json::array();
        for (std::size_t idx : who) {
            const Entity& e = entities[idx];
            nlohmann::json m;
            m["entity"] = e.id;
            double roll = u(rng);
            if (roll < 0.3) m["surface"] = e.surname;
            else if (roll < 0.5) m["surface"] = e.given + " " + e.surname;
            else if (roll < 0.7) m["surface"] = e.given;
            else if (roll < 0.85) m["surface"] = "Senator " + e.surname;  // honorific form
            else m["surface"] = e.surname + "y";  // nickname-ish, lands in other
            nlohmann::json desc = nlohmann::json::array();
            std::uniform_int_distribution<int> nd(0, 3);
            int n = nd(rng);
            for (int d = 0; d < n; ++d) desc.push_back(pick(descriptor_pool));
            m["descriptors"] = desc;
            if (u(rng) < 0.6)
                m["ext_sentiment"] = u(rng) < 0.55 ? "positive" : "negative";
            else
                m["ext_sentiment"] = nullptr;
            mentions.push_back(std::move(m));
        }
        doc["mentions"] = std::move(mentions);
        out << doc.dump() << "\n";
    };

    // guarantee every gender x group cell enough single-entity comments
    for (const std::string& sub : {std::string("leftsub"), std::string("rightsub"),
                                   std::string("donaldsub")}) {
        for (const std::string& gender : {std::string("female"), std::string("male")}) {
            for (int i = 0; i < 12; ++i) emit_comment(sub, {entity_index(gender)}, false);
        }
    }

    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (comment_no < spec.comments) {
        std::vector<std::size_t> who;
        double roll = u(rng);
        int nmention = roll < 0.6 ? 1 : (roll < 0.85 ? 2 : (roll < 0.96 ? 3 : 4));
        for (int m = 0; m < nmention; ++m) {
            double g = u(rng);
            if (g < 0.02) who.push_back(entities.size() - 1);  // the non-binary entity
            else who.push_back(entity_index(g < 0.3 ? "female" : "male"));
        }
        emit_comment(pick(subreddits), who, u(rng) < 0.01);
    }
    return paths;
}

}  // namespace fixtures
