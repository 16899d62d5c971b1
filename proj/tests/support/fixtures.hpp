#pragma once

// In-memory corpus/registry builders shared across the unit tests.

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "biaslens/corpus.hpp"
#include "biaslens/registry.hpp"

namespace fixtures {

using namespace biaslens;

inline EntityRecord entity(std::string id, std::string full, Gender g,
                           std::string given = "", std::string surname = "") {
    EntityRecord rec;
    rec.entity_id = std::move(id);
    rec.full_name = std::move(full);
    if (!given.empty()) rec.given_name = given;
    if (!surname.empty()) rec.surname = surname;
    rec.gender = g;
    return rec;
}

inline std::shared_ptr<const Registry> make_registry(std::vector<EntityRecord> records) {
    auto reg = std::make_shared<Registry>();
    for (auto& r : records) reg->add(std::move(r));
    return reg;
}

// A compact registry most fixtures share: two women, three men, one
// outside the binary.
inline std::shared_ptr<const Registry> default_registry() {
    return make_registry({
        entity("F1", "Mette Frederiksen", Gender::female),
        entity("F2", "Elizabeth Warren", Gender::female),
        entity("M1", "Donald Trump", Gender::male),
        entity("M2", "Bernard Sanders", Gender::male),
        entity("M3", "George Herbert Bush", Gender::male),
        entity("X1", "Alex Reed", Gender::other),
    });
}

struct MentionSpec {
    std::string entity;
    std::string surface = "";
    std::vector<std::string> descriptors = {};
    std::optional<ExtSentiment> label = std::nullopt;
};

struct CommentSpec {
    std::string id;
    std::vector<MentionSpec> mentions;
    std::string body = "";  // auto-generated with matching [NAME] tokens when empty
    std::string subreddit = "politics";
    Group group = Group::none;
    std::int64_t created = 1546300800;
};

inline CorpusSnapshot make_corpus(std::shared_ptr<const Registry> registry,
                                  std::vector<CommentSpec> specs) {
    std::vector<Comment> comments;
    std::vector<DataPoint> datapoints;
    for (std::size_t c = 0; c < specs.size(); ++c) {
        CommentSpec& spec = specs[c];
        Comment comment;
        comment.comment_id = spec.id;
        comment.subreddit = spec.subreddit;
        comment.group = spec.group;
        comment.created_at = spec.created;
        if (spec.body.empty()) {
            for (std::size_t m = 0; m < spec.mentions.size(); ++m) {
                if (m) spec.body += ' ';
                spec.body += kNameToken;
            }
        }
        comment.body = spec.body;
        for (const MentionSpec& m : spec.mentions) {
            DataPoint dp;
            dp.comment_index = static_cast<std::uint32_t>(c);
            dp.entity_id = m.entity;
            dp.surface = m.surface.empty() ? registry->at(m.entity).full_name : m.surface;
            dp.descriptors = m.descriptors;
            dp.external_sentiment = m.label;
            dp.gender = registry->at(m.entity).gender;
            comment.surface_references.push_back({dp.entity_id, dp.surface});
            datapoints.push_back(std::move(dp));
        }
        comments.push_back(std::move(comment));
    }
    return CorpusSnapshot::build(std::move(comments), std::move(datapoints), std::move(registry));
}

// (comment_id, entity_id) multiset for partition/exclusion identities.
inline std::vector<std::pair<std::string, std::string>> datapoint_keys(const CorpusSnapshot& c) {
    std::vector<std::pair<std::string, std::string>> keys;
    for (const DataPoint& dp : c.datapoints())
        keys.emplace_back(c.comments()[dp.comment_index].comment_id, dp.entity_id);
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace fixtures
