#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "biaslens/types.hpp"

namespace biaslens {

struct EntityRecord {
    std::string entity_id;
    std::string full_name;
    std::optional<std::string> given_name;
    std::optional<std::string> surname;
    Gender gender = Gender::other;
    std::optional<std::string> country;
};

struct NameSet {
    std::string given;
    std::string surname;
    std::string full;
};

// Name approximation when the registry record lacks explicit given/surname
// fields: the given name is everything before the first space, the surname
// everything after the last space. A name with no space maps both components
// to the whole name.
std::pair<std::string, std::string> approximate_names(std::string_view full_name);

// Recorded names when present, approximations otherwise.
NameSet effective_names(const EntityRecord& record);

class Registry {
public:
    // CSV columns: entity_id,full_name,given_name,surname,gender,country.
    // given_name, surname and country may be empty. One header line with
    // the literal column names is tolerated.
    static Registry load(const std::filesystem::path& path);

    void add(EntityRecord record);

    const EntityRecord* find(std::string_view entity_id) const;
    const EntityRecord& at(std::string_view entity_id) const;
    bool contains(std::string_view entity_id) const { return find(entity_id) != nullptr; }

    std::size_t size() const { return records_.size(); }
    // Counts indexed as {female, male, other}.
    const std::array<std::size_t, 3>& gender_totals() const { return gender_totals_; }
    std::size_t gender_total(Gender g) const { return gender_totals_[static_cast<int>(g)]; }

    const std::unordered_map<std::string, EntityRecord>& records() const { return records_; }

private:
    std::unordered_map<std::string, EntityRecord> records_;
    std::array<std::size_t, 3> gender_totals_{};
};

}  // namespace biaslens
