#include "biaslens/registry.hpp"

#include "biaslens/csv.hpp"

namespace biaslens {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::pair<std::string, std::string> approximate_names(std::string_view full_name) {
    std::string_view name = trim(full_name);
    if (name.empty()) throw std::invalid_argument("approximate_names: empty full name");
    auto first_space = name.find(' ');
    if (first_space == std::string_view::npos) {
        return {std::string(name), std::string(name)};
    }
    auto last_space = name.rfind(' ');
    return {std::string(name.substr(0, first_space)), std::string(name.substr(last_space + 1))};
}

NameSet effective_names(const EntityRecord& record) {
    auto [approx_given, approx_surname] = approximate_names(record.full_name);
    NameSet names;
    names.full = std::string(trim(record.full_name));
    names.given = record.given_name && !record.given_name->empty() ? *record.given_name
                                                                   : std::move(approx_given);
    names.surname = record.surname && !record.surname->empty() ? *record.surname
                                                               : std::move(approx_surname);
    return names;
}

void Registry::add(EntityRecord record) {
    if (record.entity_id.empty()) throw IngestError("registry: empty entity id");
    if (record.full_name.empty())
        throw IngestError("registry: missing full_name for '" + record.entity_id + "'");
    auto gender = record.gender;
    auto [it, inserted] = records_.emplace(record.entity_id, std::move(record));
    if (!inserted) throw IngestError("registry: duplicate entity id '" + it->first + "'");
    ++gender_totals_[static_cast<int>(gender)];
}

const EntityRecord* Registry::find(std::string_view entity_id) const {
    auto it = records_.find(std::string(entity_id));
    return it == records_.end() ? nullptr : &it->second;
}

const EntityRecord& Registry::at(std::string_view entity_id) const {
    const EntityRecord* rec = find(entity_id);
    if (!rec) throw std::out_of_range("registry: unknown entity id '" + std::string(entity_id) + "'");
    return *rec;
}

Registry Registry::load(const std::filesystem::path& path) {
    Registry reg;
    auto rows = csv::read_file(path);
    std::size_t start = 0;
    if (!rows.empty() && !rows[0].empty() && rows[0][0] == "entity_id") start = 1;
    for (std::size_t i = start; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() < 5) {
            throw IngestError("registry: row " + std::to_string(i + 1) + " has " +
                              std::to_string(row.size()) + " fields, expected >= 5");
        }
        EntityRecord rec;
        rec.entity_id = row[0];
        rec.full_name = row[1];
        if (!row[2].empty()) rec.given_name = row[2];
        if (!row[3].empty()) rec.surname = row[3];
        try {
            rec.gender = parse_gender(row[4]);
        } catch (const std::invalid_argument& e) {
            throw IngestError("registry: row " + std::to_string(i + 1) + ": " + e.what());
        }
        if (row.size() > 5 && !row[5].empty()) rec.country = row[5];
        reg.add(std::move(rec));
    }
    return reg;
}

}  // namespace biaslens
