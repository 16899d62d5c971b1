#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "biaslens/corpus.hpp"
#include "biaslens/registry.hpp"
#include "biaslens/stats/tests.hpp"

namespace biaslens {

enum class NameClass { given, surname, full, other };

std::string_view to_string(NameClass c);

// Leading titles stripped from surfaces before matching; matching itself is
// ASCII case-insensitive and diacritics-sensitive.
struct HonorificPolicy {
    bool strip = true;
    std::vector<std::string> titles;  // empty means the default list

    const std::vector<std::string>& effective_titles() const;
};

const std::vector<std::string>& default_honorifics();

// Exact match against full name first, then given, then surname; anything
// else (nicknames, misspellings, partial forms) is NameClass::other.
NameClass classify_reference(std::string_view surface, const NameSet& names,
                             const HonorificPolicy& policy = {});

// gender x {given, surname, full, other} counts over binary-gender data
// points.
struct NameTable {
    std::array<std::array<std::int64_t, 4>, 2> counts{};  // [female|male][class]

    std::int64_t gender_total(int gender_idx) const;
    double proportion_pct(int gender_idx, NameClass c) const;
    stats::ContingencyTable contingency() const;
};

NameTable name_distribution(const CorpusSnapshot& corpus, const Registry& registry,
                            const HonorificPolicy& policy = {});

struct NominalTests {
    stats::TestResult chi2;
    double cramers_v = 0.0;
    stats::TestResult given_or;         // female given-name odds vs male
    stats::TestResult surname_or;       // male surname odds vs female
    stats::TestResult full_or;          // female full-name odds vs male
    stats::TestResult professional_or;  // male surname+full odds vs female
};

NominalTests nominal_tests(const NameTable& table);

}  // namespace biaslens
