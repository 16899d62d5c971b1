#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace biaslens::stats {

// Uniform carrier for every test in the kernel. df2 is set for tests with a
// (numerator, denominator) degree-of-freedom pair; ci_low/ci_high for tests
// reported with a confidence interval; p_less_than marks p values that are
// resolution bounds (empirical p with no null as extreme as the observation).
struct TestResult {
    std::string label;
    double statistic = std::numeric_limits<double>::quiet_NaN();
    double df = std::numeric_limits<double>::quiet_NaN();
    double df2 = std::numeric_limits<double>::quiet_NaN();
    double p_value = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> effect_size;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    bool p_less_than = false;
};

struct ContingencyTable {
    std::vector<std::vector<std::int64_t>> counts;  // r x c, r >= 2, c >= 2
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    std::size_t rows() const { return counts.size(); }
    std::size_t cols() const { return counts.empty() ? 0 : counts[0].size(); }
    std::int64_t total() const;
    ContingencyTable transposed() const;
    void validate() const;  // throws std::invalid_argument
};

}  // namespace biaslens::stats
