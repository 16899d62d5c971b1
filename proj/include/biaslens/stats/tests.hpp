#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "biaslens/stats/result.hpp"

namespace biaslens::stats {

struct SummaryStats {
    double mean = 0.0;
    double sd = 0.0;
    std::int64_t n = 0;
};

SummaryStats summarize(std::span<const double> values);

// Sarle's bimodality coefficient (g1^2 + 1) / (g2 + 3(n-1)^2/((n-2)(n-3)));
// values above ~0.555 (the uniform distribution's coefficient) hint at
// bimodality. Needs n >= 4 and nonzero variance.
double bimodality_coefficient(std::span<const double> values);

// Two-sample Kolmogorov-Smirnov test. D is computed exactly from integer
// rank counts; p comes from the asymptotic Kolmogorov distribution at
// lambda = sqrt(|a||b| / (|a|+|b|)) * D.
TestResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Pooled-variance two-sample t test, df = n_a + n_b - 2, two-sided p.
// Zero pooled variance: equal means give t = 0, p = 1; unequal means throw.
TestResult t_test_pooled(std::span<const double> a, std::span<const double> b);
TestResult t_test_pooled(const SummaryStats& a, const SummaryStats& b);

// |mean difference| / pooled standard deviation. Equal means give 0 even at
// zero variance; unequal means at zero variance throw.
double cohens_d(std::span<const double> a, std::span<const double> b);
double cohens_d(const SummaryStats& a, const SummaryStats& b);

// Pearson chi-square with df = (r-1)(c-1); every expected count must be > 0.
TestResult chi_square(const ContingencyTable& table);

double cramers_v(double chi2, std::int64_t n, std::size_t r, std::size_t c);

// OR = ad/bc with the Woolf log-normal 95% interval. With exactly one zero
// cell, 0.5 is added to all four cells (Haldane-Anscombe); two or more zero
// cells are degenerate and throw.
TestResult odds_ratio(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

struct AnovaResult {
    TestResult factor_a;
    TestResult factor_b;
    TestResult interaction;
    double ss_a = 0.0, ss_b = 0.0, ss_interaction = 0.0, ss_residual = 0.0;
    double residual_df = 0.0;
    double mse = 0.0;
};

// Two-way fixed-effects ANOVA with sequential (Type I) sums of squares in
// the order A, B, AxB, matching an R aov() fit with that formula order.
// Unbalanced designs therefore depend on factor order, which callers fix.
// Every (A,B) cell must be non-empty and the residual df positive.
AnovaResult anova_two_way(std::span<const double> values, std::span<const std::string> factor_a,
                          std::span<const std::string> factor_b, const std::string& name_a = "A",
                          const std::string& name_b = "B");

struct TukeyComparison {
    std::string lhs;
    std::string rhs;
    double mean_difference = 0.0;  // mean(lhs) - mean(rhs)
    TestResult test;               // statistic = q, df = residual df, effect_size = Cohen's d
};

// All-pairs Tukey HSD on the studentized range, Tukey-Kramer denominator for
// unequal group sizes. Needs >= 2 groups of >= 2 values and a positive
// pooled within-group variance.
std::vector<TukeyComparison> tukey_hsd(const std::map<std::string, std::vector<double>>& groups);

enum class Tail { lower, upper, two_sided };

// Add-one empirical p: (1 + #{null at least as extreme}) / (1 + K); the
// two-sided form doubles the smaller tail and caps at 1. Never returns 0.
double empirical_p(double observed, std::span<const double> nulls, Tail tail);

// Chance-corrected inter-rater agreement over the shared label set. Both
// raters constant and identical (p_e = 1) is defined as kappa = 1.
double cohens_kappa(std::span<const std::string> ratings_a, std::span<const std::string> ratings_b);

}  // namespace biaslens::stats
