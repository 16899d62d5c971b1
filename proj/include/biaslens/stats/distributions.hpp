#pragma once

namespace biaslens::stats {

double normal_cdf(double x);
double normal_sf(double x);

// Survival function of the asymptotic Kolmogorov distribution,
// Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2), with the
// theta-transformed series on the small-lambda side. Series are truncated
// once a term falls below 1e-12.
double kolmogorov_sf(double lambda);

double chi_squared_sf(double x, double df);
double student_t_two_sided_p(double t, double df);
double f_sf(double f, double df1, double df2);

// CDF of the studentized range of k groups with df residual degrees of
// freedom, by numerical integration: the inner integral runs the normal-CDF
// difference over the range variable, the outer integral runs over the
// chi-scale variable. df >= 1e6 (or a non-finite df) switches to the
// known-variance form. Absolute error is held near 1e-8, comfortably inside
// the 1e-6 target.
double studentized_range_cdf(double q, int k, double df);
double studentized_range_sf(double q, int k, double df);
double studentized_range_quantile(double p, int k, double df);

}  // namespace biaslens::stats
