#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "casc/corpus.hpp"

namespace casc {

// Histogram over an integer domain (days, counts, degrees).
struct EmpiricalDistribution {
    std::vector<std::pair<long long, long long>> bins;  // (value, count > 0), value ascending
    long long total = 0;

    static EmpiricalDistribution from_samples(std::span<const long long> samples);
    static EmpiricalDistribution from_counts(const std::map<long long, long long>& counts);

    bool empty() const { return bins.empty(); }
};

struct WeekdayActivity {
    // Monday..Sunday: mean posts per occurrence of that weekday in the window.
    std::array<double, 7> average{};
    // 1 - mean(Sat,Sun) / mean(Mon..Fri); empty when weekdays saw no posts.
    std::optional<double> weekend_dip;
};

// Throws std::invalid_argument on an empty corpus.
WeekdayActivity weekday_activity(const Corpus& corpus);

// Day-binned citation latencies: floor((src - dst) / 86400), clamped to >= 0.
EmpiricalDistribution latency_distribution(const Corpus& corpus);

struct BlogDegrees {
    std::string blog_id;
    long long out_degree = 0;
    long long in_degree = 0;
};

struct DegreeDistributions {
    EmpiricalDistribution in_dist;   // over blogs, citation multiplicity counted
    EmpiricalDistribution out_dist;
    std::vector<BlogDegrees> blogs;  // every blog owning >= 1 post, by blog_id
};

DegreeDistributions degree_distributions(const Corpus& corpus);

// Sample Pearson coefficient; empty when n < 2 or either coordinate has zero
// variance.
std::optional<double> pearson(std::span<const std::pair<double, double>> pairs);

// Spearman: Pearson over average-tie ranks; empty when either list is
// constant or lengths differ / n < 2.
std::optional<double> rank_correlation(std::span<const double> xs, std::span<const double> ys);

// Hurwitz zeta sum_{k>=0} (q+k)^-a for a > 1, q > 0, via Euler-Maclaurin.
double hurwitz_zeta(double a, double q);

struct PowerLawFit {
    double exponent = 0;  // reported as the negative slope, e.g. -1.5
    long long xmin = 1;
    std::optional<long long> xmax;  // truncation bound, when fitted with one
    double ks_statistic = 0;
    long long n_tail = 0;
    std::string method;  // "mle" or "log-binned least squares"
};

struct PowerLawReport {
    PowerLawFit mle;
    std::optional<PowerLawFit> log_binned;  // empty when too few bins
};

// Discrete maximum-likelihood fit of p(x) ~ x^-a for x in [xmin, xmax]
// (xmax empty = untruncated), with the KS distance between fitted and
// empirical CDFs; a log-binned least-squares estimate rides along.
// Throws std::invalid_argument when fewer than 100 samples lie in the fit
// range or when the tail sample is single-valued.
PowerLawReport fit_power_law(const EmpiricalDistribution& dist, long long xmin,
                             std::optional<long long> xmax = std::nullopt);

}  // namespace casc
