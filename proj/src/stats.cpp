#include "casc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace casc {

EmpiricalDistribution EmpiricalDistribution::from_samples(std::span<const long long> samples) {
    std::map<long long, long long> counts;
    for (const long long s : samples) ++counts[s];
    return from_counts(counts);
}

EmpiricalDistribution EmpiricalDistribution::from_counts(
    const std::map<long long, long long>& counts) {
    EmpiricalDistribution dist;
    dist.bins.reserve(counts.size());
    for (const auto& [value, count] : counts) {
        if (count <= 0) continue;
        dist.bins.emplace_back(value, count);
        dist.total += count;
    }
    return dist;
}

WeekdayActivity weekday_activity(const Corpus& corpus) {
    if (corpus.post_count() == 0)
        throw std::invalid_argument("weekday_activity: empty corpus");

    const Window& window = corpus.table->window;
    std::array<long long, 7> posts_per_dow{};
    for (const Post& post : corpus.table->posts) ++posts_per_dow[weekday_of(post.published_at)];

    // Occurrences of each weekday among the calendar days the window touches.
    std::array<long long, 7> day_occurrences{};
    const std::int64_t first = day_of(window.start);
    const std::int64_t last = day_of(window.end);
    const std::int64_t full_weeks = (last - first + 1) / 7;
    for (int w = 0; w < 7; ++w) day_occurrences[w] = full_weeks;
    for (std::int64_t d = first + full_weeks * 7; d <= last; ++d)
        ++day_occurrences[weekday_of_day(d)];

    WeekdayActivity activity;
    for (int w = 0; w < 7; ++w)
        activity.average[w] = day_occurrences[w] > 0
                                  ? static_cast<double>(posts_per_dow[w]) / day_occurrences[w]
                                  : 0.0;

    double week_mean = 0;
    for (int w = 0; w < 5; ++w) week_mean += activity.average[w];
    week_mean /= 5.0;
    const double weekend_mean = (activity.average[5] + activity.average[6]) / 2.0;
    if (week_mean > 0) activity.weekend_dip = 1.0 - weekend_mean / week_mean;
    return activity;
}

EmpiricalDistribution latency_distribution(const Corpus& corpus) {
    std::map<long long, long long> counts;
    for (const CitationIdx& c : corpus.citations) {
        const UnixTime gap = corpus.table->time_of(c.src) - corpus.table->time_of(c.dst);
        counts[std::max<long long>(gap / kSecondsPerDay, 0)]++;
    }
    return EmpiricalDistribution::from_counts(counts);
}

DegreeDistributions degree_distributions(const Corpus& corpus) {
    const auto n_blogs = corpus.table->blog_ids.size();
    std::vector<long long> out_deg(n_blogs, 0), in_deg(n_blogs, 0);
    for (const CitationIdx& c : corpus.citations) {
        ++out_deg[corpus.blog_of(c.src)];
        ++in_deg[corpus.blog_of(c.dst)];
    }

    DegreeDistributions result;
    result.blogs.reserve(n_blogs);
    for (std::size_t b = 0; b < n_blogs; ++b)
        result.blogs.push_back(BlogDegrees{corpus.table->blog_ids[b], out_deg[b], in_deg[b]});
    std::sort(result.blogs.begin(), result.blogs.end(),
              [](const BlogDegrees& a, const BlogDegrees& b) { return a.blog_id < b.blog_id; });

    result.in_dist = EmpiricalDistribution::from_samples(in_deg);
    result.out_dist = EmpiricalDistribution::from_samples(out_deg);
    return result;
}

std::optional<double> pearson(std::span<const std::pair<double, double>> pairs) {
    const std::size_t n = pairs.size();
    if (n < 2) return std::nullopt;
    double mean_x = 0, mean_y = 0;
    for (const auto& [x, y] : pairs) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0, syy = 0, sxy = 0;
    for (const auto& [x, y] : pairs) {
        const double dx = x - mean_x;
        const double dy = y - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0 || syy == 0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

namespace {

// Average ranks (1-based); tied values share the mean of their rank range.
std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = static_cast<double>(i + j + 2) / 2.0;  // mean of i+1 .. j+1
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

std::optional<double> rank_correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
    const std::vector<double> rx = average_ranks(xs);
    const std::vector<double> ry = average_ranks(ys);
    std::vector<std::pair<double, double>> pairs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) pairs[i] = {rx[i], ry[i]};
    return pearson(pairs);
}

double hurwitz_zeta(double a, double q) {
    if (a <= 1.0 || q <= 0.0)
        throw std::invalid_argument("hurwitz_zeta: requires a > 1 and q > 0");
    // Sum directly until q+k >= 128, then Euler-Maclaurin tail with two
    // Bernoulli corrections; the next term is O((q+K)^(-a-5)), negligible.
    const int terms = q >= 128.0 ? 0 : static_cast<int>(128.0 - q) + 1;
    double sum = 0;
    for (int k = terms - 1; k >= 0; --k) sum += std::pow(q + k, -a);
    const double big_q = q + terms;
    sum += std::pow(big_q, 1.0 - a) / (a - 1.0);
    sum += 0.5 * std::pow(big_q, -a);
    sum += a / 12.0 * std::pow(big_q, -a - 1.0);
    sum -= a * (a + 1.0) * (a + 2.0) / 720.0 * std::pow(big_q, -a - 3.0);
    return sum;
}

namespace {

// Normalizer Z(a) = sum_{x=xmin}^{xmax} x^-a (xmax may be infinite).
double power_law_norm(double a, long long xmin, const std::optional<long long>& xmax) {
    double z = hurwitz_zeta(a, static_cast<double>(xmin));
    if (xmax) z -= hurwitz_zeta(a, static_cast<double>(*xmax) + 1.0);
    return z;
}

// Fitted CDF at integer x (mass of [xmin, x]).
double power_law_cdf(double a, long long xmin, const std::optional<long long>& xmax, double norm,
                     long long x) {
    if (x < xmin) return 0.0;
    if (xmax && x >= *xmax) return 1.0;
    const double above = hurwitz_zeta(a, static_cast<double>(x) + 1.0) -
                         (xmax ? hurwitz_zeta(a, static_cast<double>(*xmax) + 1.0) : 0.0);
    return 1.0 - above / norm;
}

struct Tail {
    std::vector<std::pair<long long, long long>> bins;
    long long n = 0;
    double sum_log = 0;  // sum of count * ln(value)
};

Tail tail_of(const EmpiricalDistribution& dist, long long xmin,
             const std::optional<long long>& xmax) {
    Tail tail;
    for (const auto& [value, count] : dist.bins) {
        if (value < xmin || (xmax && value > *xmax)) continue;
        tail.bins.emplace_back(value, count);
        tail.n += count;
        tail.sum_log += static_cast<double>(count) * std::log(static_cast<double>(value));
    }
    return tail;
}

// Golden-section minimum of a strictly unimodal function on [lo, hi].
double golden_min(double lo, double hi, const auto& f) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - (b - a) * kInvPhi;
    double d = a + (b - a) * kInvPhi;
    double fc = f(c), fd = f(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * kInvPhi;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * kInvPhi;
            fd = f(d);
        }
    }
    return (a + b) / 2.0;
}

PowerLawFit fit_mle(const Tail& tail, long long xmin, const std::optional<long long>& xmax) {
    const double n = static_cast<double>(tail.n);
    // Negative log-likelihood; convex in a (log-sum-exp), so golden section
    // finds the global minimum.
    auto nll = [&](double a) { return n * std::log(power_law_norm(a, xmin, xmax)) + a * tail.sum_log; };
    const double a_hat = golden_min(1.000001, 12.0, nll);

    const double norm = power_law_norm(a_hat, xmin, xmax);
    double ks = 0;
    double cum = 0;
    long long prev_value = xmin;
    for (const auto& [value, count] : tail.bins) {
        // Largest gap on the flat stretch before this jump, then at the jump.
        if (value - 1 >= prev_value)
            ks = std::max(ks, std::abs(cum / n - power_law_cdf(a_hat, xmin, xmax, norm, value - 1)));
        cum += static_cast<double>(count);
        ks = std::max(ks, std::abs(cum / n - power_law_cdf(a_hat, xmin, xmax, norm, value)));
        prev_value = value;
    }

    PowerLawFit fit;
    fit.exponent = -a_hat;
    fit.xmin = xmin;
    fit.xmax = xmax;
    fit.ks_statistic = ks;
    fit.n_tail = tail.n;
    fit.method = "mle";
    return fit;
}

std::optional<PowerLawFit> fit_log_binned(const Tail& tail, long long xmin,
                                          const std::optional<long long>& xmax) {
    // Bin edges xmin * r^k with r = 10^(1/4); density per unit value.
    constexpr double kRatio = 1.7782794100389228;  // 10^0.25
    std::vector<std::pair<double, double>> points;  // (log10 center, log10 density)
    double lo = static_cast<double>(xmin);
    std::size_t i = 0;
    while (i < tail.bins.size()) {
        const double hi = lo * kRatio;
        long long mass = 0;
        while (i < tail.bins.size() && static_cast<double>(tail.bins[i].first) < hi) {
            mass += tail.bins[i].second;
            ++i;
        }
        if (mass > 0) {
            const double width = hi - lo;
            const double density = static_cast<double>(mass) / (width * static_cast<double>(tail.n));
            points.emplace_back(std::log10(std::sqrt(lo * hi)), std::log10(density));
        }
        lo = hi;
    }
    if (points.size() < 3) return std::nullopt;

    double mx = 0, my = 0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) return std::nullopt;

    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.xmin = xmin;
    fit.xmax = xmax;
    fit.ks_statistic = 0;  // not meaningful for the regression estimate
    fit.n_tail = tail.n;
    fit.method = "log-binned least squares";
    return fit;
}

}  // namespace

PowerLawReport fit_power_law(const EmpiricalDistribution& dist, long long xmin,
                             std::optional<long long> xmax) {
    if (xmin < 1) throw std::invalid_argument("fit_power_law: xmin must be >= 1");
    if (xmax && *xmax <= xmin) throw std::invalid_argument("fit_power_law: xmax must exceed xmin");

    const Tail tail = tail_of(dist, xmin, xmax);
    if (tail.n < 100)
        throw std::invalid_argument("fit_power_law: need >= 100 samples at or above xmin, have " +
                                    std::to_string(tail.n));
    if (tail.bins.size() < 2)
        throw std::invalid_argument("fit_power_law: degenerate single-valued sample");

    PowerLawReport report;
    report.mle = fit_mle(tail, xmin, xmax);
    report.log_binned = fit_log_binned(tail, xmin, xmax);
    return report;
}

}  // namespace casc
