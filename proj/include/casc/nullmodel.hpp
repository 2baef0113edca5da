#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "casc/corpus.hpp"
#include "casc/motifs.hpp"
#include "casc/parallel.hpp"
#include "casc/stats.hpp"

namespace casc {

struct RewireConfig {
    double theta = 1.5;                // latency-bias exponent, weight ~ dt^-theta
    long long epsilon_seconds = 3600;  // lower clamp on dt so weights stay bounded
    int realizations = 100;
    std::uint64_t base_seed = 0;
    double z_threshold = 3.0;
    int cap = kDefaultShapeCap;

    void validate() const;  // throws std::invalid_argument
};

// Reads `key = value` lines (#-comments and blank lines allowed) on top of
// the given defaults. Keys: theta, epsilon_seconds, realizations, base_seed,
// z_threshold, cap.
RewireConfig parse_config_file(std::istream& in, RewireConfig defaults = {});

struct ThetaFit {
    double theta = 1.5;
    bool fitted = false;  // false = fallback default, too few/degenerate latencies
};

// MLE power-law exponent magnitude of the day-binned latency distribution,
// truncated at the window span.
ThetaFit fit_theta(const Corpus& corpus);

// Re-targets each citation to a random post of the cited blog published no
// later than the citing post, drawn with probability proportional to
// max(dt, epsilon)^-theta. Output preserves order, length, source posts and
// target blogs; deterministic given (base_seed, realization_index).
std::vector<CitationIdx> rewire_citations(const Corpus& corpus, const RewireConfig& config,
                                          int realization_index);

// Shape census plus size/depth histograms of one cascade set; cascades above
// the cap land in (size, depth) buckets.
struct CascadeSummary {
    ShapeCensus census;
    std::map<long long, long long> size_counts;
    std::map<long long, long long> depth_counts;
    std::map<std::pair<int, int>, long long> above_cap_buckets;
    long long cascades = 0;
};

CascadeSummary summarize_cascades(std::span<const Cascade> cascades, int cap = kDefaultShapeCap,
                                  Exec exec = Exec::parallel);

// First two moments of a per-realization count.
struct MomentAcc {
    double sum = 0;
    double sum_sq = 0;
};

double moment_mean(const MomentAcc& m, int n);
// Sample standard deviation (n-1 denominator); 0 when n < 2.
double moment_std(const MomentAcc& m, int n);

struct ShapeCodeOrder {
    bool operator()(const ShapeCode& a, const ShapeCode& b) const {
        return shape_code_less(a, b);
    }
};

struct ModelAggregate {
    int realizations = 0;
    int cap = kDefaultShapeCap;
    std::map<ShapeCode, MomentAcc, ShapeCodeOrder> shapes;
    std::map<long long, MomentAcc> size_counts;
    std::map<long long, MomentAcc> depth_counts;
    std::map<std::pair<int, int>, MomentAcc> above_cap_buckets;
    MomentAcc cascades;                      // cascade count per realization
    long long duplicate_citations_sum = 0;   // rewiring may repeat a (src,dst) pair
};

// Rewire -> extract -> summarize per realization, folded over realization
// index in increasing order. Parallel and serial execution produce identical
// aggregates: realization r always uses seed derive_seed(base_seed, r).
ModelAggregate run_realizations(const Corpus& corpus, const RewireConfig& config,
                                Exec exec = Exec::parallel);

enum class Representation { over, under, consistent };

const char* to_string(Representation flag);

// z is NaN when undefined (zero spread, real equals mean) and +/-infinity
// when the model never moves but the real count differs.
struct ShapeRow {
    ShapeCode code;
    int arc_count = 0;
    std::optional<double> sc;
    long long real_freq = 0;
    double model_mean = 0;
    double model_std = 0;
    double z = 0;
    Representation flag = Representation::consistent;
};

struct BucketRow {
    int size = 0;
    int depth = 0;
    long long real_freq = 0;
    double model_mean = 0;
    double model_std = 0;
    double z = 0;
    Representation flag = Representation::consistent;
};

struct OverlayRow {
    long long value = 0;
    long long real_count = 0;
    double model_mean = 0;
    double model_std = 0;
};

struct ComparisonReport {
    double z_threshold = 3.0;
    int cap = kDefaultShapeCap;
    int realizations = 0;
    long long real_cascades = 0;
    double model_mean_cascades = 0;
    double model_mean_duplicate_citations = 0;
    std::vector<ShapeRow> shapes;        // real frequency desc, then model mean
    std::vector<BucketRow> above_cap;    // (size, depth) ascending
    std::vector<OverlayRow> size_overlay;
    std::vector<OverlayRow> depth_overlay;
};

// Throws std::invalid_argument when the censuses were built with different
// canonicalization caps.
ComparisonReport compare(const CascadeSummary& real, const ModelAggregate& model,
                         double z_threshold = 3.0);

}  // namespace casc
