#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "casc/cascade.hpp"
#include "casc/corpus.hpp"
#include "casc/nullmodel.hpp"
#include "casc/stats.hpp"

namespace casc {

inline constexpr const char* kToolName = "casc";
inline constexpr const char* kToolVersion = "0.1.0";

// --- normalized corpus -----------------------------------------------------
// One JSON record per line: a window record, then posts, then citations.

void write_corpus_jsonl(const std::filesystem::path& path, const Corpus& corpus);
Corpus read_corpus_jsonl(const std::filesystem::path& path);

// --- ingest outputs ---------------------------------------------------------

void write_summary_json(const std::filesystem::path& path, const CorpusSummary& summary);

// --- analyze outputs --------------------------------------------------------

void write_cascades_jsonl(const std::filesystem::path& path, const Corpus& corpus,
                          std::span<const Cascade> cascades,
                          std::span<const CascadeMetrics> metrics);

void write_census_csv(const std::filesystem::path& path, const ShapeCensus& census);

// One example cascade per censused shape, for external visualization.
void write_census_examples_jsonl(const std::filesystem::path& path, const Corpus& corpus,
                                 std::span<const Cascade> cascades, const ShapeCensus& census);

// Above-cap cascades grouped by (size, depth, sc).
void write_census_above_cap_csv(const std::filesystem::path& path,
                                std::span<const Cascade> cascades, int cap);

void write_distribution_csv(const std::filesystem::path& path,
                            const EmpiricalDistribution& dist);

void write_degrees_csv(const std::filesystem::path& path, const DegreeDistributions& degrees);
void write_blog_degrees_csv(const std::filesystem::path& path,
                            const DegreeDistributions& degrees);

void write_weekday_csv(const std::filesystem::path& path, const WeekdayActivity& activity);

// Power-law fits plus the scalar statistics of the run.
struct FitsReport {
    struct Entry {
        std::string name;
        std::optional<PowerLawReport> fit;
        std::string skipped_reason;  // set when fit is empty
    };
    std::vector<Entry> fits;
    std::optional<double> pearson_in_out;
    std::optional<double> pearson_in_out_nonzero;  // zero-degree blogs excluded
    std::optional<double> weekend_dip;
    std::optional<double> sc_topic_unity_rank_correlation;
};

void write_fits_json(const std::filesystem::path& path, const FitsReport& report);

// --- compare outputs --------------------------------------------------------

struct CompareConfigEcho {
    RewireConfig config;
    bool theta_fitted = false;  // true when theta came from fit_theta
    bool theta_fit_fallback = false;
};

void write_comparison_json(const std::filesystem::path& path, const ComparisonReport& report,
                           const CompareConfigEcho& echo);

void write_overlay_csv(const std::filesystem::path& path, std::span<const OverlayRow> overlay,
                       long long real_total, double model_mean_total);

// --- run manifest -----------------------------------------------------------

struct Manifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // name -> path
    std::vector<std::pair<std::string, std::string>> params;  // name -> rendered value
    std::string out_dir;
    std::vector<std::string> outputs;  // filenames under out_dir
};

void write_manifest_json(const std::filesystem::path& path, const Manifest& manifest);

}  // namespace casc
