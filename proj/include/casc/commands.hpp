#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace casc {

// Operational failure carrying the process exit status (2 for I/O, parse and
// validation problems).
class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& message)
        : std::runtime_error(message), exit_code(code) {}
    int exit_code;
};

struct IngestOptions {
    std::string posts_path;
    std::string citations_path;
    std::string window_start;  // ISO-8601 UTC
    std::string window_end;
    std::string out_dir;
};

struct AnalyzeOptions {
    std::string corpus_path;
    std::string topics_path;  // empty = no topic labels
    int cap = 8;
    std::string out_dir;
};

struct CompareOptions {
    std::string corpus_path;
    std::string config_path;  // optional key = value file
    // Flag overrides; unset values fall back to the config file / defaults.
    std::optional<double> theta;  // unset: fitted from the corpus latencies
    std::optional<long long> epsilon_seconds;
    std::optional<int> realizations;
    std::optional<std::uint64_t> seed;
    std::optional<double> z_threshold;
    std::optional<int> cap;
    int threads = 0;     // 0 = library default; execution knobs never change output
    bool serial = false;
    std::string out_dir;
};

struct FitCmdOptions {
    std::string corpus_path;
    long long xmin = 1;
    std::optional<long long> xmax;
    std::string out_dir;
};

// Each command writes its outputs plus manifest.json under out_dir and
// returns 0; failures raise CliError.
int cmd_ingest(const IngestOptions& options);
int cmd_analyze(const AnalyzeOptions& options);
int cmd_compare(const CompareOptions& options);
int cmd_fit(const FitCmdOptions& options);

}  // namespace casc
