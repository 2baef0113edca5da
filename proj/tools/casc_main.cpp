#include <CLI11.hpp>
#include <iostream>

#include "casc/commands.hpp"
#include "casc/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"casc: extract citation cascades from blog post logs, compute their structural "
                 "and statistical measures, and compare shape frequencies against an item-free "
                 "null model"};
    app.set_version_flag("--version", std::string(casc::kToolVersion));
    app.require_subcommand(1);

    casc::IngestOptions ingest;
    CLI::App* cmd_ingest = app.add_subcommand(
        "ingest", "Parse post/citation logs, filter them and write a normalized corpus");
    cmd_ingest->add_option("--posts", ingest.posts_path, "Posts file (JSON lines)")->required();
    cmd_ingest->add_option("--citations", ingest.citations_path, "Citations CSV")->required();
    cmd_ingest->add_option("--window-start", ingest.window_start,
                           "Crawl window start, e.g. 2010-02-01T00:00:00Z")
        ->required();
    cmd_ingest->add_option("--window-end", ingest.window_end, "Crawl window end (inclusive)")
        ->required();
    cmd_ingest->add_option("--out-dir", ingest.out_dir, "Output directory")->required();

    casc::AnalyzeOptions analyze;
    CLI::App* cmd_analyze = app.add_subcommand(
        "analyze", "Extract cascades and write census, distributions and fits");
    cmd_analyze->add_option("--corpus", analyze.corpus_path, "corpus.jsonl from ingest")
        ->required();
    cmd_analyze->add_option("--topics", analyze.topics_path,
                            "Topic labels TSV (post_id<TAB>topic)");
    cmd_analyze->add_option("--cap", analyze.cap, "Canonicalization cap (1..8)")
        ->default_val(8);
    cmd_analyze->add_option("--out-dir", analyze.out_dir, "Output directory")->required();

    casc::CompareOptions compare;
    double theta_flag = 0;
    long long epsilon_flag = 0;
    int realizations_flag = 0;
    std::uint64_t seed_flag = 0;
    double z_flag = 0;
    int cap_flag = 0;
    CLI::App* cmd_compare = app.add_subcommand(
        "compare", "Run the item-free null model and compare shape frequencies");
    cmd_compare->add_option("--corpus", compare.corpus_path, "corpus.jsonl from ingest")
        ->required();
    cmd_compare->add_option("--config", compare.config_path, "key = value config file");
    CLI::Option* opt_theta = cmd_compare->add_option(
        "--theta", theta_flag, "Latency-bias exponent (default: fitted from the corpus)");
    CLI::Option* opt_eps = cmd_compare->add_option("--epsilon-seconds", epsilon_flag,
                                                   "Latency clamp in seconds (default 3600)");
    CLI::Option* opt_real = cmd_compare->add_option("--realizations", realizations_flag,
                                                    "Model realizations (default 100)");
    CLI::Option* opt_seed =
        cmd_compare->add_option("--seed", seed_flag, "Base seed; all randomness flows from it");
    CLI::Option* opt_z =
        cmd_compare->add_option("--z-threshold", z_flag, "Representation flag threshold (default 3)");
    CLI::Option* opt_cap = cmd_compare->add_option("--cap", cap_flag, "Canonicalization cap (1..8)");
    cmd_compare->add_option("--threads", compare.threads,
                            "Worker threads (0 = library default; output is unaffected)");
    cmd_compare->add_flag("--serial", compare.serial, "Run realizations serially");
    cmd_compare->add_option("--out-dir", compare.out_dir, "Output directory")->required();

    casc::FitCmdOptions fit;
    CLI::App* cmd_fit = app.add_subcommand("fit", "Power-law fits for the corpus distributions");
    cmd_fit->add_option("--corpus", fit.corpus_path, "corpus.jsonl from ingest")->required();
    long long xmax_flag = 0;
    cmd_fit->add_option("--xmin", fit.xmin, "Smallest value included in the fit")->default_val(1);
    CLI::Option* opt_xmax =
        cmd_fit->add_option("--xmax", xmax_flag, "Truncate the fitted support at this value");
    cmd_fit->add_option("--out-dir", fit.out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_ingest->parsed()) return casc::cmd_ingest(ingest);
        if (cmd_analyze->parsed()) return casc::cmd_analyze(analyze);
        if (cmd_compare->parsed()) {
            if (*opt_theta) compare.theta = theta_flag;
            if (*opt_eps) compare.epsilon_seconds = epsilon_flag;
            if (*opt_real) compare.realizations = realizations_flag;
            if (*opt_seed) compare.seed = seed_flag;
            if (*opt_z) compare.z_threshold = z_flag;
            if (*opt_cap) compare.cap = cap_flag;
            return casc::cmd_compare(compare);
        }
        if (cmd_fit->parsed()) {
            if (*opt_xmax) fit.xmax = xmax_flag;
            return casc::cmd_fit(fit);
        }
    } catch (const casc::CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
