#include "casc/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "casc/cascade.hpp"
#include "casc/ingest.hpp"
#include "casc/nullmodel.hpp"
#include "casc/report.hpp"

namespace casc {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(2, "cannot open input file: " + path);
    return in;
}

fs::path prepare_out_dir(const std::string& out_dir) {
    if (out_dir.empty()) throw CliError(2, "output directory not set");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw CliError(2, "cannot create output directory " + out_dir + ": " + ec.message());
    return fs::path(out_dir);
}

std::string fmt_double_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Corpus load_corpus(const std::string& path) {
    if (!fs::exists(path)) throw CliError(2, "cannot open corpus file: " + path);
    try {
        return read_corpus_jsonl(path);
    } catch (const std::exception& e) {
        throw CliError(2, std::string("corpus load failed: ") + e.what());
    }
}

TopicLabels load_topics(const std::string& path) {
    if (path.empty()) return {};
    auto in = open_input(path);
    try {
        return parse_topic_labels(in);
    } catch (const ParseError& e) {
        throw CliError(2, path + ": " + e.what());
    }
}

}  // namespace

int cmd_ingest(const IngestOptions& options) {
    Window window;
    try {
        window.start = parse_utc(options.window_start);
        window.end = parse_utc(options.window_end);
    } catch (const std::invalid_argument& e) {
        throw CliError(2, std::string("bad window: ") + e.what());
    }
    if (window.start >= window.end) throw CliError(2, "window start must precede window end");

    std::vector<Post> posts;
    {
        auto in = open_input(options.posts_path);
        try {
            posts = parse_posts(in);
        } catch (const ParseError& e) {
            throw CliError(2, options.posts_path + ": " + e.what());
        }
    }
    std::vector<RawCitation> citations;
    {
        auto in = open_input(options.citations_path);
        try {
            citations = parse_citations(in);
        } catch (const ParseError& e) {
            throw CliError(2, options.citations_path + ": " + e.what());
        }
    }

    const FilterResult result = filter_corpus(std::move(posts), citations, window);
    if (result.summary.posts == 0)
        std::cerr << "warning: no posts fall inside the window\n";
    else if (result.summary.citations == 0)
        std::cerr << "warning: no citations survived filtering\n";

    const fs::path out = prepare_out_dir(options.out_dir);
    write_corpus_jsonl(out / "corpus.jsonl", result.corpus);
    write_summary_json(out / "summary.json", result.summary);

    Manifest manifest;
    manifest.command = "ingest";
    manifest.inputs = {{"posts", options.posts_path}, {"citations", options.citations_path}};
    manifest.params = {{"window_start", options.window_start},
                       {"window_end", options.window_end}};
    manifest.out_dir = options.out_dir;
    manifest.outputs = {"corpus.jsonl", "summary.json"};
    write_manifest_json(out / "manifest.json", manifest);
    return 0;
}

int cmd_analyze(const AnalyzeOptions& options) {
    const Corpus corpus = load_corpus(options.corpus_path);
    const TopicLabels topics = load_topics(options.topics_path);
    if (options.cap < 1 || options.cap > 8) throw CliError(2, "cap must be in [1, 8]");

    const std::vector<Cascade> cascades = extract_all_cascades(corpus);
    std::vector<CascadeMetrics> metrics(cascades.size());
    for (std::size_t i = 0; i < cascades.size(); ++i)
        metrics[i] = cascade_metrics(corpus, cascades[i], topics);
    const ShapeCensus census = shape_census(cascades, options.cap);

    const fs::path out = prepare_out_dir(options.out_dir);
    write_cascades_jsonl(out / "cascades.jsonl", corpus, cascades, metrics);
    write_census_csv(out / "census.csv", census);
    write_census_examples_jsonl(out / "census_examples.jsonl", corpus, cascades, census);
    write_census_above_cap_csv(out / "census_above_cap.csv", cascades, options.cap);

    const EmpiricalDistribution latencies = latency_distribution(corpus);
    write_distribution_csv(out / "latency.csv", latencies);
    const DegreeDistributions degrees = degree_distributions(corpus);
    write_degrees_csv(out / "degrees.csv", degrees);
    write_blog_degrees_csv(out / "blog_degrees.csv", degrees);

    FitsReport fits;
    if (corpus.post_count() > 0) {
        const WeekdayActivity activity = weekday_activity(corpus);
        write_weekday_csv(out / "weekday.csv", activity);
        fits.weekend_dip = activity.weekend_dip;
    } else {
        write_weekday_csv(out / "weekday.csv", WeekdayActivity{});
    }

    // Degree correlation over all blogs, and with zero-degree blogs excluded.
    {
        std::vector<std::pair<double, double>> all, nonzero;
        for (const BlogDegrees& blog : degrees.blogs) {
            all.emplace_back(static_cast<double>(blog.out_degree),
                             static_cast<double>(blog.in_degree));
            if (blog.out_degree > 0 || blog.in_degree > 0)
                nonzero.emplace_back(static_cast<double>(blog.out_degree),
                                     static_cast<double>(blog.in_degree));
        }
        fits.pearson_in_out = pearson(all);
        fits.pearson_in_out_nonzero = pearson(nonzero);
    }

    // Rank correlation of sc vs topic-unity over cascades with both defined.
    {
        std::vector<double> sc_values, unity_values;
        for (const CascadeMetrics& m : metrics) {
            if (m.sc && m.unity) {
                sc_values.push_back(*m.sc);
                unity_values.push_back(*m.unity);
            }
        }
        fits.sc_topic_unity_rank_correlation = rank_correlation(sc_values, unity_values);
    }

    std::map<long long, long long> size_counts;
    for (const Cascade& cascade : cascades) ++size_counts[cascade.size()];
    const EmpiricalDistribution sizes = EmpiricalDistribution::from_counts(size_counts);

    auto try_fit = [&](const std::string& name, const EmpiricalDistribution& dist,
                       std::optional<long long> xmax) {
        FitsReport::Entry entry;
        entry.name = name;
        try {
            entry.fit = fit_power_law(dist, 1, xmax);
        } catch (const std::invalid_argument& e) {
            entry.skipped_reason = e.what();
        }
        fits.fits.push_back(std::move(entry));
    };
    const long long window_days = corpus.table->window.span_days();
    try_fit("latency_days", latencies,
            window_days > 1 ? std::optional<long long>(window_days) : std::nullopt);
    try_fit("cascade_size", sizes, std::nullopt);
    try_fit("blog_in_degree", degrees.in_dist, std::nullopt);
    try_fit("blog_out_degree", degrees.out_dist, std::nullopt);
    write_fits_json(out / "fits.json", fits);

    Manifest manifest;
    manifest.command = "analyze";
    manifest.inputs = {{"corpus", options.corpus_path}, {"topics", options.topics_path}};
    manifest.params = {{"cap", std::to_string(options.cap)}};
    manifest.out_dir = options.out_dir;
    manifest.outputs = {"cascades.jsonl", "census.csv",      "census_examples.jsonl",
                        "census_above_cap.csv", "latency.csv", "degrees.csv",
                        "blog_degrees.csv",     "weekday.csv", "fits.json"};
    write_manifest_json(out / "manifest.json", manifest);
    return 0;
}

int cmd_compare(const CompareOptions& options) {
    const Corpus corpus = load_corpus(options.corpus_path);

    RewireConfig config;
    if (!options.config_path.empty()) {
        auto in = open_input(options.config_path);
        try {
            config = parse_config_file(in);
        } catch (const std::invalid_argument& e) {
            throw CliError(2, options.config_path + ": " + e.what());
        }
    }
    if (options.epsilon_seconds) config.epsilon_seconds = *options.epsilon_seconds;
    if (options.realizations) config.realizations = *options.realizations;
    if (options.seed) config.base_seed = *options.seed;
    if (options.z_threshold) config.z_threshold = *options.z_threshold;
    if (options.cap) config.cap = *options.cap;

    CompareConfigEcho echo;
    if (options.theta) {
        config.theta = *options.theta;
    } else {
        const ThetaFit fit = fit_theta(corpus);
        config.theta = fit.theta;
        echo.theta_fitted = true;
        echo.theta_fit_fallback = !fit.fitted;
        if (!fit.fitted)
            std::cerr << "warning: too few latencies to fit theta, using default "
                      << config.theta << "\n";
    }
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw CliError(2, e.what());
    }
    echo.config = config;

    set_threads(options.threads);
    const Exec exec = options.serial ? Exec::serial : Exec::parallel;

    const std::vector<Cascade> real_cascades = extract_all_cascades(corpus, exec);
    const CascadeSummary real = summarize_cascades(real_cascades, config.cap, exec);
    const ModelAggregate model = run_realizations(corpus, config, exec);
    const ComparisonReport report = compare(real, model, config.z_threshold);

    const fs::path out = prepare_out_dir(options.out_dir);
    write_comparison_json(out / "comparison.json", report, echo);
    write_overlay_csv(out / "overlay_size.csv", report.size_overlay, report.real_cascades,
                      report.model_mean_cascades);
    write_overlay_csv(out / "overlay_depth.csv", report.depth_overlay, report.real_cascades,
                      report.model_mean_cascades);

    Manifest manifest;
    manifest.command = "compare";
    manifest.inputs = {{"corpus", options.corpus_path}, {"config", options.config_path}};
    manifest.params = {
        {"theta", fmt_double_param(config.theta)},
        {"theta_source", options.theta ? "explicit" : (echo.theta_fit_fallback ? "fallback" : "fitted")},
        {"epsilon_seconds", std::to_string(config.epsilon_seconds)},
        {"realizations", std::to_string(config.realizations)},
        {"base_seed", std::to_string(config.base_seed)},
        {"z_threshold", fmt_double_param(config.z_threshold)},
        {"cap", std::to_string(config.cap)}};
    manifest.out_dir = options.out_dir;
    manifest.outputs = {"comparison.json", "overlay_size.csv", "overlay_depth.csv"};
    write_manifest_json(out / "manifest.json", manifest);
    return 0;
}

int cmd_fit(const FitCmdOptions& options) {
    const Corpus corpus = load_corpus(options.corpus_path);
    if (options.xmin < 1) throw CliError(2, "xmin must be >= 1");
    if (options.xmax && *options.xmax <= options.xmin)
        throw CliError(2, "xmax must exceed xmin");

    const std::vector<Cascade> cascades = extract_all_cascades(corpus);
    std::map<long long, long long> size_counts;
    for (const Cascade& cascade : cascades) ++size_counts[cascade.size()];

    FitsReport fits;
    auto try_fit = [&](const std::string& name, const EmpiricalDistribution& dist) {
        FitsReport::Entry entry;
        entry.name = name;
        try {
            entry.fit = fit_power_law(dist, options.xmin, options.xmax);
        } catch (const std::invalid_argument& e) {
            entry.skipped_reason = e.what();
        }
        fits.fits.push_back(std::move(entry));
    };
    const DegreeDistributions degrees = degree_distributions(corpus);
    try_fit("latency_days", latency_distribution(corpus));
    try_fit("cascade_size", EmpiricalDistribution::from_counts(size_counts));
    try_fit("blog_in_degree", degrees.in_dist);
    try_fit("blog_out_degree", degrees.out_dist);

    const fs::path out = prepare_out_dir(options.out_dir);
    write_fits_json(out / "fits.json", fits);

    Manifest manifest;
    manifest.command = "fit";
    manifest.inputs = {{"corpus", options.corpus_path}};
    manifest.params = {{"xmin", std::to_string(options.xmin)},
                       {"xmax", options.xmax ? std::to_string(*options.xmax) : "none"}};
    manifest.out_dir = options.out_dir;
    manifest.outputs = {"fits.json"};
    write_manifest_json(out / "manifest.json", manifest);
    return 0;
}

}  // namespace casc
