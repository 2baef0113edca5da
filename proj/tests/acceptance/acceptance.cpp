// Acceptance suite: every criterion runs at its stated tolerance and prints
// one pass/fail line. Exit status is the number of failed criteria.
//
// Usage: casc-acceptance [criterion-number...]

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "casc/cascade.hpp"
#include "casc/commands.hpp"
#include "casc/motifs.hpp"
#include "casc/nullmodel.hpp"
#include "casc/report.hpp"
#include "casc/stats.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"
#include "tempdir.hpp"

using namespace casc;
using namespace casc::testsupport;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. sc correctness: chains 0, stars 1, mixed 0.5, single arc undefined.

Corpus chain_corpus(int arcs) {
    std::vector<std::tuple<std::string, std::string, std::string>> posts;
    std::vector<std::pair<std::string, std::string>> citations;
    const UnixTime start = parse_utc("2010-03-01T00:00:00Z");
    for (int i = 0; i <= arcs; ++i) {
        posts.emplace_back("n" + std::to_string(i), "b" + std::to_string(i),
                           format_utc(start + i * 3600));
        if (i > 0) citations.emplace_back("n" + std::to_string(i), "n" + std::to_string(i - 1));
    }
    return make_corpus(posts, citations);
}

Corpus star_corpus(int leaves) {
    std::vector<std::tuple<std::string, std::string, std::string>> posts;
    std::vector<std::pair<std::string, std::string>> citations;
    const UnixTime start = parse_utc("2010-03-01T00:00:00Z");
    posts.emplace_back("origin", "b_origin", format_utc(start));
    for (int i = 0; i < leaves; ++i) {
        posts.emplace_back("leaf" + std::to_string(i), "b" + std::to_string(i),
                           format_utc(start + (i + 1) * 3600));
        citations.emplace_back("leaf" + std::to_string(i), "origin");
    }
    return make_corpus(posts, citations);
}

std::optional<double> sc_of_single_cascade(const Corpus& corpus) {
    const auto origins = find_origins(corpus);
    if (origins.size() != 1) return std::nullopt;
    return sc_coefficient(extract_cascade(corpus, origins[0]));
}

Outcome criterion_sc() {
    Outcome outcome;
    for (int arcs = 2; arcs <= 6; ++arcs) {
        const auto sc = sc_of_single_cascade(chain_corpus(arcs));
        outcome.require(sc.has_value() && *sc == 0.0,
                        "chain of " + std::to_string(arcs) + " arcs: sc != 0");
    }
    for (int leaves = 2; leaves <= 6; ++leaves) {
        const auto sc = sc_of_single_cascade(star_corpus(leaves));
        outcome.require(sc.has_value() && *sc == 1.0,
                        "star with " + std::to_string(leaves) + " leaves: sc != 1");
    }
    {
        const Corpus corpus = make_corpus(
            {
                {"o", "b0", "2010-03-01T00:00:00Z"},
                {"a", "b1", "2010-03-01T01:00:00Z"},
                {"b", "b2", "2010-03-01T02:00:00Z"},
                {"c", "b3", "2010-03-01T03:00:00Z"},
            },
            {{"a", "o"}, {"b", "o"}, {"c", "a"}});
        const auto sc = sc_of_single_cascade(corpus);
        outcome.require(sc.has_value() && *sc == 0.5, "mixed {a->o, b->o, c->a}: sc != 0.5");
    }
    {
        const auto sc = sc_of_single_cascade(star_corpus(1));
        outcome.require(!sc.has_value(), "single-arc cascade: sc should be undefined");
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// 2. Cascade extraction vs brute-force reachability on 1,000 random corpora.

Outcome criterion_extraction_oracle() {
    Outcome outcome;
    Rng rng = make_rng(1001);
    for (int trial = 0; trial < 1000; ++trial) {
        const Corpus corpus = random_corpus(rng);
        const int n = static_cast<int>(corpus.post_count());
        std::vector<std::pair<int, int>> arcs;
        arcs.reserve(corpus.citations.size());
        for (const CitationIdx& c : corpus.citations) arcs.emplace_back(c.src, c.dst);

        if (has_cycle(n, arcs)) {
            outcome.require(false, "trial " + std::to_string(trial) + ": extracted graph cyclic");
            break;
        }
        for (const PostIdx origin : find_origins(corpus)) {
            const Cascade cascade = extract_cascade(corpus, origin);
            const std::vector<int> expected = reachability_members(n, arcs, origin);
            const std::vector<int> got(cascade.nodes.begin(), cascade.nodes.end());
            if (got != expected) {
                outcome.require(false, "trial " + std::to_string(trial) + ": node set mismatch");
                return outcome;
            }
        }
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// 3. Motif exactness: canonical grouping == brute-force isomorphism grouping.

Outcome criterion_motif_exactness() {
    Outcome outcome;
    Rng rng = make_rng(1002);
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> graphs;
    std::vector<ShapeCode> codes;
    for (int i = 0; i < 500; ++i) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 6));
        std::vector<int> order(n);
        for (int k = 0; k < n; ++k) order[k] = k;
        for (int k = n - 1; k > 0; --k)
            std::swap(order[k], order[uniform_below(rng, k + 1)]);
        std::vector<std::pair<int, int>> arcs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (uniform01(rng) < 0.4) arcs.emplace_back(order[b], order[a]);
        graphs.emplace_back(n, arcs);
        codes.push_back(canonical_code_digraph(n, arcs));
    }

    const std::vector<int> oracle = isomorphism_classes(graphs);
    long long mismatches = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t j = i + 1; j < graphs.size(); ++j)
            if ((codes[i] == codes[j]) != (oracle[i] == oracle[j])) ++mismatches;
    outcome.require(mismatches == 0,
                    std::to_string(mismatches) + " grouping mismatches vs isomorphism oracle");
    return outcome;
}

// ---------------------------------------------------------------------------
// 4. Power-law MLE recovery within +/-0.05 in >= 95% of 20 trials, both
//    exponents, 1e5 draws each, < 10 s per trial.

Outcome criterion_fit_recovery() {
    Outcome outcome;
    for (const double truth : {1.5, 2.1}) {
        const PowerLawSampler sampler(truth, 1);
        int hits = 0;
        double worst_trial_seconds = 0;
        for (int trial = 0; trial < 20; ++trial) {
            const auto start = Clock::now();
            Rng rng = make_rng(derive_seed(1003, trial + (truth > 2.0 ? 1000 : 0)));
            std::vector<long long> samples(100000);
            for (auto& s : samples) s = sampler.draw(rng);
            const auto report = fit_power_law(EmpiricalDistribution::from_samples(samples), 1);
            if (std::abs(-report.mle.exponent - truth) <= 0.05) ++hits;
            worst_trial_seconds = std::max(
                worst_trial_seconds, std::chrono::duration<double>(Clock::now() - start).count());
        }
        outcome.require(hits >= 19, "exponent " + fmt(truth) + ": only " + std::to_string(hits) +
                                        "/20 trials within 0.05");
        outcome.require(worst_trial_seconds < 10.0,
                        "trial exceeded 10 s (" + fmt(worst_trial_seconds) + " s)");
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// 5. Null-model conservation on 100 random corpora, zero violations.

Outcome criterion_conservation() {
    Outcome outcome;
    Rng rng = make_rng(1004);
    RewireConfig config;
    for (int trial = 0; trial < 100; ++trial) {
        const Corpus corpus = random_corpus(rng);
        config.base_seed = trial;
        const auto synthetic = rewire_citations(corpus, config, 0);

        if (synthetic.size() != corpus.citations.size()) {
            outcome.require(false, "citation count not conserved");
            return outcome;
        }
        std::map<PostIdx, long long> out_real, out_synth;
        std::map<BlogIdx, long long> in_real, in_synth;
        bool time_ok = true;
        for (const CitationIdx& c : corpus.citations) {
            ++out_real[c.src];
            ++in_real[corpus.blog_of(c.dst)];
        }
        for (const CitationIdx& c : synthetic) {
            ++out_synth[c.src];
            ++in_synth[corpus.blog_of(c.dst)];
            time_ok = time_ok && corpus.table->time_of(c.dst) <= corpus.table->time_of(c.src);
        }
        outcome.require(out_real == out_synth, "per-source-post out-degree not conserved");
        outcome.require(in_real == in_synth, "per-target-blog in-degree not conserved");
        outcome.require(time_ok, "time-consistency violated");
        if (!outcome.pass) return outcome;
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// 6. Latency calibration: >= 1e4 citations, latencies drawn with exponent
//    1.5; rewire with the fitted theta; day-binned KS <= 0.05.

Outcome criterion_latency_calibration() {
    Outcome outcome;
    Rng rng = make_rng(1005);
    ModelCorpusOptions options;
    options.blogs = 30;
    options.posts_per_blog_min = 600;
    options.posts_per_blog_max = 800;
    options.citations = 12000;
    options.window_days = 700;
    options.day_aligned = true;
    options.epsilon_seconds = kSecondsPerDay;
    options.theta = 1.5;
    const Corpus corpus = model_corpus(rng, options);

    const ThetaFit fit = fit_theta(corpus);
    outcome.require(fit.fitted, "theta fit fell back to the default");

    RewireConfig config;
    config.theta = fit.theta;
    config.epsilon_seconds = kSecondsPerDay;
    config.base_seed = 60;
    const auto synthetic = rewire_citations(corpus, config, 0);
    std::map<long long, long long> counts;
    for (const CitationIdx& c : synthetic)
        ++counts[(corpus.table->time_of(c.src) - corpus.table->time_of(c.dst)) / kSecondsPerDay];
    const double ks = ks_distance(latency_distribution(corpus),
                                  EmpiricalDistribution::from_counts(counts));
    outcome.require(ks <= 0.05, "KS " + fmt(ks) + " > 0.05 (fitted theta " + fmt(fit.theta) + ")");
    if (outcome.pass)
        outcome.detail = "KS " + fmt(ks) + ", fitted theta " + fmt(fit.theta);
    return outcome;
}

// ---------------------------------------------------------------------------
// 7. Self-consistency: held-out realization vs aggregate of 100; >= 90% of
//    top-10 shapes consistent at |z| <= 3 over 20 trials; model size
//    distribution heavy-tailed with exponent magnitude in [1.5, 3.5].

Outcome criterion_self_consistency() {
    Outcome outcome;
    Rng rng = make_rng(1006);
    ModelCorpusOptions options;
    options.blogs = 250;
    options.posts_per_blog_min = 10;
    options.posts_per_blog_max = 40;
    options.citations = 5500;
    options.zipf_s = 1.0;
    const Corpus corpus = model_corpus(rng, options);

    long long consistent = 0;
    long long judged = 0;
    double pooled_size_sum = 0;
    std::map<long long, long long> pooled_sizes;

    for (int trial = 0; trial < 20; ++trial) {
        RewireConfig config;
        config.realizations = 100;
        config.base_seed = 9000 + trial;
        const ModelAggregate aggregate = run_realizations(corpus, config);

        // Held-out realization: index 100, never part of the aggregate.
        auto [unique, duplicates] = dedup_citations(rewire_citations(corpus, config, 100));
        const Corpus held_out = corpus.with_citations(std::move(unique));
        const CascadeSummary held_summary =
            summarize_cascades(extract_all_cascades(held_out), config.cap, Exec::parallel);

        const ComparisonReport report = compare(held_summary, aggregate, 3.0);
        std::vector<ShapeRow> rows = report.shapes;
        std::sort(rows.begin(), rows.end(), [](const ShapeRow& a, const ShapeRow& b) {
            if (a.model_mean != b.model_mean) return a.model_mean > b.model_mean;
            return shape_code_less(a.code, b.code);
        });
        const std::size_t top = std::min<std::size_t>(10, rows.size());
        for (std::size_t i = 0; i < top; ++i) {
            ++judged;
            if (rows[i].flag == Representation::consistent) ++consistent;
        }

        for (const auto& [value, acc] : aggregate.size_counts) {
            pooled_sizes[value] += static_cast<long long>(acc.sum);
            pooled_size_sum += acc.sum;
        }
    }

    const double fraction = static_cast<double>(consistent) / static_cast<double>(judged);
    outcome.require(fraction >= 0.90, "only " + fmt(100 * fraction) + "% of top-10 shapes consistent");

    const auto report = fit_power_law(EmpiricalDistribution::from_counts(pooled_sizes), 1);
    const double magnitude = -report.mle.exponent;
    outcome.require(magnitude >= 1.5 && magnitude <= 3.5,
                    "model size-distribution exponent " + fmt(magnitude) + " outside [1.5, 3.5]");
    if (outcome.pass)
        outcome.detail = fmt(100 * fraction) + "% consistent, size exponent " + fmt(magnitude);
    return outcome;
}

// ---------------------------------------------------------------------------
// 8. Determinism: cmd_compare byte-identical across two runs and across
//    serial vs parallel execution, through the real CLI binary.

int run_cli(const std::string& command) {
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion_determinism() {
    Outcome outcome;
    TempDir dir("acceptance8");
    Rng rng = make_rng(1007);
    ModelCorpusOptions options;
    options.blogs = 60;
    options.citations = 1200;
    const Corpus corpus = model_corpus(rng, options);
    write_corpus_jsonl(dir.file("corpus.jsonl"), corpus);

    const std::string cli = CASC_CLI_PATH;
    const std::string base = cli + " compare --corpus " + dir.file("corpus.jsonl").string() +
                             " --realizations 20 --seed 424242 --theta 1.5";
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"serial_a", " --serial --threads 1"},
        {"serial_b", " --serial --threads 1"},
        {"parallel_a", " --threads 2"},
        {"parallel_b", " --threads 2"},
    };
    std::vector<std::string> reports;
    for (const auto& [name, flags] : runs) {
        const std::string out_dir = (dir.path() / name).string();
        const int code = run_cli(base + flags + " --out-dir " + out_dir + " 2>/dev/null");
        outcome.require(code == 0, "cmd_compare exited with " + std::to_string(code));
        if (!outcome.pass) return outcome;
        reports.push_back(dir.read(name + "/comparison.json"));
        outcome.require(!reports.back().empty(), "empty comparison.json");
    }
    outcome.require(reports[0] == reports[1], "two serial runs differ");
    outcome.require(reports[0] == reports[2], "serial vs parallel runs differ");
    outcome.require(reports[2] == reports[3], "two parallel runs differ");
    return outcome;
}

// ---------------------------------------------------------------------------
// 9. Correlation closed forms, exact to 1e-12.

Outcome criterion_correlations() {
    Outcome outcome;
    using Pairs = std::vector<std::pair<double, double>>;
    auto close = [](double got, double want) { return std::abs(got - want) <= 1e-12; };

    outcome.require(close(*pearson(Pairs{{1, 1}, {2, 2}, {3, 3}}), 1.0), "pearson identity != 1");
    outcome.require(close(*pearson(Pairs{{1, 3}, {2, 2}, {3, 1}}), -1.0), "pearson reversal != -1");
    outcome.require(close(*pearson(Pairs{{1, 2}, {2, 1}, {3, 3}}), 0.5), "pearson mixed != 0.5");

    const std::vector<double> base{1, 2, 3, 4};
    const std::vector<double> same{10, 20, 30, 40};
    const std::vector<double> reversed{4, 3, 2, 1};
    const std::vector<double> swapped{1, 3, 2, 4};
    outcome.require(close(*rank_correlation(base, same), 1.0), "rank identity != 1");
    outcome.require(close(*rank_correlation(base, reversed), -1.0), "rank reversal != -1");
    outcome.require(close(*rank_correlation(base, swapped), 0.8),
                    "rank_correlation((1,2,3,4),(1,3,2,4)) != 0.8");
    outcome.require(!pearson(Pairs{{1, 1}, {1, 2}}).has_value(),
                    "zero-variance pearson should be undefined");
    return outcome;
}

struct Criterion {
    int number;
    const char* name;
    double time_limit_seconds;  // 0 = no stated limit
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    const std::vector<Criterion> criteria = {
        {1, "sc correctness (chains, stars, mixed, single-arc)", 1.0, criterion_sc},
        {2, "cascade extraction vs reachability oracle (1000 corpora)", 30.0,
         criterion_extraction_oracle},
        {3, "motif exactness vs isomorphism oracle (500 DAGs)", 60.0, criterion_motif_exactness},
        {4, "power-law MLE recovery (exponents 1.5, 2.1)", 0.0, criterion_fit_recovery},
        {5, "null-model conservation (100 corpora)", 0.0, criterion_conservation},
        {6, "latency calibration KS <= 0.05", 0.0, criterion_latency_calibration},
        {7, "null-model self-consistency + heavy tail", 0.0, criterion_self_consistency},
        {8, "compare determinism (serial vs parallel, reruns)", 0.0, criterion_determinism},
        {9, "correlation closed forms", 0.0, criterion_correlations},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        if (!selected.empty() && !selected.count(criterion.number)) continue;
        const auto start = Clock::now();
        Outcome outcome = criterion.run();
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (criterion.time_limit_seconds > 0 && elapsed >= criterion.time_limit_seconds)
            outcome.require(false, "runtime " + fmt(elapsed) + " s exceeds " +
                                       fmt(criterion.time_limit_seconds) + " s");
        std::printf("%s  criterion %d: %s (%.2fs)%s%s\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.number, criterion.name, elapsed,
                    outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str());
        std::fflush(stdout);
        failures += outcome.pass ? 0 : 1;
    }
    return failures;
}
