#include "casc/nullmodel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <stdexcept>

#include "casc/rng.hpp"

namespace casc {

void RewireConfig::validate() const {
    if (!(theta > 0)) throw std::invalid_argument("config: theta must be > 0");
    if (epsilon_seconds <= 0) throw std::invalid_argument("config: epsilon_seconds must be > 0");
    if (realizations < 1) throw std::invalid_argument("config: realizations must be >= 1");
    if (z_threshold < 0) throw std::invalid_argument("config: z_threshold must be >= 0");
    if (cap < 1 || cap > 8) throw std::invalid_argument("config: cap must be in [1, 8]");
}

RewireConfig parse_config_file(std::istream& in, RewireConfig defaults) {
    RewireConfig config = defaults;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        try {
            if (key == "theta")
                config.theta = std::stod(value);
            else if (key == "epsilon_seconds")
                config.epsilon_seconds = std::stoll(value);
            else if (key == "realizations")
                config.realizations = std::stoi(value);
            else if (key == "base_seed")
                config.base_seed = std::stoull(value);
            else if (key == "z_threshold")
                config.z_threshold = std::stod(value);
            else if (key == "cap")
                config.cap = std::stoi(value);
            else
                throw std::invalid_argument("unknown key \"" + key + "\"");
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": value out of range");
        }
    }
    config.validate();
    return config;
}

ThetaFit fit_theta(const Corpus& corpus) {
    const EmpiricalDistribution latencies = latency_distribution(corpus);
    const long long window_days = corpus.table->window.span_days();
    try {
        const auto report = fit_power_law(
            latencies, 1, window_days > 1 ? std::optional<long long>(window_days) : std::nullopt);
        return ThetaFit{-report.mle.exponent, true};
    } catch (const std::invalid_argument&) {
        return ThetaFit{1.5, false};
    }
}

std::vector<CitationIdx> rewire_citations(const Corpus& corpus, const RewireConfig& config,
                                          int realization_index) {
    config.validate();
    const PostTable& table = *corpus.table;
    const double eps = static_cast<double>(config.epsilon_seconds);

    Rng rng = make_rng(derive_seed(config.base_seed, static_cast<std::uint64_t>(realization_index)));
    std::vector<CitationIdx> synthetic;
    synthetic.reserve(corpus.citations.size());
    std::vector<double> cumulative;

    for (const CitationIdx& citation : corpus.citations) {
        const UnixTime t_src = table.time_of(citation.src);
        const auto& pool = table.blog_posts[table.post_blog[citation.dst]];
        // Candidates: every post of the cited blog published no later than the
        // citing post (<=, so the original target always qualifies).
        const auto end = std::upper_bound(
            pool.begin(), pool.end(), t_src,
            [&](UnixTime t, PostIdx p) { return t < table.time_of(p); });
        const std::size_t k = static_cast<std::size_t>(end - pool.begin());

        if (k == 1) {  // single-post blog: citation unchanged, no draw consumed
            synthetic.push_back(CitationIdx{citation.src, pool[0]});
            continue;
        }

        // Weights max(dt, eps)^-theta, in log space relative to the newest
        // candidate; large theta then saturates at 1 instead of overflowing.
        const double log_newest =
            std::log(std::max(static_cast<double>(t_src - table.time_of(pool[k - 1])), eps));
        cumulative.resize(k);
        double acc = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const double dt = std::max(static_cast<double>(t_src - table.time_of(pool[i])), eps);
            acc += std::exp(-config.theta * (std::log(dt) - log_newest));
            cumulative[i] = acc;
        }
        const double u = uniform01(rng) * acc;
        const std::size_t pick = std::min<std::size_t>(
            static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                     cumulative.begin()),
            k - 1);
        synthetic.push_back(CitationIdx{citation.src, pool[pick]});
    }
    return synthetic;
}

CascadeSummary summarize_cascades(std::span<const Cascade> cascades, int cap, Exec exec) {
    CascadeSummary summary;
    summary.census = shape_census(cascades, cap, exec);
    summary.cascades = static_cast<long long>(cascades.size());
    for (const Cascade& cascade : cascades) {
        const long long size = cascade.size();
        const int depth = cascade_depth(cascade);
        ++summary.size_counts[size];
        ++summary.depth_counts[depth];
        if (static_cast<int>(cascade.nodes.size()) > cap)
            ++summary.above_cap_buckets[{static_cast<int>(size), depth}];
    }
    return summary;
}

double moment_mean(const MomentAcc& m, int n) { return n > 0 ? m.sum / n : 0.0; }

double moment_std(const MomentAcc& m, int n) {
    if (n < 2) return 0.0;
    const double var = (m.sum_sq - m.sum * m.sum / n) / (n - 1);
    return var > 0 ? std::sqrt(var) : 0.0;
}

namespace {

struct RealizationOutcome {
    CascadeSummary summary;
    long long duplicates = 0;
};

RealizationOutcome run_one(const Corpus& corpus, const RewireConfig& config, int r) {
    auto [unique, duplicates] = dedup_citations(rewire_citations(corpus, config, r));
    const Corpus model = corpus.with_citations(std::move(unique));
    const std::vector<Cascade> cascades = extract_all_cascades(model, Exec::serial);
    return RealizationOutcome{summarize_cascades(cascades, config.cap, Exec::serial), duplicates};
}

void accumulate(ModelAggregate& agg, const RealizationOutcome& outcome) {
    for (const ShapeCensusEntry& entry : outcome.summary.census.entries) {
        MomentAcc& acc = agg.shapes[entry.code];
        const double f = static_cast<double>(entry.frequency);
        acc.sum += f;
        acc.sum_sq += f * f;
    }
    auto fold_counts = [](auto& dest, const auto& src) {
        for (const auto& [key, count] : src) {
            MomentAcc& acc = dest[key];
            const double f = static_cast<double>(count);
            acc.sum += f;
            acc.sum_sq += f * f;
        }
    };
    fold_counts(agg.size_counts, outcome.summary.size_counts);
    fold_counts(agg.depth_counts, outcome.summary.depth_counts);
    fold_counts(agg.above_cap_buckets, outcome.summary.above_cap_buckets);
    const double n = static_cast<double>(outcome.summary.cascades);
    agg.cascades.sum += n;
    agg.cascades.sum_sq += n * n;
    agg.duplicate_citations_sum += outcome.duplicates;
}

}  // namespace

ModelAggregate run_realizations(const Corpus& corpus, const RewireConfig& config, Exec exec) {
    config.validate();
    const int R = config.realizations;
    std::vector<RealizationOutcome> outcomes(R);

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < R; ++r) outcomes[r] = run_one(corpus, config, r);
    } else {
        for (int r = 0; r < R; ++r) outcomes[r] = run_one(corpus, config, r);
    }

    ModelAggregate agg;
    agg.realizations = R;
    agg.cap = config.cap;
    // Folding in increasing realization order keeps the floating-point sums
    // bit-identical between serial and parallel runs.
    for (int r = 0; r < R; ++r) accumulate(agg, outcomes[r]);
    return agg;
}

const char* to_string(Representation flag) {
    switch (flag) {
        case Representation::over: return "over";
        case Representation::under: return "under";
        case Representation::consistent: return "consistent";
    }
    return "consistent";
}

namespace {

struct ZResult {
    double z = 0;
    Representation flag = Representation::consistent;
};

ZResult z_score(double real, double mean, double std_dev, double threshold) {
    ZResult r;
    if (std_dev > 0) {
        r.z = (real - mean) / std_dev;
        if (r.z > threshold)
            r.flag = Representation::over;
        else if (r.z < -threshold)
            r.flag = Representation::under;
    } else if (real > mean) {
        r.z = std::numeric_limits<double>::infinity();
        r.flag = Representation::over;
    } else if (real < mean) {
        r.z = -std::numeric_limits<double>::infinity();
        r.flag = Representation::under;
    } else {
        r.z = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

}  // namespace

ComparisonReport compare(const CascadeSummary& real, const ModelAggregate& model,
                         double z_threshold) {
    if (real.census.cap != model.cap)
        throw std::invalid_argument("compare: censuses built with different canonicalization caps");

    ComparisonReport report;
    report.z_threshold = z_threshold;
    report.cap = model.cap;
    report.realizations = model.realizations;
    report.real_cascades = real.cascades;
    report.model_mean_cascades = moment_mean(model.cascades, model.realizations);
    report.model_mean_duplicate_citations =
        model.realizations > 0
            ? static_cast<double>(model.duplicate_citations_sum) / model.realizations
            : 0.0;

    std::map<ShapeCode, long long, ShapeCodeOrder> real_freq;
    for (const ShapeCensusEntry& entry : real.census.entries)
        real_freq[entry.code] = entry.frequency;

    std::map<ShapeCode, std::pair<long long, MomentAcc>, ShapeCodeOrder> merged;
    for (const auto& [code, freq] : real_freq) merged[code].first = freq;
    for (const auto& [code, acc] : model.shapes) merged[code].second = acc;

    for (const auto& [code, cell] : merged) {
        ShapeRow row;
        row.code = code;
        row.arc_count = shape_arc_count(code);
        row.sc = shape_sc(code);
        row.real_freq = cell.first;
        row.model_mean = moment_mean(cell.second, model.realizations);
        row.model_std = moment_std(cell.second, model.realizations);
        const ZResult zr = z_score(static_cast<double>(row.real_freq), row.model_mean,
                                   row.model_std, z_threshold);
        row.z = zr.z;
        row.flag = zr.flag;
        report.shapes.push_back(std::move(row));
    }
    std::sort(report.shapes.begin(), report.shapes.end(), [](const ShapeRow& a, const ShapeRow& b) {
        if (a.real_freq != b.real_freq) return a.real_freq > b.real_freq;
        if (a.model_mean != b.model_mean) return a.model_mean > b.model_mean;
        return shape_code_less(a.code, b.code);
    });

    std::map<std::pair<int, int>, std::pair<long long, MomentAcc>> buckets;
    for (const auto& [key, count] : real.above_cap_buckets) buckets[key].first = count;
    for (const auto& [key, acc] : model.above_cap_buckets) buckets[key].second = acc;
    for (const auto& [key, cell] : buckets) {
        BucketRow row;
        row.size = key.first;
        row.depth = key.second;
        row.real_freq = cell.first;
        row.model_mean = moment_mean(cell.second, model.realizations);
        row.model_std = moment_std(cell.second, model.realizations);
        const ZResult zr = z_score(static_cast<double>(row.real_freq), row.model_mean,
                                   row.model_std, z_threshold);
        row.z = zr.z;
        row.flag = zr.flag;
        report.above_cap.push_back(row);
    }

    auto overlay = [&](const std::map<long long, long long>& real_counts,
                       const std::map<long long, MomentAcc>& model_counts) {
        std::map<long long, OverlayRow> rows;
        for (const auto& [value, count] : real_counts) {
            rows[value].value = value;
            rows[value].real_count = count;
        }
        for (const auto& [value, acc] : model_counts) {
            rows[value].value = value;
            rows[value].model_mean = moment_mean(acc, model.realizations);
            rows[value].model_std = moment_std(acc, model.realizations);
        }
        std::vector<OverlayRow> out;
        out.reserve(rows.size());
        for (const auto& [value, row] : rows) out.push_back(row);
        return out;
    };
    report.size_overlay = overlay(real.size_counts, model.size_counts);
    report.depth_overlay = overlay(real.depth_counts, model.depth_counts);
    return report;
}

}  // namespace casc
