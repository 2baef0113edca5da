#include "casc/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "casc/ingest.hpp"

namespace casc {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary: no CRLF translation
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json opt_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

// NaN -> null (undefined), +/-inf -> string sentinel, else the number.
json z_json(double z) {
    if (std::isnan(z)) return nullptr;
    if (std::isinf(z)) return z > 0 ? json("inf") : json("-inf");
    return z;
}

json fit_json(const PowerLawFit& fit) {
    json j;
    j["exponent"] = fit.exponent;
    j["xmin"] = fit.xmin;
    j["xmax"] = fit.xmax ? json(*fit.xmax) : json(nullptr);
    j["ks"] = fit.ks_statistic;
    j["n_tail"] = fit.n_tail;
    j["method"] = fit.method;
    return j;
}

}  // namespace

void write_corpus_jsonl(const std::filesystem::path& path, const Corpus& corpus) {
    auto out = open_out(path);
    json window;
    window["type"] = "window";
    window["start"] = format_utc(corpus.table->window.start);
    window["end"] = format_utc(corpus.table->window.end);
    out << window.dump() << '\n';
    for (const Post& post : corpus.table->posts) {
        json j;
        j["type"] = "post";
        j["post_id"] = post.post_id;
        j["blog_id"] = post.blog_id;
        j["published_at"] = format_utc(post.published_at);
        out << j.dump() << '\n';
    }
    for (const CitationIdx& c : corpus.citations) {
        json j;
        j["type"] = "citation";
        j["src_post_id"] = corpus.post(c.src).post_id;
        j["dst_post_id"] = corpus.post(c.dst).post_id;
        out << j.dump() << '\n';
    }
    finish(out, path);
}

Corpus read_corpus_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());

    std::optional<Window> window;
    std::vector<Post> posts;
    std::vector<RawCitation> raw_citations;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError("corpus line " + std::to_string(line_no) + ": " + e.what());
        }
        const std::string type = record.value("type", "");
        if (type == "window") {
            window = Window{parse_utc(record.at("start").get<std::string>()),
                            parse_utc(record.at("end").get<std::string>())};
        } else if (type == "post") {
            posts.push_back(Post{record.at("post_id").get<std::string>(),
                                 record.at("blog_id").get<std::string>(),
                                 parse_utc(record.at("published_at").get<std::string>())});
        } else if (type == "citation") {
            raw_citations.push_back(RawCitation{record.at("src_post_id").get<std::string>(),
                                                record.at("dst_post_id").get<std::string>()});
        } else {
            throw ParseError("corpus line " + std::to_string(line_no) + ": unknown record type");
        }
    }
    if (!window) throw ParseError("corpus file has no window record: " + path.string());

    auto table = PostTable::build(std::move(posts), *window);
    std::vector<CitationIdx> citations;
    citations.reserve(raw_citations.size());
    for (const RawCitation& raw : raw_citations) {
        const PostIdx src = table->index_of(raw.src_post_id);
        const PostIdx dst = table->index_of(raw.dst_post_id);
        if (src < 0 || dst < 0)
            throw ParseError("corpus cites unknown post: " + raw.src_post_id + " -> " +
                             raw.dst_post_id);
        citations.push_back(CitationIdx{src, dst});
    }
    return Corpus::build(std::move(table), std::move(citations));  // re-validates invariants
}

void write_summary_json(const std::filesystem::path& path, const CorpusSummary& summary) {
    json j;
    j["blogs"] = summary.blogs;
    j["posts"] = summary.posts;
    j["citations"] = summary.citations;
    j["window"]["start"] = format_utc(summary.window.start);
    j["window"]["end"] = format_utc(summary.window.end);
    j["removed"] = summary.removed;
    j["raw_citations"] = summary.raw_citations;
    j["posts_outside_window"] = summary.posts_outside_window;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

namespace {

json cascade_json(const Corpus& corpus, const Cascade& cascade) {
    std::vector<std::string> node_ids;
    node_ids.reserve(cascade.nodes.size());
    for (const PostIdx p : cascade.nodes) node_ids.push_back(corpus.post(p).post_id);
    std::sort(node_ids.begin(), node_ids.end());

    std::vector<std::pair<std::string, std::string>> arc_ids;
    arc_ids.reserve(cascade.arcs.size());
    for (const CitationIdx& arc : cascade.arcs)
        arc_ids.emplace_back(corpus.post(arc.src).post_id, corpus.post(arc.dst).post_id);
    std::sort(arc_ids.begin(), arc_ids.end());

    json j;
    j["origin"] = corpus.post(cascade.origin).post_id;
    j["nodes"] = node_ids;
    json arcs = json::array();
    for (const auto& [src, dst] : arc_ids) arcs.push_back(json::array({src, dst}));
    j["arcs"] = std::move(arcs);
    return j;
}

}  // namespace

void write_cascades_jsonl(const std::filesystem::path& path, const Corpus& corpus,
                          std::span<const Cascade> cascades,
                          std::span<const CascadeMetrics> metrics) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < cascades.size(); ++i) {
        json j = cascade_json(corpus, cascades[i]);
        const CascadeMetrics& m = metrics[i];
        j["size"] = m.size;
        j["depth"] = m.depth;
        j["sc"] = opt_json(m.sc);
        j["topic"] = m.topic ? json(*m.topic) : json(nullptr);
        j["topic_unity"] = opt_json(m.unity);
        out << j.dump() << '\n';
    }
    finish(out, path);
}

void write_census_csv(const std::filesystem::path& path, const ShapeCensus& census) {
    auto out = open_out(path);
    out << "rank,node_count,arc_count,code,frequency\n";
    for (std::size_t i = 0; i < census.entries.size(); ++i) {
        const ShapeCensusEntry& entry = census.entries[i];
        out << (i + 1) << ',' << static_cast<int>(entry.code.n) << ','
            << shape_arc_count(entry.code) << ',' << shape_hex(entry.code) << ','
            << entry.frequency << '\n';
    }
    finish(out, path);
}

void write_census_examples_jsonl(const std::filesystem::path& path, const Corpus& corpus,
                                 std::span<const Cascade> cascades, const ShapeCensus& census) {
    // First cascade (in deterministic cascade order) per censused shape.
    std::map<ShapeCode, const Cascade*, ShapeCodeOrder> example;
    for (const Cascade& cascade : cascades) {
        const auto code = canonical_code(cascade, census.cap);
        if (code) example.emplace(*code, &cascade);
    }
    auto out = open_out(path);
    for (const ShapeCensusEntry& entry : census.entries) {
        auto it = example.find(entry.code);
        if (it == example.end()) continue;
        json j = cascade_json(corpus, *it->second);
        j["code"] = shape_hex(entry.code);
        j["node_count"] = static_cast<int>(entry.code.n);
        out << j.dump() << '\n';
    }
    finish(out, path);
}

void write_census_above_cap_csv(const std::filesystem::path& path,
                                std::span<const Cascade> cascades, int cap) {
    // (size, depth, exact sc fraction) -> frequency
    std::map<std::tuple<long long, int, std::string>, long long> buckets;
    for (const Cascade& cascade : cascades) {
        if (static_cast<int>(cascade.nodes.size()) <= cap) continue;
        const auto fraction = sc_fraction(cascade);
        std::string sc = "undefined";
        if (fraction) {
            const long long g = std::gcd(fraction->first, fraction->second);
            sc = std::to_string(fraction->first / g) + "/" + std::to_string(fraction->second / g);
        }
        ++buckets[{cascade.size(), cascade_depth(cascade), sc}];
    }
    auto out = open_out(path);
    out << "size,depth,sc,frequency\n";
    for (const auto& [key, freq] : buckets)
        out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
            << freq << '\n';
    finish(out, path);
}

void write_distribution_csv(const std::filesystem::path& path,
                            const EmpiricalDistribution& dist) {
    auto out = open_out(path);
    out << "value,count,pdf\n";
    for (const auto& [value, count] : dist.bins)
        out << value << ',' << count << ','
            << fmt_double(static_cast<double>(count) / static_cast<double>(dist.total)) << '\n';
    finish(out, path);
}

void write_degrees_csv(const std::filesystem::path& path, const DegreeDistributions& degrees) {
    auto out = open_out(path);
    out << "kind,value,count,pdf\n";
    auto rows = [&](const char* kind, const EmpiricalDistribution& dist) {
        for (const auto& [value, count] : dist.bins)
            out << kind << ',' << value << ',' << count << ','
                << fmt_double(static_cast<double>(count) / static_cast<double>(dist.total))
                << '\n';
    };
    rows("in", degrees.in_dist);
    rows("out", degrees.out_dist);
    finish(out, path);
}

void write_blog_degrees_csv(const std::filesystem::path& path,
                            const DegreeDistributions& degrees) {
    auto out = open_out(path);
    out << "blog_id,out_degree,in_degree\n";
    for (const BlogDegrees& blog : degrees.blogs)
        out << blog.blog_id << ',' << blog.out_degree << ',' << blog.in_degree << '\n';
    finish(out, path);
}

void write_weekday_csv(const std::filesystem::path& path, const WeekdayActivity& activity) {
    static const char* kNames[] = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};
    auto out = open_out(path);
    out << "weekday,average_posts\n";
    for (int w = 0; w < 7; ++w) out << kNames[w] << ',' << fmt_double(activity.average[w]) << '\n';
    finish(out, path);
}

void write_fits_json(const std::filesystem::path& path, const FitsReport& report) {
    json j;
    json fits = json::object();
    for (const FitsReport::Entry& entry : report.fits) {
        json e;
        if (entry.fit) {
            e["mle"] = fit_json(entry.fit->mle);
            e["log_binned"] =
                entry.fit->log_binned ? fit_json(*entry.fit->log_binned) : json(nullptr);
        } else {
            e["skipped"] = entry.skipped_reason;
        }
        fits[entry.name] = std::move(e);
    }
    j["fits"] = std::move(fits);
    j["scalars"]["pearson_in_out"] = opt_json(report.pearson_in_out);
    j["scalars"]["pearson_in_out_nonzero"] = opt_json(report.pearson_in_out_nonzero);
    j["scalars"]["weekend_dip"] = opt_json(report.weekend_dip);
    j["scalars"]["sc_topic_unity_rank_correlation"] =
        opt_json(report.sc_topic_unity_rank_correlation);
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

void write_comparison_json(const std::filesystem::path& path, const ComparisonReport& report,
                           const CompareConfigEcho& echo) {
    json j;
    j["config"]["theta"] = echo.config.theta;
    j["config"]["theta_fitted"] = echo.theta_fitted;
    j["config"]["theta_fit_fallback"] = echo.theta_fit_fallback;
    j["config"]["epsilon_seconds"] = echo.config.epsilon_seconds;
    j["config"]["realizations"] = echo.config.realizations;
    j["config"]["base_seed"] = echo.config.base_seed;
    j["config"]["z_threshold"] = report.z_threshold;
    j["config"]["cap"] = report.cap;
    j["real_cascades"] = report.real_cascades;
    j["model_mean_cascades"] = report.model_mean_cascades;
    j["model_mean_duplicate_citations"] = report.model_mean_duplicate_citations;

    json shapes = json::array();
    for (const ShapeRow& row : report.shapes) {
        json r;
        r["code"] = shape_hex(row.code);
        r["node_count"] = static_cast<int>(row.code.n);
        r["arc_count"] = row.arc_count;
        r["sc"] = opt_json(row.sc);
        r["real"] = row.real_freq;
        r["model_mean"] = row.model_mean;
        r["model_std"] = row.model_std;
        r["z"] = z_json(row.z);
        r["flag"] = to_string(row.flag);
        shapes.push_back(std::move(r));
    }
    j["shapes"] = std::move(shapes);

    json buckets = json::array();
    for (const BucketRow& row : report.above_cap) {
        json r;
        r["size"] = row.size;
        r["depth"] = row.depth;
        r["real"] = row.real_freq;
        r["model_mean"] = row.model_mean;
        r["model_std"] = row.model_std;
        r["z"] = z_json(row.z);
        r["flag"] = to_string(row.flag);
        buckets.push_back(std::move(r));
    }
    j["above_cap"] = std::move(buckets);

    auto overlay_json = [](std::span<const OverlayRow> overlay) {
        json rows = json::array();
        for (const OverlayRow& row : overlay) {
            json r;
            r["value"] = row.value;
            r["real"] = row.real_count;
            r["model_mean"] = row.model_mean;
            r["model_std"] = row.model_std;
            rows.push_back(std::move(r));
        }
        return rows;
    };
    j["size_overlay"] = overlay_json(report.size_overlay);
    j["depth_overlay"] = overlay_json(report.depth_overlay);

    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

void write_overlay_csv(const std::filesystem::path& path, std::span<const OverlayRow> overlay,
                       long long real_total, double model_mean_total) {
    auto out = open_out(path);
    out << "value,real_count,real_pdf,model_mean_count,model_mean_pdf\n";
    for (const OverlayRow& row : overlay) {
        const double real_pdf =
            real_total > 0 ? static_cast<double>(row.real_count) / real_total : 0.0;
        const double model_pdf = model_mean_total > 0 ? row.model_mean / model_mean_total : 0.0;
        out << row.value << ',' << row.real_count << ',' << fmt_double(real_pdf) << ','
            << fmt_double(row.model_mean) << ',' << fmt_double(model_pdf) << '\n';
    }
    finish(out, path);
}

void write_manifest_json(const std::filesystem::path& path, const Manifest& manifest) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = manifest.command;
    json inputs = json::object();
    for (const auto& [name, value] : manifest.inputs) inputs[name] = value;
    j["inputs"] = std::move(inputs);
    json params = json::object();
    for (const auto& [name, value] : manifest.params) params[name] = value;
    j["params"] = std::move(params);
    j["out_dir"] = manifest.out_dir;
    j["outputs"] = manifest.outputs;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

}  // namespace casc
