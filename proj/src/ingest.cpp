#include "casc/ingest.hpp"

#include <istream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <unordered_set>

namespace casc {

namespace {

using nlohmann::json;

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

// getline that tolerates CRLF input.
bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

std::string require_string_field(const json& record, const char* key, std::size_t line) {
    auto it = record.find(key);
    if (it == record.end())
        throw ParseError(at_line(line) + "missing field \"" + key + "\"");
    if (!it->is_string())
        throw ParseError(at_line(line) + "field \"" + key + "\" must be a string");
    return it->get<std::string>();
}

}  // namespace

std::vector<Post> parse_posts(std::istream& in) {
    std::vector<Post> posts;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(at_line(line_no) + "malformed record: " + e.what());
        }
        if (!record.is_object())
            throw ParseError(at_line(line_no) + "record is not an object");

        Post post;
        post.post_id = require_string_field(record, "post_id", line_no);
        post.blog_id = require_string_field(record, "blog_id", line_no);
        const std::string ts = require_string_field(record, "published_at", line_no);
        try {
            post.published_at = parse_utc(ts);
        } catch (const std::invalid_argument& e) {
            throw ParseError(at_line(line_no) + e.what());
        }
        if (post.post_id.empty())
            throw ParseError(at_line(line_no) + "empty post_id");
        if (!seen_ids.insert(post.post_id).second)
            throw ParseError(at_line(line_no) + "duplicate post_id \"" + post.post_id + "\"");
        posts.push_back(std::move(post));
    }
    return posts;
}

std::vector<RawCitation> parse_citations(std::istream& in) {
    std::string line;
    if (!next_line(in, line))
        throw ParseError("line 1: missing header row (expected src_post_id,dst_post_id)");
    if (line != "src_post_id,dst_post_id")
        throw ParseError("line 1: bad header \"" + line +
                         "\" (expected src_post_id,dst_post_id)");

    std::vector<RawCitation> citations;
    std::size_t line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ParseError(at_line(line_no) + "expected exactly 2 columns");
        citations.push_back(RawCitation{line.substr(0, comma), line.substr(comma + 1)});
    }
    return citations;
}

TopicLabels parse_topic_labels(std::istream& in) {
    TopicLabels result;
    std::string line;
    std::size_t line_no = 0;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
            throw ParseError(at_line(line_no) + "expected post_id<TAB>topic");
        std::string post_id = line.substr(0, tab);
        std::string topic = line.substr(tab + 1);
        if (post_id.empty() || topic.empty())
            throw ParseError(at_line(line_no) + "empty post_id or topic");

        if (topic == "__UNAVAILABLE__") {
            if (result.labels.count(post_id))
                throw ParseError(at_line(line_no) + "post \"" + post_id +
                                 "\" both labeled and unavailable");
            result.unavailable.insert(std::move(post_id));
        } else {
            if (result.unavailable.count(post_id))
                throw ParseError(at_line(line_no) + "post \"" + post_id +
                                 "\" both labeled and unavailable");
            result.labels[std::move(post_id)].insert(std::move(topic));
        }
    }
    return result;
}

FilterResult filter_corpus(std::vector<Post> posts, const std::vector<RawCitation>& citations,
                           Window window) {
    if (window.start >= window.end)
        throw std::invalid_argument("window start must precede window end");

    CorpusSummary summary;
    summary.window = window;
    summary.raw_citations = static_cast<long long>(citations.size());
    summary.removed = {{kRemovedOutOfCorpus, 0},
                       {kRemovedSelfCitation, 0},
                       {kRemovedAnterior, 0},
                       {kRemovedDuplicate, 0}};

    std::vector<Post> kept;
    kept.reserve(posts.size());
    for (Post& post : posts) {
        if (window.contains(post.published_at))
            kept.push_back(std::move(post));
        else
            ++summary.posts_outside_window;
    }
    auto table = PostTable::build(std::move(kept), window);

    std::vector<CitationIdx> resolved;
    resolved.reserve(citations.size());
    std::unordered_set<std::uint64_t> seen_pairs;
    for (const RawCitation& raw : citations) {
        const PostIdx src = table->index_of(raw.src_post_id);
        const PostIdx dst = table->index_of(raw.dst_post_id);
        // Fixed precedence so removal reports are deterministic.
        if (src < 0 || dst < 0) {
            ++summary.removed[kRemovedOutOfCorpus];
            continue;
        }
        if (table->post_blog[src] == table->post_blog[dst]) {
            ++summary.removed[kRemovedSelfCitation];
            continue;
        }
        if (table->time_of(dst) > table->time_of(src)) {
            ++summary.removed[kRemovedAnterior];
            continue;
        }
        const std::uint64_t key =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(src)) << 32) |
            static_cast<std::uint32_t>(dst);
        if (!seen_pairs.insert(key).second) {
            ++summary.removed[kRemovedDuplicate];
            continue;
        }
        resolved.push_back(CitationIdx{src, dst});
    }

    FilterResult result{Corpus::build(table, std::move(resolved)), std::move(summary)};
    result.summary.blogs = static_cast<long long>(result.corpus.table->blog_ids.size());
    result.summary.posts = static_cast<long long>(result.corpus.post_count());
    result.summary.citations = result.corpus.citation_count();
    return result;
}

}  // namespace casc
