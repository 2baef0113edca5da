#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "casc/time_utils.hpp"

namespace casc {

struct Post {
    std::string post_id;
    std::string blog_id;
    UnixTime published_at = 0;
};

// A citation as parsed from the input file, before id resolution.
struct RawCitation {
    std::string src_post_id;
    std::string dst_post_id;
};

// Inclusive crawl window.
struct Window {
    UnixTime start = 0;
    UnixTime end = 0;
    bool contains(UnixTime t) const { return t >= start && t <= end; }
    std::int64_t span_days() const { return day_of(end) - day_of(start) + 1; }
};

using PostIdx = std::int32_t;
using BlogIdx = std::int32_t;

// Resolved citation: indexes into PostTable::posts. Arc direction is
// citing post -> cited post.
struct CitationIdx {
    PostIdx src = -1;
    PostIdx dst = -1;
    friend bool operator==(const CitationIdx&, const CitationIdx&) = default;
    friend auto operator<=>(const CitationIdx&, const CitationIdx&) = default;
};

struct CorpusSummary {
    long long blogs = 0;      // B
    long long posts = 0;      // N
    long long citations = 0;  // L
    Window window{};
    // Fixed removal reasons, all four keys always present.
    std::map<std::string, long long> removed;
    long long raw_citations = 0;
    long long posts_outside_window = 0;
};

inline const char* const kRemovedOutOfCorpus = "out-of-corpus";
inline const char* const kRemovedSelfCitation = "self-citation";
inline const char* const kRemovedAnterior = "anterior-post artifact";
inline const char* const kRemovedDuplicate = "duplicate";

struct TopicLabels {
    // post_id -> set of topics. A post never appears in both maps.
    std::unordered_map<std::string, std::set<std::string>> labels;
    std::unordered_set<std::string> unavailable;

    bool empty() const { return labels.empty() && unavailable.empty(); }
};

// Immutable post universe shared between the real corpus and model
// realizations (the null model never touches posts, only citations).
struct PostTable {
    std::vector<Post> posts;  // all in-window posts, input order
    std::vector<std::string> blog_ids;
    std::vector<BlogIdx> post_blog;  // post idx -> blog idx
    std::unordered_map<std::string, PostIdx> post_index;
    // Per blog: post indexes sorted by (published_at, idx); the candidate
    // pools for the null model.
    std::vector<std::vector<PostIdx>> blog_posts;
    Window window{};

    static std::shared_ptr<const PostTable> build(std::vector<Post> posts, Window window);

    PostIdx index_of(const std::string& post_id) const {
        auto it = post_index.find(post_id);
        return it == post_index.end() ? -1 : it->second;
    }
    UnixTime time_of(PostIdx p) const { return posts[p].published_at; }
    std::size_t size() const { return posts.size(); }
};

// A filtered corpus: shared posts plus a simple (duplicate-free) citation
// graph with CSR adjacency in both directions.
class Corpus {
public:
    std::shared_ptr<const PostTable> table;
    std::vector<CitationIdx> citations;  // unique pairs, stable input order

    // CSR adjacency. out_adj[k] lists cited posts, in_adj[k] lists citing posts.
    std::vector<std::int32_t> out_offset, out_adj;
    std::vector<std::int32_t> in_offset, in_adj;

    // Citations must reference valid posts, be cross-blog, time-consistent
    // (dst not newer than src) and pairwise distinct. Throws otherwise.
    static Corpus build(std::shared_ptr<const PostTable> table,
                        std::vector<CitationIdx> citations);

    // Same posts, different citation set; used per model realization.
    Corpus with_citations(std::vector<CitationIdx> citations) const {
        return build(table, std::move(citations));
    }

    std::size_t post_count() const { return table->size(); }
    long long citation_count() const { return static_cast<long long>(citations.size()); }
    const Post& post(PostIdx p) const { return table->posts[p]; }
    BlogIdx blog_of(PostIdx p) const { return table->post_blog[p]; }

    int out_degree(PostIdx p) const { return out_offset[p + 1] - out_offset[p]; }
    int in_degree(PostIdx p) const { return in_offset[p + 1] - in_offset[p]; }
};

// Removes duplicate (src,dst) pairs, keeping first occurrences in order.
// Returns the deduplicated list and the number of duplicates dropped.
std::pair<std::vector<CitationIdx>, long long> dedup_citations(
    const std::vector<CitationIdx>& citations);

}  // namespace casc
