#include "casc/corpus.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace casc {

std::shared_ptr<const PostTable> PostTable::build(std::vector<Post> posts, Window window) {
    auto table = std::make_shared<PostTable>();
    table->window = window;
    table->posts = std::move(posts);
    table->post_blog.resize(table->posts.size());
    table->post_index.reserve(table->posts.size());

    std::unordered_map<std::string, BlogIdx> blog_index;
    for (PostIdx p = 0; p < static_cast<PostIdx>(table->posts.size()); ++p) {
        const Post& post = table->posts[p];
        auto [it, inserted] = table->post_index.emplace(post.post_id, p);
        if (!inserted)
            throw std::invalid_argument("duplicate post_id \"" + post.post_id + "\"");
        auto [bit, bnew] = blog_index.emplace(post.blog_id, static_cast<BlogIdx>(blog_index.size()));
        if (bnew) table->blog_ids.push_back(post.blog_id);
        table->post_blog[p] = bit->second;
    }

    table->blog_posts.resize(table->blog_ids.size());
    for (PostIdx p = 0; p < static_cast<PostIdx>(table->posts.size()); ++p)
        table->blog_posts[table->post_blog[p]].push_back(p);
    for (auto& list : table->blog_posts) {
        std::sort(list.begin(), list.end(), [&](PostIdx a, PostIdx b) {
            const UnixTime ta = table->posts[a].published_at;
            const UnixTime tb = table->posts[b].published_at;
            return ta != tb ? ta < tb : a < b;
        });
    }
    return table;
}

namespace {

struct CitationHash {
    std::size_t operator()(const CitationIdx& c) const {
        return std::hash<std::uint64_t>{}(
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.src)) << 32) |
            static_cast<std::uint32_t>(c.dst));
    }
};

void build_csr(std::size_t n_posts, const std::vector<CitationIdx>& citations, bool by_src,
               std::vector<std::int32_t>& offset, std::vector<std::int32_t>& adj) {
    offset.assign(n_posts + 1, 0);
    for (const CitationIdx& c : citations) ++offset[(by_src ? c.src : c.dst) + 1];
    for (std::size_t i = 1; i <= n_posts; ++i) offset[i] += offset[i - 1];
    adj.resize(citations.size());
    std::vector<std::int32_t> cursor(offset.begin(), offset.end() - 1);
    for (const CitationIdx& c : citations) {
        const PostIdx key = by_src ? c.src : c.dst;
        adj[cursor[key]++] = by_src ? c.dst : c.src;
    }
    for (std::size_t i = 0; i < n_posts; ++i)
        std::sort(adj.begin() + offset[i], adj.begin() + offset[i + 1]);
}

}  // namespace

Corpus Corpus::build(std::shared_ptr<const PostTable> table, std::vector<CitationIdx> citations) {
    Corpus corpus;
    const auto n = static_cast<PostIdx>(table->size());
    std::unordered_set<CitationIdx, CitationHash> seen;
    seen.reserve(citations.size() * 2);
    for (const CitationIdx& c : citations) {
        if (c.src < 0 || c.src >= n || c.dst < 0 || c.dst >= n)
            throw std::invalid_argument("citation references unknown post index");
        if (table->post_blog[c.src] == table->post_blog[c.dst])
            throw std::invalid_argument("same-blog citation in corpus");
        if (table->posts[c.dst].published_at > table->posts[c.src].published_at)
            throw std::invalid_argument("citation target newer than source");
        if (!seen.insert(c).second)
            throw std::invalid_argument("duplicate citation pair in corpus");
    }
    corpus.table = std::move(table);
    corpus.citations = std::move(citations);
    build_csr(n, corpus.citations, true, corpus.out_offset, corpus.out_adj);
    build_csr(n, corpus.citations, false, corpus.in_offset, corpus.in_adj);
    return corpus;
}

std::pair<std::vector<CitationIdx>, long long> dedup_citations(
    const std::vector<CitationIdx>& citations) {
    std::vector<CitationIdx> unique;
    unique.reserve(citations.size());
    std::unordered_set<CitationIdx, CitationHash> seen;
    seen.reserve(citations.size() * 2);
    long long dropped = 0;
    for (const CitationIdx& c : citations) {
        if (seen.insert(c).second)
            unique.push_back(c);
        else
            ++dropped;
    }
    return {std::move(unique), dropped};
}

}  // namespace casc
