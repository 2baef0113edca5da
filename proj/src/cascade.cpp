#include "casc/cascade.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace casc {

std::vector<PostIdx> find_origins(const Corpus& corpus) {
    std::vector<PostIdx> origins;
    const auto n = static_cast<PostIdx>(corpus.post_count());
    for (PostIdx p = 0; p < n; ++p)
        if (corpus.out_degree(p) == 0 && corpus.in_degree(p) > 0) origins.push_back(p);
    std::sort(origins.begin(), origins.end(), [&](PostIdx a, PostIdx b) {
        return corpus.post(a).post_id < corpus.post(b).post_id;
    });
    return origins;
}

Cascade extract_cascade(const Corpus& corpus, PostIdx origin) {
    if (origin < 0 || origin >= static_cast<PostIdx>(corpus.post_count()) ||
        corpus.out_degree(origin) != 0 || corpus.in_degree(origin) == 0)
        throw std::invalid_argument("extract_cascade: not a valid origin");

    Cascade cascade;
    cascade.origin = origin;

    // Breadth-first over "cited by" arcs gathers every post that reaches the
    // origin along citation links.
    std::unordered_map<PostIdx, bool> visited;
    std::vector<PostIdx> queue{origin};
    visited[origin] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const PostIdx u = queue[head];
        for (std::int32_t k = corpus.in_offset[u]; k < corpus.in_offset[u + 1]; ++k) {
            const PostIdx citer = corpus.in_adj[k];
            if (!visited[citer]) {
                visited[citer] = true;
                queue.push_back(citer);
            }
        }
    }

    cascade.nodes = std::move(queue);
    std::sort(cascade.nodes.begin(), cascade.nodes.end());

    // Full induced arc set, not just the arcs discovered by the walk; this is
    // what gives nodes with several outgoing arcs inside one cascade.
    for (const PostIdx u : cascade.nodes) {
        for (std::int32_t k = corpus.out_offset[u]; k < corpus.out_offset[u + 1]; ++k) {
            const PostIdx v = corpus.out_adj[k];
            if (visited.count(v)) cascade.arcs.push_back(CitationIdx{u, v});
        }
    }
    std::sort(cascade.arcs.begin(), cascade.arcs.end());
    return cascade;
}

std::vector<Cascade> extract_all_cascades(const Corpus& corpus, Exec exec) {
    const std::vector<PostIdx> origins = find_origins(corpus);
    std::vector<Cascade> cascades(origins.size());
    const auto count = static_cast<std::int64_t>(origins.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < count; ++i)
            cascades[i] = extract_cascade(corpus, origins[i]);
    } else {
        for (std::int64_t i = 0; i < count; ++i)
            cascades[i] = extract_cascade(corpus, origins[i]);
    }
    return cascades;
}

int cascade_depth(const Cascade& cascade) {
    // BFS from the origin along reversed arcs yields shortest directed path
    // lengths to the origin.
    std::unordered_map<PostIdx, std::vector<PostIdx>> rev;  // dst -> srcs
    for (const CitationIdx& arc : cascade.arcs) rev[arc.dst].push_back(arc.src);

    std::unordered_map<PostIdx, int> dist;
    dist[cascade.origin] = 0;
    std::vector<PostIdx> queue{cascade.origin};
    int depth = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const PostIdx u = queue[head];
        const int d = dist[u];
        depth = std::max(depth, d);
        auto it = rev.find(u);
        if (it == rev.end()) continue;
        for (const PostIdx citer : it->second) {
            if (dist.emplace(citer, d + 1).second) queue.push_back(citer);
        }
    }
    return depth;
}

std::optional<std::pair<long long, long long>> sc_fraction(const Cascade& cascade) {
    std::unordered_map<PostIdx, std::pair<int, int>> degree;  // node -> (in, out)
    for (const PostIdx p : cascade.nodes) degree.emplace(p, std::make_pair(0, 0));
    for (const CitationIdx& arc : cascade.arcs) {
        ++degree[arc.src].second;
        ++degree[arc.dst].first;
    }
    long long total_out = 0;
    long long root_out = 0;
    for (const auto& [node, d] : degree) {
        total_out += d.second;
        if (d.first == 0) root_out += d.second;
    }
    if (total_out < 2) return std::nullopt;  // 0/0 for single-arc cascades
    return std::make_pair(root_out - 1, total_out - 1);
}

std::optional<double> sc_coefficient(const Cascade& cascade) {
    const auto fraction = sc_fraction(cascade);
    if (!fraction) return std::nullopt;
    return static_cast<double>(fraction->first) / static_cast<double>(fraction->second);
}

std::optional<std::string> assign_topic(const Corpus& corpus, const Cascade& cascade,
                                        const TopicLabels& labels) {
    // topic -> number of labeled cascade nodes carrying it
    std::map<std::string, int> votes;
    for (const PostIdx p : cascade.nodes) {
        auto it = labels.labels.find(corpus.post(p).post_id);
        if (it == labels.labels.end()) continue;
        for (const std::string& topic : it->second) ++votes[topic];
    }
    if (votes.empty()) return std::nullopt;
    // std::map iteration is ordered, so the first maximum is the
    // lexicographically smallest topic.
    auto best = votes.begin();
    for (auto it = std::next(votes.begin()); it != votes.end(); ++it)
        if (it->second > best->second) best = it;
    return best->first;
}

std::optional<double> topic_unity(const Corpus& corpus, const Cascade& cascade,
                                  const TopicLabels& labels) {
    const std::optional<std::string> topic = assign_topic(corpus, cascade, labels);
    if (!topic) return std::nullopt;
    long long available = 0;
    long long carrying = 0;
    for (const PostIdx p : cascade.nodes) {
        const std::string& id = corpus.post(p).post_id;
        if (labels.unavailable.count(id)) continue;
        ++available;
        auto it = labels.labels.find(id);
        if (it != labels.labels.end() && it->second.count(*topic)) ++carrying;
    }
    if (available == 0) return std::nullopt;
    return static_cast<double>(carrying) / static_cast<double>(available);
}

CascadeMetrics cascade_metrics(const Corpus& corpus, const Cascade& cascade,
                               const TopicLabels& labels) {
    CascadeMetrics m;
    m.size = cascade.size();
    m.depth = cascade_depth(cascade);
    m.sc = sc_coefficient(cascade);
    if (!labels.empty()) {
        m.topic = assign_topic(corpus, cascade, labels);
        m.unity = topic_unity(corpus, cascade, labels);
    }
    return m;
}

}  // namespace casc
