#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casc/corpus.hpp"
#include "casc/parallel.hpp"

namespace casc {

// A cascade is the induced sub-DAG of posts from which the origin is
// reachable along citation arcs, plus the origin itself. Arcs point from the
// citing post to the cited post; the origin is the unique sink.
struct Cascade {
    PostIdx origin = -1;
    std::vector<PostIdx> nodes;       // sorted ascending, contains origin
    std::vector<CitationIdx> arcs;    // induced arc set, sorted by (src, dst)

    // Size excludes the origin.
    long long size() const { return static_cast<long long>(nodes.size()) - 1; }
};

// Posts with no outgoing citation and at least one incoming one, ordered by
// post_id so downstream output is deterministic.
std::vector<PostIdx> find_origins(const Corpus& corpus);

// Throws std::invalid_argument when `origin` is not a valid origin.
Cascade extract_cascade(const Corpus& corpus, PostIdx origin);

// One cascade per non-trivial origin, in find_origins order. Cascades may
// overlap: a post citing two origins belongs to both cascades.
std::vector<Cascade> extract_all_cascades(const Corpus& corpus, Exec exec = Exec::parallel);

// Maximum over nodes of the shortest directed path length to the origin.
int cascade_depth(const Cascade& cascade);

// Star-chain coefficient: with n_i/n_o the in/out-degree inside the cascade,
//   sc = (sum over roots (n_i = 0) of n_o - 1) / (sum over all nodes of n_o - 1).
// 0 for pure chains, 1 for pure stars; undefined for single-arc cascades.
std::optional<double> sc_coefficient(const Cascade& cascade);

// Same value as an exact (numerator, denominator) pair, denominator >= 1.
std::optional<std::pair<long long, long long>> sc_fraction(const Cascade& cascade);

// Topic shared by the largest number of labeled nodes; ties broken by
// lexicographically smallest topic; empty when no node is labeled.
std::optional<std::string> assign_topic(const Corpus& corpus, const Cascade& cascade,
                                        const TopicLabels& labels);

// Fraction of content-available nodes carrying the assigned topic.
// Undefined when no topic was assigned or every node is unavailable.
std::optional<double> topic_unity(const Corpus& corpus, const Cascade& cascade,
                                  const TopicLabels& labels);

struct CascadeMetrics {
    long long size = 0;
    int depth = 0;
    std::optional<double> sc;
    std::optional<std::string> topic;
    std::optional<double> unity;
};

CascadeMetrics cascade_metrics(const Corpus& corpus, const Cascade& cascade,
                               const TopicLabels& labels);

}  // namespace casc
