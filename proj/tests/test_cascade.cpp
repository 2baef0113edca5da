#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "casc/cascade.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace casc;
using namespace casc::testsupport;

namespace {

// Evenly spaced same-day timestamps; index 0 is the earliest.
std::string iso_at(int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "2010-03-01T%02d:%02d:00Z", i / 60, i % 60);
    return buf;
}

// Posts named by single letters, one blog each, published in list order;
// arcs as (citing, cited) with the cited post earlier.
Corpus letter_corpus(const std::string& nodes_oldest_first,
                     const std::vector<std::pair<char, char>>& arcs) {
    std::vector<std::tuple<std::string, std::string, std::string>> posts;
    for (std::size_t i = 0; i < nodes_oldest_first.size(); ++i) {
        const std::string name(1, nodes_oldest_first[i]);
        posts.emplace_back(name, "blog_" + name, iso_at(static_cast<int>(i)));
    }
    std::vector<std::pair<std::string, std::string>> citations;
    for (const auto& [src, dst] : arcs)
        citations.emplace_back(std::string(1, src), std::string(1, dst));
    return make_corpus(posts, citations);
}

std::set<std::string> node_ids(const Corpus& corpus, const Cascade& cascade) {
    std::set<std::string> ids;
    for (const PostIdx p : cascade.nodes) ids.insert(corpus.post(p).post_id);
    return ids;
}

PostIdx idx_of(const Corpus& corpus, char name) {
    return corpus.table->index_of(std::string(1, name));
}

}  // namespace

TEST_CASE("find_origins") {
    SUBCASE("single citation a->b gives origin b") {
        const Corpus corpus = letter_corpus("ba", {{'a', 'b'}});
        const auto origins = find_origins(corpus);
        REQUIRE(origins.size() == 1);
        CHECK(corpus.post(origins[0]).post_id == "b");
    }

    SUBCASE("chain a->b->c: only c is an origin") {
        const Corpus corpus = letter_corpus("cba", {{'a', 'b'}, {'b', 'c'}});
        const auto origins = find_origins(corpus);
        REQUIRE(origins.size() == 1);
        CHECK(corpus.post(origins[0]).post_id == "c");
    }

    SUBCASE("isolated posts are not origins") {
        const Corpus corpus = letter_corpus("zba", {{'a', 'b'}});
        for (const PostIdx origin : find_origins(corpus))
            CHECK(corpus.post(origin).post_id != "z");
    }
}

TEST_CASE("extract_cascade") {
    SUBCASE("two citers of one origin") {
        const Corpus corpus = letter_corpus("oab", {{'a', 'o'}, {'b', 'o'}});
        const Cascade cascade = extract_cascade(corpus, idx_of(corpus, 'o'));
        CHECK(node_ids(corpus, cascade) == std::set<std::string>{"o", "a", "b"});
        CHECK(cascade.arcs.size() == 2);
    }

    SUBCASE("induced arcs include shortcuts: c->a, c->o, a->o") {
        const Corpus corpus = letter_corpus("oac", {{'a', 'o'}, {'c', 'a'}, {'c', 'o'}});
        const Cascade cascade = extract_cascade(corpus, idx_of(corpus, 'o'));
        CHECK(node_ids(corpus, cascade) == std::set<std::string>{"o", "a", "c"});
        CHECK(cascade.arcs.size() == 3);  // all three arcs, c has out-degree 2 inside
    }

    SUBCASE("other origins and their arcs are excluded") {
        const Corpus corpus = letter_corpus("oza", {{'a', 'o'}, {'a', 'z'}});
        const Cascade cascade = extract_cascade(corpus, idx_of(corpus, 'o'));
        CHECK(node_ids(corpus, cascade) == std::set<std::string>{"o", "a"});
        CHECK(cascade.arcs.size() == 1);
    }

    SUBCASE("rejects non-origins") {
        const Corpus corpus = letter_corpus("oa", {{'a', 'o'}});
        CHECK_THROWS_AS(extract_cascade(corpus, idx_of(corpus, 'a')), std::invalid_argument);
    }
}

TEST_CASE("extract_all_cascades") {
    SUBCASE("two disjoint stars give two cascades") {
        const Corpus corpus =
            letter_corpus("opab", {{'a', 'o'}, {'b', 'o'}, {'a', 'p'}, {'b', 'p'}});
        CHECK(extract_all_cascades(corpus).size() == 2);
    }

    SUBCASE("a post may appear in several cascades") {
        const Corpus corpus = letter_corpus("opa", {{'a', 'o'}, {'a', 'p'}});
        const auto cascades = extract_all_cascades(corpus);
        REQUIRE(cascades.size() == 2);
        for (const Cascade& cascade : cascades) CHECK(node_ids(corpus, cascade).count("a") == 1);
    }

    SUBCASE("empty citation set gives no cascades") {
        const Corpus corpus = letter_corpus("ab", {});
        CHECK(extract_all_cascades(corpus).empty());
    }

    SUBCASE("deterministic order by origin post_id") {
        const Corpus corpus =
            letter_corpus("opab", {{'a', 'o'}, {'b', 'o'}, {'a', 'p'}, {'b', 'p'}});
        const auto cascades = extract_all_cascades(corpus);
        REQUIRE(cascades.size() == 2);
        CHECK(corpus.post(cascades[0].origin).post_id == "o");
        CHECK(corpus.post(cascades[1].origin).post_id == "p");
    }
}

TEST_CASE("cascade_depth") {
    SUBCASE("star with 3 leaves has depth 1") {
        const Corpus corpus = letter_corpus("oabc", {{'a', 'o'}, {'b', 'o'}, {'c', 'o'}});
        CHECK(cascade_depth(extract_cascade(corpus, idx_of(corpus, 'o'))) == 1);
    }

    SUBCASE("chain of 3 arcs has depth 3") {
        const Corpus corpus = letter_corpus("oabc", {{'a', 'o'}, {'b', 'a'}, {'c', 'b'}});
        CHECK(cascade_depth(extract_cascade(corpus, idx_of(corpus, 'o'))) == 3);
    }

    SUBCASE("depth uses shortest paths: b->a, b->o, a->o has depth 1") {
        const Corpus corpus = letter_corpus("oab", {{'a', 'o'}, {'b', 'a'}, {'b', 'o'}});
        CHECK(cascade_depth(extract_cascade(corpus, idx_of(corpus, 'o'))) == 1);
    }
}

TEST_CASE("sc_coefficient") {
    SUBCASE("pure chain is 0") {
        const Corpus corpus = letter_corpus("oab", {{'a', 'o'}, {'b', 'a'}});
        const auto sc = sc_coefficient(extract_cascade(corpus, idx_of(corpus, 'o')));
        REQUIRE(sc.has_value());
        CHECK(*sc == 0.0);
    }

    SUBCASE("star with 3 leaves is 1") {
        const Corpus corpus = letter_corpus("oabc", {{'a', 'o'}, {'b', 'o'}, {'c', 'o'}});
        const auto sc = sc_coefficient(extract_cascade(corpus, idx_of(corpus, 'o')));
        REQUIRE(sc.has_value());
        CHECK(*sc == 1.0);
    }

    SUBCASE("mixed shape a->o, b->o, c->a is 0.5") {
        const Corpus corpus = letter_corpus("oabc", {{'a', 'o'}, {'b', 'o'}, {'c', 'a'}});
        const auto sc = sc_coefficient(extract_cascade(corpus, idx_of(corpus, 'o')));
        REQUIRE(sc.has_value());
        CHECK(*sc == 0.5);
    }

    SUBCASE("single-arc cascade is undefined") {
        const Corpus corpus = letter_corpus("oa", {{'a', 'o'}});
        CHECK_FALSE(sc_coefficient(extract_cascade(corpus, idx_of(corpus, 'o'))).has_value());
    }
}

TEST_CASE("topics") {
    const Corpus corpus =
        letter_corpus("oabcd", {{'a', 'o'}, {'b', 'o'}, {'c', 'o'}, {'d', 'o'}});
    const Cascade cascade = extract_cascade(corpus, idx_of(corpus, 'o'));

    SUBCASE("unanimous topic") {
        TopicLabels labels;
        for (const char* id : {"o", "a", "b", "c", "d"}) labels.labels[id].insert("T");
        CHECK(assign_topic(corpus, cascade, labels) == "T");
        CHECK(topic_unity(corpus, cascade, labels) == 1.0);
    }

    SUBCASE("majority wins") {
        TopicLabels labels;
        for (const char* id : {"o", "a", "b"}) labels.labels[id].insert("A");
        labels.labels["c"].insert("B");
        CHECK(assign_topic(corpus, cascade, labels) == "A");
    }

    SUBCASE("ties break lexicographically") {
        TopicLabels labels;
        labels.labels["o"].insert("B");
        labels.labels["a"].insert("B");
        labels.labels["b"].insert("A");
        labels.labels["c"].insert("A");
        CHECK(assign_topic(corpus, cascade, labels) == "A");
    }

    SUBCASE("no labeled node gives no topic") {
        TopicLabels labels;
        labels.labels["zzz"].insert("T");  // not in the cascade
        CHECK_FALSE(assign_topic(corpus, cascade, labels).has_value());
        CHECK_FALSE(topic_unity(corpus, cascade, labels).has_value());
    }

    SUBCASE("unavailable nodes leave the unity denominator") {
        // 5 nodes: 3 labeled with the topic, 1 labeled other, 1 unavailable.
        TopicLabels labels;
        for (const char* id : {"o", "a", "b"}) labels.labels[id].insert("T");
        labels.labels["c"].insert("other");
        labels.unavailable.insert("d");
        CHECK(assign_topic(corpus, cascade, labels) == "T");
        CHECK(topic_unity(corpus, cascade, labels) == doctest::Approx(3.0 / 4.0));
    }

    SUBCASE("unlabeled but available nodes stay in the denominator") {
        TopicLabels labels;
        labels.labels["o"].insert("T");
        labels.labels["a"].insert("T");
        CHECK(topic_unity(corpus, cascade, labels) == doctest::Approx(2.0 / 5.0));
    }
}

TEST_CASE("extraction equals reachability oracle on random corpora") {
    Rng rng = make_rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const Corpus corpus = random_corpus(rng);
        const int n = static_cast<int>(corpus.post_count());
        std::vector<std::pair<int, int>> arcs;
        for (const CitationIdx& c : corpus.citations) arcs.emplace_back(c.src, c.dst);

        CHECK_FALSE(has_cycle(n, arcs));

        for (const PostIdx origin : find_origins(corpus)) {
            const Cascade cascade = extract_cascade(corpus, origin);
            std::vector<int> got(cascade.nodes.begin(), cascade.nodes.end());
            CHECK(got == reachability_members(n, arcs, origin));

            // Induced arc set: exactly the corpus citations inside the node set.
            std::set<std::pair<int, int>> inside;
            std::set<int> members(cascade.nodes.begin(), cascade.nodes.end());
            for (const auto& [u, v] : arcs)
                if (members.count(u) && members.count(v)) inside.insert({u, v});
            std::set<std::pair<int, int>> extracted;
            for (const CitationIdx& arc : cascade.arcs) extracted.insert({arc.src, arc.dst});
            CHECK(extracted == inside);
        }
    }
}

TEST_CASE("depth, size, sc bounds and overlap on random corpora") {
    Rng rng = make_rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const Corpus corpus = random_corpus(rng);
        const auto cascades = extract_all_cascades(corpus);

        long long size_sum = 0;
        std::set<PostIdx> non_origin_members;
        for (const Cascade& cascade : cascades) {
            const long long size = cascade.size();
            const int depth = cascade_depth(cascade);
            CHECK(size >= 1);
            CHECK(depth >= 1);
            CHECK(depth <= size);
            const auto sc = sc_coefficient(cascade);
            if (sc) {
                CHECK(*sc >= 0.0);
                CHECK(*sc <= 1.0);
            }
            size_sum += size;
            for (const PostIdx p : cascade.nodes)
                if (p != cascade.origin) non_origin_members.insert(p);
        }
        CHECK(size_sum >= static_cast<long long>(non_origin_members.size()));
    }
}

TEST_CASE("serial and parallel extraction agree") {
    Rng rng = make_rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const Corpus corpus = random_corpus(rng);
        const auto serial = extract_all_cascades(corpus, Exec::serial);
        const auto parallel = extract_all_cascades(corpus, Exec::parallel);
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(serial[i].origin == parallel[i].origin);
            CHECK(serial[i].nodes == parallel[i].nodes);
            CHECK(serial[i].arcs == parallel[i].arcs);
        }
    }
}
