#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "casc/corpus.hpp"

namespace casc {

// Raised for malformed input files; the message carries the line number.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reads line-delimited JSON records {"post_id","blog_id","published_at"}.
// Blank lines are skipped. Duplicate post_ids, malformed lines and bad
// timestamps raise ParseError naming the line (and the offending id).
std::vector<Post> parse_posts(std::istream& in);

// Reads CSV with the exact header `src_post_id,dst_post_id`. Returns rows in
// file order, including self-citations and duplicates; filtering is a
// separate step so the removal report stays auditable.
std::vector<RawCitation> parse_citations(std::istream& in);

// Reads tab-separated `post_id<TAB>topic` lines; a post may appear on several
// lines. The reserved topic `__UNAVAILABLE__` marks content-unavailable
// posts; mixing it with real topics for the same post is an error.
TopicLabels parse_topic_labels(std::istream& in);

struct FilterResult {
    Corpus corpus;
    CorpusSummary summary;
};

// Applies the filtering rules in fixed precedence order per citation:
// out-of-corpus (unknown or out-of-window endpoint), self-citation (same
// blog), anterior-post artifact (target strictly newer than source),
// duplicate (src,dst) pair. Posts outside the window are dropped from the
// corpus; posts without citations are kept.
FilterResult filter_corpus(std::vector<Post> posts, const std::vector<RawCitation>& citations,
                           Window window);

}  // namespace casc
