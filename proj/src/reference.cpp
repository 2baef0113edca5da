#include "casc/reference.hpp"

#include <algorithm>
#include <map>

namespace casc::reference {

std::vector<Cascade> extract_all_cascades(const Corpus& corpus) {
    std::vector<Cascade> cascades;
    for (const PostIdx origin : find_origins(corpus))
        cascades.push_back(extract_cascade(corpus, origin));
    return cascades;
}

ShapeCensus shape_census(std::span<const Cascade> cascades, int cap) {
    // No cache, no parallel merge: canonicalize each cascade and count.
    ShapeCensus census;
    census.cap = cap;
    census.total = static_cast<long long>(cascades.size());
    std::map<ShapeCode, long long, ShapeCodeOrder> freq;
    for (const Cascade& cascade : cascades) {
        const auto code = canonical_code(cascade, cap);
        if (code)
            ++freq[*code];
        else
            ++census.above_cap;
    }
    for (const auto& [code, f] : freq) census.entries.push_back(ShapeCensusEntry{code, f});
    std::stable_sort(census.entries.begin(), census.entries.end(),
                     [](const ShapeCensusEntry& a, const ShapeCensusEntry& b) {
                         return a.frequency > b.frequency;
                     });
    return census;
}

ModelAggregate run_realizations(const Corpus& corpus, const RewireConfig& config) {
    config.validate();
    ModelAggregate agg;
    agg.realizations = config.realizations;
    agg.cap = config.cap;

    for (int r = 0; r < config.realizations; ++r) {
        auto [unique, duplicates] = dedup_citations(rewire_citations(corpus, config, r));
        const Corpus model = corpus.with_citations(std::move(unique));
        const std::vector<Cascade> cascades = reference::extract_all_cascades(model);
        const CascadeSummary summary = summarize_cascades(cascades, config.cap, Exec::serial);

        for (const ShapeCensusEntry& entry : summary.census.entries) {
            MomentAcc& acc = agg.shapes[entry.code];
            acc.sum += static_cast<double>(entry.frequency);
            acc.sum_sq += static_cast<double>(entry.frequency) * entry.frequency;
        }
        for (const auto& [value, count] : summary.size_counts) {
            MomentAcc& acc = agg.size_counts[value];
            acc.sum += static_cast<double>(count);
            acc.sum_sq += static_cast<double>(count) * count;
        }
        for (const auto& [value, count] : summary.depth_counts) {
            MomentAcc& acc = agg.depth_counts[value];
            acc.sum += static_cast<double>(count);
            acc.sum_sq += static_cast<double>(count) * count;
        }
        for (const auto& [key, count] : summary.above_cap_buckets) {
            MomentAcc& acc = agg.above_cap_buckets[key];
            acc.sum += static_cast<double>(count);
            acc.sum_sq += static_cast<double>(count) * count;
        }
        agg.cascades.sum += static_cast<double>(summary.cascades);
        agg.cascades.sum_sq += static_cast<double>(summary.cascades) * summary.cascades;
        agg.duplicate_citations_sum += duplicates;
    }
    return agg;
}

}  // namespace casc::reference
