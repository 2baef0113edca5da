#include "casc/motifs.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_map>

namespace casc {

namespace {

void check_cap(int cap) {
    if (cap < 1 || cap > 8)
        throw std::invalid_argument("canonicalization cap must be in [1, 8]");
}

// Trailing-zero-padded byte rendering of the n^2-bit string.
std::array<std::uint8_t, 8> code_bytes(const ShapeCode& code, int& n_bytes) {
    const int n_bits = code.n * code.n;
    n_bytes = (n_bits + 7) / 8;
    std::array<std::uint8_t, 8> bytes{};
    for (int s = 0; s < n_bits; ++s) {
        const int bit = static_cast<int>((code.bits >> (n_bits - 1 - s)) & 1u);
        bytes[s / 8] |= static_cast<std::uint8_t>(bit << (7 - s % 8));
    }
    return bytes;
}

}  // namespace

bool shape_code_less(const ShapeCode& a, const ShapeCode& b) {
    int la = 0, lb = 0;
    const auto ba = code_bytes(a, la);
    const auto bb = code_bytes(b, lb);
    if (ba != bb || la != lb) {
        if (std::lexicographical_compare(ba.begin(), ba.begin() + la, bb.begin(),
                                         bb.begin() + lb))
            return true;
        if (std::lexicographical_compare(bb.begin(), bb.begin() + lb, ba.begin(),
                                         ba.begin() + la))
            return false;
    }
    return a.n < b.n;
}

ShapeCode canonical_code_digraph(int n, std::span<const std::pair<int, int>> arcs) {
    if (n < 1 || n > 8) throw std::invalid_argument("canonical_code_digraph: n must be in [1, 8]");
    const int n_bits = n * n;

    std::uint64_t adj = 0;
    for (const auto& [u, v] : arcs) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("canonical_code_digraph: arc endpoint out of range");
        adj |= 1ULL << (n_bits - 1 - (u * n + v));
    }
    if (n == 1) return ShapeCode{1, adj};

    // Exact minimum over all n! relabelings. n <= 8 keeps this cheap, and the
    // census caches by raw adjacency so repeated shapes cost one lookup.
    std::array<int, 8> placement;  // placement[position] = original node
    for (int i = 0; i < n; ++i) placement[i] = i;

    std::uint64_t best = ~0ULL;
    std::array<int, 8> target;  // target[original node] = position
    do {
        for (int pos = 0; pos < n; ++pos) target[placement[pos]] = pos;
        std::uint64_t permuted = 0;
        for (const auto& [u, v] : arcs)
            permuted |= 1ULL << (n_bits - 1 - (target[u] * n + target[v]));
        best = std::min(best, permuted);
    } while (std::next_permutation(placement.begin(), placement.begin() + n));

    return ShapeCode{static_cast<std::uint8_t>(n), best};
}

std::optional<ShapeCode> canonical_code(const Cascade& cascade, int cap) {
    check_cap(cap);
    const int n = static_cast<int>(cascade.nodes.size());
    if (n > cap) return std::nullopt;

    // cascade.nodes is sorted, so local ids come from binary search.
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(cascade.arcs.size());
    auto local = [&](PostIdx p) {
        return static_cast<int>(std::lower_bound(cascade.nodes.begin(), cascade.nodes.end(), p) -
                                cascade.nodes.begin());
    };
    for (const CitationIdx& arc : cascade.arcs) arcs.emplace_back(local(arc.src), local(arc.dst));
    return canonical_code_digraph(n, arcs);
}

std::vector<std::pair<int, int>> shape_arcs(const ShapeCode& code) {
    std::vector<std::pair<int, int>> arcs;
    const int n = code.n;
    const int n_bits = n * n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((code.bits >> (n_bits - 1 - (i * n + j))) & 1u) arcs.emplace_back(i, j);
    return arcs;
}

int shape_arc_count(const ShapeCode& code) {
    return static_cast<int>(__builtin_popcountll(code.bits));
}

std::optional<double> shape_sc(const ShapeCode& code) {
    const auto arcs = shape_arcs(code);
    std::array<int, 8> in{}, out{};
    for (const auto& [u, v] : arcs) {
        ++out[u];
        ++in[v];
    }
    long long total_out = 0, root_out = 0;
    for (int i = 0; i < code.n; ++i) {
        total_out += out[i];
        if (in[i] == 0) root_out += out[i];
    }
    if (total_out < 2) return std::nullopt;
    return static_cast<double>(root_out - 1) / static_cast<double>(total_out - 1);
}

std::string shape_hex(const ShapeCode& code) {
    const int n_bits = code.n * code.n;
    const int digits = (n_bits + 3) / 4;
    // Left-align so hex digits read the bit-string from its first bit.
    const std::uint64_t aligned = code.bits << (4 * digits - n_bits);
    std::string hex(digits, '0');
    static const char* kDigits = "0123456789abcdef";
    for (int i = 0; i < digits; ++i)
        hex[i] = kDigits[(aligned >> (4 * (digits - 1 - i))) & 0xF];
    return hex;
}

namespace {

struct RawKey {
    std::uint8_t n;
    std::uint64_t raw;
    friend bool operator==(const RawKey&, const RawKey&) = default;
};

struct RawKeyHash {
    std::size_t operator()(const RawKey& k) const {
        return std::hash<std::uint64_t>{}(k.raw * 0x2545F4914F6CDD1DULL + k.n);
    }
};

// Raw (uncanonicalized) adjacency bits of a cascade in node-sorted order.
std::uint64_t raw_bits(const Cascade& cascade) {
    const int n = static_cast<int>(cascade.nodes.size());
    const int n_bits = n * n;
    std::uint64_t bits = 0;
    auto local = [&](PostIdx p) {
        return static_cast<int>(std::lower_bound(cascade.nodes.begin(), cascade.nodes.end(), p) -
                                cascade.nodes.begin());
    };
    for (const CitationIdx& arc : cascade.arcs)
        bits |= 1ULL << (n_bits - 1 - (local(arc.src) * n + local(arc.dst)));
    return bits;
}

}  // namespace

ShapeCensus shape_census(std::span<const Cascade> cascades, int cap, Exec exec) {
    check_cap(cap);
    const auto count = static_cast<std::int64_t>(cascades.size());
    std::vector<std::optional<ShapeCode>> codes(cascades.size());

    using Cache = std::unordered_map<RawKey, ShapeCode, RawKeyHash>;
    auto code_one = [&](std::int64_t i, Cache& cache) {
        const Cascade& cascade = cascades[i];
        const int n = static_cast<int>(cascade.nodes.size());
        if (n > cap) return;
        const RawKey key{static_cast<std::uint8_t>(n), raw_bits(cascade)};
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, *canonical_code(cascade, cap)).first;
        codes[i] = it->second;
    };

    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            Cache cache;  // per-thread; shapes repeat heavily
#pragma omp for schedule(dynamic, 256)
            for (std::int64_t i = 0; i < count; ++i) code_one(i, cache);
        }
    } else {
        Cache cache;
        for (std::int64_t i = 0; i < count; ++i) code_one(i, cache);
    }

    // Deterministic fold; the parallel part only filled `codes`.
    ShapeCensus census;
    census.cap = cap;
    census.total = count;
    std::unordered_map<ShapeCode, long long, ShapeCodeHash> freq;
    for (const auto& code : codes) {
        if (code)
            ++freq[*code];
        else
            ++census.above_cap;
    }
    census.entries.reserve(freq.size());
    for (const auto& [code, f] : freq) census.entries.push_back(ShapeCensusEntry{code, f});
    std::sort(census.entries.begin(), census.entries.end(),
              [](const ShapeCensusEntry& a, const ShapeCensusEntry& b) {
                  if (a.frequency != b.frequency) return a.frequency > b.frequency;
                  return shape_code_less(a.code, b.code);
              });
    return census;
}

}  // namespace casc
