#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "casc/cascade.hpp"
#include "casc/parallel.hpp"

namespace casc {

inline constexpr int kDefaultShapeCap = 8;

// Canonical identifier of an unlabeled digraph shape. `bits` holds the
// lexicographically minimal row-major adjacency bit-string over all node
// permutations, packed so that bit (i,j) sits at position n*n-1-(i*n+j);
// for equal n, integer order on `bits` equals lexicographic order on the
// bit-string. n is capped at 8 so the string always fits in 64 bits.
struct ShapeCode {
    std::uint8_t n = 0;
    std::uint64_t bits = 0;

    friend bool operator==(const ShapeCode&, const ShapeCode&) = default;
};

// Lexicographic order on the padded bit-string bytes, shorter-prefix first;
// node count breaks the final tie. Used for deterministic census ordering.
bool shape_code_less(const ShapeCode& a, const ShapeCode& b);

struct ShapeCodeHash {
    std::size_t operator()(const ShapeCode& code) const {
        return std::hash<std::uint64_t>{}(code.bits * 0x9E3779B97F4A7C15ULL + code.n);
    }
};

// Canonical code of an arbitrary digraph on nodes 0..n-1, n in [1, 8].
// Exact: two digraphs share a code iff they are isomorphic.
ShapeCode canonical_code_digraph(int n, std::span<const std::pair<int, int>> arcs);

// Canonical code of a cascade's shape; empty when the cascade has more than
// `cap` nodes (such cascades are censused separately, never mis-binned).
std::optional<ShapeCode> canonical_code(const Cascade& cascade, int cap = kDefaultShapeCap);

// Decoded arc list of a shape, in row-major order.
std::vector<std::pair<int, int>> shape_arcs(const ShapeCode& code);

int shape_arc_count(const ShapeCode& code);

// sc coefficient of the shape itself (isomorphism-invariant).
std::optional<double> shape_sc(const ShapeCode& code);

// Hex rendering of the bit-string, zero-padded to ceil(n^2/4) digits.
std::string shape_hex(const ShapeCode& code);

struct ShapeCensusEntry {
    ShapeCode code;
    long long frequency = 0;
};

// Entries sorted by decreasing frequency, ties broken by shape_code_less.
struct ShapeCensus {
    std::vector<ShapeCensusEntry> entries;
    long long above_cap = 0;  // cascades larger than the cap
    long long total = 0;      // entries' frequencies + above_cap
    int cap = kDefaultShapeCap;
};

ShapeCensus shape_census(std::span<const Cascade> cascades, int cap = kDefaultShapeCap,
                         Exec exec = Exec::parallel);

}  // namespace casc
