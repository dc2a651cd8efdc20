#pragma once

#include <cstdint>
#include <optional>

#include "hgl/graphs.hpp"

namespace hgl::hom {

using graphs::GraphHandle;

/// Tri-state search outcome.  `budget` is inconclusive and must never be
/// reported as a refutation.
enum class Status { found, refuted, budget };

struct SearchLimits {
    std::uint64_t max_nodes = 200'000'000;
    double max_seconds = 0;  // 0 = no wall-clock limit
};

struct SearchResult {
    Status status = Status::refuted;
    std::vector<int> mapping;  // source vertex -> target vertex, when found
    std::uint64_t nodes = 0;
};

/// Pins fix source -> target images before the search starts.
using Pins = std::vector<std::pair<size_t, size_t>>;

/// Backtracking homomorphism search, most-constrained-vertex-first ordering
/// with adjacency-consistency pruning.  Every returned mapping is rechecked
/// against raw adjacency before being reported.
SearchResult find_homomorphism(const GraphHandle& src, const GraphHandle& dst,
                               const SearchLimits& limits = {}, const Pins& pins = {});

/// Unpruned reference search: static vertex order, ascending candidates.
/// Same verdicts as find_homomorphism; kept for corpus agreement tests.
SearchResult naive_find_homomorphism(const GraphHandle& src, const GraphHandle& dst,
                                     const SearchLimits& limits = {}, const Pins& pins = {});

bool verify_homomorphism(const GraphHandle& src, const GraphHandle& dst,
                         const std::vector<int>& mapping);

/// Retraction of G onto the induced subgraph on `keep`: a homomorphism
/// G -> G[keep] fixing every kept vertex.
SearchResult find_retraction(const GraphHandle& G, const std::vector<size_t>& keep,
                             const SearchLimits& limits = {});

struct CoreVerdict {
    Status status = Status::budget;
    bool core = false;             // meaningful only when status != budget
    std::vector<int> witness;      // a non-injective endomorphism, when not a core
    std::uint64_t nodes = 0;
};

/// Exhaustive core check: a non-injective endomorphism must identify some
/// non-adjacent pair, so one contraction search per such pair is complete.
/// With orbit reduction, pairs equivalent under an automorphism moving one
/// pair onto another share a single search (soundness: compose with the
/// automorphism).
CoreVerdict is_core(const GraphHandle& G, const SearchLimits& limits = {},
                    bool orbit_reduction = true);

struct ChromaticResult {
    Status status = Status::budget;  // found = exact value established
    unsigned chi = 0;                // valid when status == found
    unsigned lower = 0, upper = 0;   // always valid bounds
    std::vector<unsigned> coloring;  // proper coloring with `upper` colors
    std::uint64_t nodes = 0;
};

/// Exact chromatic number by iterated k-colorability search with clique
/// seeding; on budget exhaustion reports bounds only.
ChromaticResult chromatic_number(const GraphHandle& G, const SearchLimits& limits = {});

/// Proper m-coloring search (exact refutation when it returns refuted).
SearchResult find_coloring(const GraphHandle& G, unsigned m, const SearchLimits& limits = {});

bool verify_coloring(const GraphHandle& G, const std::vector<unsigned>& coloring);

/// Pulls a proper coloring of the target back along a homomorphism; returns
/// the induced proper coloring of the source (so chi(src) <= chi(dst)).
std::optional<std::vector<unsigned>> coloring_pullback(const GraphHandle& src,
                                                       const GraphHandle& dst,
                                                       const std::vector<int>& mapping,
                                                       const std::vector<unsigned>& dst_coloring);

/// A greedily grown clique; its size is a chromatic lower bound.
std::vector<size_t> greedy_clique(const GraphHandle& G);

GraphHandle complete_graph(unsigned m);
GraphHandle cycle_graph(unsigned m);

}  // namespace hgl::hom
