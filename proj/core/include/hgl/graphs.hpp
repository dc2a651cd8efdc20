#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hgl/hermat.hpp"

namespace hgl::graphs {

using gf::Fel;
using gf::Field;
using mat::Matrix;

/// Immutable loop-free graph with bitset adjacency rows.  For matrix graphs
/// the labels are canonical encodings, sorted, so builds are deterministic.
struct GraphHandle {
    unsigned q = 0, n = 0;
    std::string family;                   // "hgl", "h2", or a descriptive tag
    std::vector<std::uint64_t> labels;    // empty for abstract graphs
    std::vector<std::vector<std::uint64_t>> rows;  // bit i of word i/64

    explicit GraphHandle(size_t nv = 0) { resize(nv); }
    void resize(size_t nv) {
        rows.assign(nv, std::vector<std::uint64_t>((nv + 63) / 64, 0));
    }
    size_t size() const { return rows.size(); }
    bool adjacent(size_t u, size_t v) const { return (rows[u][v / 64] >> (v % 64)) & 1; }
    void add_edge(size_t u, size_t v) {
        rows[u][v / 64] |= 1ull << (v % 64);
        rows[v][u / 64] |= 1ull << (u % 64);
    }
    size_t degree(size_t u) const;
    std::uint64_t num_edges() const;
};

struct BuildBudget {
    std::uint64_t max_vertices = 1'000'000;
};

/// The graph of invertible hermitian n x n matrices, edges = rank-one
/// difference.  Vertices sorted by canonical encoding.
GraphHandle build_hgl(const Field& F, unsigned n, const BuildBudget& budget = {});

/// The graph of ALL hermitian 2 x 2 matrices (q^4 vertices), same edges.
GraphHandle build_h2(const Field& F, const BuildBudget& budget = {});

GraphHandle complement(const GraphHandle& G);
GraphHandle induced_subgraph(const GraphHandle& G, const std::vector<size_t>& keep);
bool is_connected(const GraphHandle& G);
/// Degree if regular, nullopt otherwise.
std::optional<size_t> regular_degree(const GraphHandle& G);

/// Induced subgraph of an "hgl" build on {A : det A = lambda}; lambda != 0.
GraphHandle det_class_subgraph(const Field& F, const GraphHandle& G, Fel lambda);

/// Verifies the congruence map X -> PXP^* (with P A P^* = B built from the
/// congruence normal forms of vertices A, B) is an automorphism on every edge
/// at a sample of source vertices.  G must be an "hgl" build.
bool transitivity_witness(const Field& F, const GraphHandle& G, size_t va, size_t vb);

/// The Petersen graph as the Kneser graph K(5,2), vertices = 2-subsets of
/// {0..4} in lexicographic order, edges = disjoint pairs.
GraphHandle petersen();

/// Backtracking graph isomorphism; intended for small graphs (<= ~64).
bool isomorphic(const GraphHandle& A, const GraphHandle& B);

/// DIMACS-like edge list: "p edge N M" then "u v" per edge, 0-based, sorted.
void write_edge_list(const GraphHandle& G, const std::string& path);
GraphHandle read_edge_list(const std::string& path);

// -- spectra ---------------------------------------------------------------

struct EigEntry {
    long long value = 0;
    std::uint64_t multiplicity = 0;
};

struct SpectrumReport {
    std::vector<EigEntry> eigenvalues;  // descending by value
    bool certified = false;             // exact proof that this is the spectrum
    std::string note;
};

/// Certifies that the spectrum of G is exactly the candidate set with the
/// reported multiplicities:
///  1. prod (A - c I) over candidates is checked to vanish in exact integer
///     arithmetic, proving the adjacency matrix is diagonalizable with
///     eigenvalues among the candidates;
///  2. multiplicities are nullities of A - c I modulo a large prime; they
///     upper-bound the true ones, so summing to |V| pins them exactly.
SpectrumReport certified_spectrum(const GraphHandle& G, const std::vector<long long>& candidates);

/// Floating-point eigenvalues, descending.  For interlacing/Haemers only.
std::vector<double> float_spectrum(const GraphHandle& G);

/// Interlacing lambda_i >= mu_i >= lambda_{i+d} for an induced subgraph on
/// |G| - d vertices, within tolerance.
bool interlacing_check(const std::vector<double>& parent, const std::vector<double>& sub,
                       double tol = 1e-9);

/// The Haemers sum lambda_2 + ... + lambda_chi + lambda_{t-chi+1}; a coloring
/// with chi colors forces this to be >= 0, so a negative value certifies
/// chromatic number > chi.  Requires t > chi >= 2.
double haemers_sum(const std::vector<double>& spectrum, unsigned chi);

}  // namespace hgl::graphs
