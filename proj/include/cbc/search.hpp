#pragma once

// Exhaustive oracles for desk-scale instances.  Each search is
// deterministic: the same inputs and budget give the same answer and the same
// node count.  Running out of budget is reported as Exhausted together with
// the best value seen so far; it is never passed off as an optimum.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cbc/core.hpp"
#include "cbc/graph.hpp"

namespace cbc {

struct SearchBudget {
    std::uint64_t max_nodes = 200'000'000;
    double max_seconds = 600.0;

    // Both limits must be positive (std::invalid_argument).
    void validate() const;
};

enum class SearchStatus { Optimal, Infeasible, Unbounded, Found, NotFound, Exhausted };

std::string_view to_string(SearchStatus status);

struct SearchOptions {
    // Row-permutation pruning of the first two columns.
    bool symmetry = true;
};

struct StorageSearchResult {
    SearchStatus status = SearchStatus::Infeasible;
    std::optional<std::uint64_t> storage;  // optimum, or best so far when exhausted
    std::optional<IncidenceMatrix> witness;
    std::uint64_t nodes = 0;
};

// Minimum N over all m x n matrices that are (k, t) codes.  Columns are
// enumerated as a multiset in (weight, colex) order, with branch and bound
// on storage.  Guideline: m <= 5, n <= 8.
StorageSearchResult min_storage_search(const CodeParams& params, const SearchBudget& budget,
                                       SearchOptions options = {});

struct UniformSearchResult {
    SearchStatus status = SearchStatus::Optimal;
    std::optional<std::uint64_t> n;  // optimum, or best so far when exhausted
    std::optional<IncidenceMatrix> witness;
    std::uint64_t nodes = 0;
};

// Maximum number of weight-c columns forming a (k, t) code on m servers.
// Unbounded without search when k <= c*t.  Guideline: m <= 6, c <= 3.
UniformSearchResult max_uniform_n_search(std::size_t m, std::size_t c, std::size_t k, std::size_t t,
                                         const SearchBudget& budget, SearchOptions options = {});

struct SpanWitnessResult {
    SearchStatus status = SearchStatus::NotFound;
    std::optional<Graph> graph;
    std::vector<Triangle> triangles;  // every triangle of `graph`
    std::size_t best_triangles = 0;   // largest admissible triangle count seen
    std::uint64_t nodes = 0;
};

// A graph on v <= 9 vertices with at least `triangle_target` triangles such
// that any k of its triangles span at least k vertices.
SpanWitnessResult find_span_witness_graph(std::size_t v, std::size_t triangle_target, std::size_t k,
                                          const SearchBudget& budget);

struct Girth5SearchResult {
    SearchStatus status = SearchStatus::Optimal;
    std::uint64_t edges = 0;  // exact maximum, or a lower bound when exhausted
    std::optional<Graph> witness;
    std::uint64_t nodes = 0;
};

// Maximum edge count of a triangle- and square-free graph on v <= 12
// vertices.  Works upward from small v.  Deleting a vertex leaves at most
// ex(v-1) edges, so in a graph with e edges every vertex has degree at least
// e - ex(v-1); that prunes the existence search for e = best + 1.
Girth5SearchResult max_girth5_edges_search(std::size_t v, const SearchBudget& budget);

}  // namespace cbc
