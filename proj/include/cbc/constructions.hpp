#pragma once

// Explicit codes.  Every constructor that has a declared (k, t) runs the
// verifier on its output and throws std::logic_error if the result does not
// verify; that would be a bug in the constructor, not a user error.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbc/core.hpp"
#include "cbc/graph.hpp"

namespace cbc {

// One step of the range construction.  Column ids refer to the columns of
// grouped_matrix(m, k).flatten(), 0-based.
struct TraceStep {
    std::vector<std::size_t> deleted;
    std::optional<std::size_t> modified;  // empty for a trailing partial batch
    Mask new_content = 0;
    std::size_t n_after = 0;
    std::uint64_t storage_after = 0;
};

struct ConstructionTrace {
    std::vector<TraceStep> steps;
};

struct RangeConstruction {
    IncidenceMatrix matrix;
    ConstructionTrace trace;
};

// Optimal (n, N, k, m) code for C(m,k-2) <= n <= (k-1)C(m,k-1), 3 <= k <= m.
//
// Starting from the grouped matrix, each full step picks a fresh set T of
// k-2 rows, turns one weight-(k-1) column containing T into T itself and
// deletes one copy of each of the other m-k+1 weight-(k-1) columns that
// contain T.  A weight-(k-1) support R then keeps k-1 minus (number of
// chosen T inside R) copies, which is exactly what keeps every (k-1)-set of
// rows at k-1 items.  Steps first use the sets T that avoid row 1 (in reverse
// lexicographic order, modifying the last group and deleting from the
// highest group still holding a copy), then the sets through row 1 (in
// lexicographic order, working from the lowest group).  A trailing partial
// batch only deletes.
RangeConstruction construct_range(std::size_t n, std::size_t k, std::size_t m);

// Grouped matrix plus n - (k-1)C(m,k-1) weight-k columns cycling through the
// k-subsets in lexicographic order.
IncidenceMatrix construct_saturated(std::size_t n, std::size_t k, std::size_t m);

// m = k servers, item j stored only on server j mod k.  Requires n <= t*k.
IncidenceMatrix construct_spread(std::size_t n, std::size_t k, std::size_t t);

// r copies of the full list of weight-c columns (copy after copy).
IncidenceMatrix construct_uniform_replication(std::size_t m, std::size_t c, std::size_t r);

// One weight-2 column per edge, in lexicographic edge order.
IncidenceMatrix edge_code(const Graph& graph);

// One weight-3 column per listed triangle.  Throws std::invalid_argument if
// a triple is not a triangle of `graph`.
IncidenceMatrix triangle_code(const Graph& graph, const std::vector<Triangle>& triangles);

// floor(m/3) vertex-disjoint paths on two edges: {3i, 3i+1, 3i+2}.
Graph construct_path_pack(std::size_t m);

// Triangle- and square-free graph on v >= 3 vertices with at least
// 2 + 3*floor((v-3)/2) edges: a 2-edge path, then pairs of new vertices
// joined to each other and to two existing vertices at distance >= 2,
// then greedy completion in lexicographic pair order.
Graph construct_girth5(std::size_t v);

// Raised when a duplicate-edge graph would overload a 4-server set.
class ForbiddenConfiguration : public std::invalid_argument {
public:
    ForbiddenConfiguration(std::array<std::size_t, 4> vertices, std::string shape);
    const std::array<std::size_t, 4>& vertices() const { return vertices_; }
    const std::string& shape() const { return shape_; }

private:
    std::array<std::size_t, 4> vertices_;
    std::string shape_;
};

// All C(m,2) pair columns followed by one extra copy of the pair column for
// each edge of `extra`; t = 2, k in {9, 10}.  With every pair present, a
// 4-server set already holds 6 items of its 8 reads, so `extra` may place at
// most 2 edges inside any 4 vertices.  The first 4-set that breaks this is
// reported through ForbiddenConfiguration.
IncidenceMatrix augment_pairs_code(std::size_t m, const Graph& extra, std::size_t k);

}  // namespace cbc
