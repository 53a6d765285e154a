#pragma once

// Small simple undirected graphs (at most 64 vertices, adjacency bitmasks).

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cbc/core.hpp"

namespace cbc {

using Edge = std::pair<std::size_t, std::size_t>;  // first < second
using Triangle = std::array<std::size_t, 3>;      // sorted

class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t vertices);
    Graph(std::size_t vertices, std::span<const Edge> edges);

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_; }
    Mask neighbors(std::size_t v) const { return adjacency_.at(v); }
    std::size_t degree(std::size_t v) const { return weight(adjacency_.at(v)); }
    bool has_edge(std::size_t u, std::size_t v) const;

    // Throws std::invalid_argument on loops, duplicates, or bad vertices.
    void add_edge(std::size_t u, std::size_t v);
    void remove_edge(std::size_t u, std::size_t v);

    std::vector<Edge> edges() const;          // lexicographic
    std::vector<Triangle> triangles() const;  // lexicographic
    std::size_t edges_within(Mask vertices) const;

    std::optional<Triangle> find_triangle() const;
    std::optional<std::array<std::size_t, 4>> find_square() const;  // a 4-cycle in cyclic order
    bool girth_at_least_5() const { return !find_triangle() && !find_square(); }

    // True when u-v could be added without closing a cycle shorter than 5.
    bool can_add_keeping_girth5(std::size_t u, std::size_t v) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check_vertex(std::size_t v) const;

    std::vector<Mask> adjacency_;
    std::size_t edges_ = 0;
};

Graph complete_graph(std::size_t vertices);

}  // namespace cbc
