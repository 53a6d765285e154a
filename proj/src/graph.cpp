#include "cbc/graph.hpp"

#include <stdexcept>
#include <string>

namespace cbc {

Graph::Graph(std::size_t vertices) : adjacency_(vertices, 0) {
    if (vertices > kMaxServers) throw std::invalid_argument("graphs are limited to 64 vertices");
}

Graph::Graph(std::size_t vertices, std::span<const Edge> edges) : Graph(vertices) {
    for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(std::size_t v) const {
    if (v >= adjacency_.size())
        throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
    check_vertex(u);
    check_vertex(v);
    return (adjacency_[u] >> v) & 1U;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("loops are not allowed");
    if (has_edge(u, v)) throw std::invalid_argument("duplicate edge");
    adjacency_[u] |= bit(v);
    adjacency_[v] |= bit(u);
    ++edges_;
}

void Graph::remove_edge(std::size_t u, std::size_t v) {
    if (!has_edge(u, v)) throw std::invalid_argument("no such edge");
    adjacency_[u] &= ~bit(v);
    adjacency_[v] &= ~bit(u);
    --edges_;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (std::size_t u = 0; u < adjacency_.size(); ++u)
        for (auto v : mask_indices(adjacency_[u] & ~low_bits(u + 1))) out.emplace_back(u, v);
    return out;
}

std::vector<Triangle> Graph::triangles() const {
    std::vector<Triangle> out;
    for (std::size_t a = 0; a < adjacency_.size(); ++a)
        for (auto b : mask_indices(adjacency_[a] & ~low_bits(a + 1)))
            for (auto c : mask_indices(adjacency_[a] & adjacency_[b] & ~low_bits(b + 1))) out.push_back({a, b, c});
    return out;
}

std::size_t Graph::edges_within(Mask vertices) const {
    std::size_t twice = 0;
    for (auto v : mask_indices(vertices)) twice += weight(adjacency_.at(v) & vertices);
    return twice / 2;
}

std::optional<Triangle> Graph::find_triangle() const {
    for (std::size_t a = 0; a < adjacency_.size(); ++a)
        for (auto b : mask_indices(adjacency_[a] & ~low_bits(a + 1))) {
            const Mask common = adjacency_[a] & adjacency_[b] & ~low_bits(b + 1);
            if (common) return Triangle{a, b, static_cast<std::size_t>(__builtin_ctzll(common))};
        }
    return std::nullopt;
}

std::optional<std::array<std::size_t, 4>> Graph::find_square() const {
    // Two non-adjacent-in-the-cycle vertices a, c with two common neighbours.
    for (std::size_t a = 0; a < adjacency_.size(); ++a)
        for (std::size_t c = a + 1; c < adjacency_.size(); ++c) {
            const Mask common = adjacency_[a] & adjacency_[c];
            if (weight(common) >= 2) {
                const auto both = mask_indices(common);
                return std::array<std::size_t, 4>{a, both[0], c, both[1]};
            }
        }
    return std::nullopt;
}

bool Graph::can_add_keeping_girth5(std::size_t u, std::size_t v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v || has_edge(u, v)) return false;
    if (adjacency_[u] & adjacency_[v]) return false;  // triangle
    for (auto a : mask_indices(adjacency_[u]))
        if (adjacency_[a] & adjacency_[v]) return false;  // square
    return true;
}

Graph complete_graph(std::size_t vertices) {
    Graph g(vertices);
    for (std::size_t u = 0; u < vertices; ++u)
        for (std::size_t v = u + 1; v < vertices; ++v) g.add_edge(u, v);
    return g;
}

}  // namespace cbc
