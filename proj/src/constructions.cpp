#include "cbc/constructions.hpp"

#include <algorithm>
#include <map>

#include "cbc/bounds.hpp"
#include "cbc/verifier.hpp"

namespace cbc {

namespace {

void self_verify(const IncidenceMatrix& matrix, std::size_t k, std::size_t t, const char* who) {
    if (!is_cbc(matrix, k, t).valid) throw std::logic_error(std::string(who) + ": output failed verification");
}

// State of the range construction: the flattened grouped matrix plus, for
// every weight-(k-1) support, which groups still hold an untouched copy.
class RangeState {
public:
    RangeState(std::size_t m, std::size_t k) : m_(m), k_(k) {
        const auto flat = grouped_matrix(m, k).flatten();
        content_.assign(flat.columns().begin(), flat.columns().end());
        alive_.assign(content_.size(), true);
        supports_ = subsets_lex(m, k - 1);
        for (std::size_t p = 0; p < supports_.size(); ++p) position_[supports_[p]] = p;
        untouched_.assign(k - 1, std::vector<bool>(supports_.size(), true));
    }

    std::size_t alive_count() const { return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true)); }

    std::uint64_t storage() const {
        std::uint64_t total = 0;
        for (std::size_t id = 0; id < content_.size(); ++id)
            if (alive_[id]) total += weight(content_[id]);
        return total;
    }

    // Column id of an untouched copy of `support`, searching groups from the
    // top (last group first) or from the bottom.
    std::size_t take(Mask support, bool from_top) {
        const std::size_t p = position_.at(support);
        const std::size_t groups = k_ - 1;
        for (std::size_t step = 0; step < groups; ++step) {
            const std::size_t g = from_top ? groups - 1 - step : step;
            if (untouched_[g][p]) {
                untouched_[g][p] = false;
                return g * supports_.size() + p;
            }
        }
        throw std::logic_error("construct_range: no copy left of a support");
    }

    void release(std::size_t id) {
        const std::size_t p = id % supports_.size();
        untouched_[id / supports_.size()][p] = true;
    }

    // Deletions and modification of one full step, without applying them.
    struct Plan {
        std::vector<std::size_t> deleted;
        std::size_t modified = 0;
    };

    Plan plan(Mask t_rows) {
        const bool avoids_first_row = (t_rows & 1U) == 0;
        std::vector<std::size_t> outside;
        for (std::size_t x = 0; x < m_; ++x)
            if (!(t_rows & bit(x))) outside.push_back(x);
        const std::size_t keep = avoids_first_row ? outside.front() : outside.back();

        Plan out;
        out.modified = take(t_rows | bit(keep), avoids_first_row);
        for (auto x : outside)
            if (x != keep) out.deleted.push_back(take(t_rows | bit(x), avoids_first_row));
        return out;
    }

    void undo(const Plan& p) {
        release(p.modified);
        for (auto id : p.deleted) release(id);
    }

    void apply(const Plan& p, Mask t_rows) {
        content_[p.modified] = t_rows;
        for (auto id : p.deleted) alive_[id] = false;
    }

    void remove(std::size_t id) { alive_[id] = false; }

    IncidenceMatrix matrix() const {
        std::vector<Mask> cols;
        for (std::size_t id = 0; id < content_.size(); ++id)
            if (alive_[id]) cols.push_back(content_[id]);
        return IncidenceMatrix(m_, std::move(cols));
    }

private:
    std::size_t m_;
    std::size_t k_;
    std::vector<Mask> content_;
    std::vector<bool> alive_;
    std::vector<Mask> supports_;
    std::map<Mask, std::size_t> position_;
    std::vector<std::vector<bool>> untouched_;
};

// Sets T of k-2 rows in the order the steps consume them.
std::vector<Mask> step_order(std::size_t m, std::size_t k) {
    std::vector<Mask> order;
    auto avoid = subsets_lex(m - 1, k - 2);
    for (auto it = avoid.rbegin(); it != avoid.rend(); ++it) order.push_back(*it << 1);
    for (auto rest : subsets_lex(m - 1, k - 3)) order.push_back((rest << 1) | 1U);
    return order;
}

std::string shape_of(const Graph& g, Mask four) {
    const std::size_t e = g.edges_within(four);
    std::size_t max_deg = 0;
    bool triangle = false;
    const auto vs = mask_indices(four);
    for (auto v : vs) max_deg = std::max(max_deg, weight(g.neighbors(v) & four));
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b)
            for (std::size_t c = b + 1; c < 4; ++c)
                if (g.has_edge(vs[a], vs[b]) && g.has_edge(vs[b], vs[c]) && g.has_edge(vs[a], vs[c])) triangle = true;
    switch (e) {
        case 3: return triangle ? "triangle" : (max_deg == 3 ? "star" : "path on three edges");
        case 4: return triangle ? "triangle with a pendant edge" : "square";
        case 5: return "complete graph minus an edge";
        default: return "complete graph";
    }
}

}  // namespace

RangeConstruction construct_range(std::size_t n, std::size_t k, std::size_t m) {
    if (k < 3 || k > m) throw std::invalid_argument("construct_range requires 3 <= k <= m");
    const std::uint64_t full = (k - 1) * binomial(m, k - 1);
    if (n < binomial(m, k - 2) || n > full)
        throw std::invalid_argument("construct_range requires C(m,k-2) <= n <= (k-1)C(m,k-1)");

    const std::size_t batch = m - k + 1;
    const std::uint64_t surplus = full - n;
    const std::uint64_t full_steps = surplus / batch;
    const std::uint64_t partial = surplus % batch;
    const auto order = step_order(m, k);

    RangeState state(m, k);
    RangeConstruction out;
    for (std::uint64_t s = 0; s < full_steps; ++s) {
        const Mask t_rows = order[s];
        const auto p = state.plan(t_rows);
        state.apply(p, t_rows);
        out.trace.steps.push_back({p.deleted, p.modified, t_rows, state.alive_count(), state.storage()});
    }
    if (partial > 0) {
        // Delete the tail of what the next full step would delete.
        const auto p = state.plan(order[full_steps]);
        state.undo(p);
        std::vector<std::size_t> gone(p.deleted.end() - static_cast<std::ptrdiff_t>(partial), p.deleted.end());
        for (auto id : gone) state.remove(id);
        out.trace.steps.push_back({gone, std::nullopt, 0, state.alive_count(), state.storage()});
    }

    out.matrix = state.matrix();
    self_verify(out.matrix, k, 1, "construct_range");
    const auto target = optimal_N(n, k, m);
    if (out.matrix.cols() != n || !target.value || total_storage(out.matrix) != *target.value)
        throw std::logic_error("construct_range: storage does not match the optimal value");
    return out;
}

IncidenceMatrix construct_saturated(std::size_t n, std::size_t k, std::size_t m) {
    if (k < 2 || k > m) throw std::invalid_argument("construct_saturated requires 2 <= k <= m");
    const std::uint64_t full = (k - 1) * binomial(m, k - 1);
    if (n < full) throw std::invalid_argument("construct_saturated requires n >= (k-1)C(m,k-1)");

    auto base = grouped_matrix(m, k).flatten();
    std::vector<Mask> cols(base.columns().begin(), base.columns().end());
    const auto heavy = subsets_lex(m, k);
    for (std::uint64_t i = 0; i < n - full; ++i) cols.push_back(heavy[i % heavy.size()]);
    IncidenceMatrix out(m, std::move(cols));

    self_verify(out, k, 1, "construct_saturated");
    if (total_storage(out) != k * n - full) throw std::logic_error("construct_saturated: unexpected storage");
    return out;
}

IncidenceMatrix construct_spread(std::size_t n, std::size_t k, std::size_t t) {
    if (k < 1 || t < 1) throw std::invalid_argument("construct_spread requires k, t >= 1");
    if (n < k) throw std::invalid_argument("construct_spread requires n >= k");
    if (n > t * k) throw std::invalid_argument("construct_spread requires n <= t*k");
    if (k > kMaxServers) throw std::invalid_argument("at most 64 servers are supported");
    std::vector<Mask> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = bit(j % k);
    IncidenceMatrix out(k, std::move(cols));
    self_verify(out, k, t, "construct_spread");
    return out;
}

IncidenceMatrix construct_uniform_replication(std::size_t m, std::size_t c, std::size_t r) {
    if (c < 1 || c > m) throw std::invalid_argument("construct_uniform_replication requires 1 <= c <= m");
    if (r < 1) throw std::invalid_argument("construct_uniform_replication requires r >= 1");
    const auto supports = subsets_lex(m, c);
    std::vector<Mask> cols;
    cols.reserve(supports.size() * r);
    for (std::size_t copy = 0; copy < r; ++copy) cols.insert(cols.end(), supports.begin(), supports.end());
    return IncidenceMatrix(m, std::move(cols));
}

IncidenceMatrix edge_code(const Graph& graph) {
    std::vector<Mask> cols;
    for (auto [u, v] : graph.edges()) cols.push_back(bit(u) | bit(v));
    return IncidenceMatrix(graph.vertex_count(), std::move(cols));
}

IncidenceMatrix triangle_code(const Graph& graph, const std::vector<Triangle>& triangles) {
    std::vector<Mask> cols;
    cols.reserve(triangles.size());
    for (const auto& tri : triangles) {
        const auto [a, b, c] = tri;
        if (a == b || b == c || a == c || !graph.has_edge(a, b) || !graph.has_edge(b, c) || !graph.has_edge(a, c))
            throw std::invalid_argument("(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
                                        std::to_string(c + 1) + ") is not a triangle of the graph");
        cols.push_back(bit(a) | bit(b) | bit(c));
    }
    return IncidenceMatrix(graph.vertex_count(), std::move(cols));
}

Graph construct_path_pack(std::size_t m) {
    if (m < 3) throw std::invalid_argument("construct_path_pack requires m >= 3");
    Graph g(m);
    for (std::size_t i = 0; i + 3 <= m; i += 3) {
        g.add_edge(i, i + 1);
        g.add_edge(i + 1, i + 2);
    }
    return g;
}

Graph construct_girth5(std::size_t v) {
    if (v < 3) throw std::invalid_argument("construct_girth5 requires v >= 3");
    Graph g(v);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    for (std::size_t next = 3; next + 1 < v; next += 2) {
        // x and y non-adjacent, so the new cycle x-a-b-y-...-x has length >= 5.
        std::optional<Edge> anchor;
        for (std::size_t x = 0; x < next && !anchor; ++x)
            for (std::size_t y = x + 1; y < next && !anchor; ++y)
                if (!g.has_edge(x, y)) anchor = Edge{x, y};
        g.add_edge(next, next + 1);
        g.add_edge(anchor->first, next);
        g.add_edge(anchor->second, next + 1);
    }
    for (std::size_t a = 0; a < v; ++a)
        for (std::size_t b = a + 1; b < v; ++b)
            if (g.can_add_keeping_girth5(a, b)) g.add_edge(a, b);

    if (!g.girth_at_least_5() || g.edge_count() < girth5_edge_bound(v))
        throw std::logic_error("construct_girth5: edge bound not reached");
    return g;
}

ForbiddenConfiguration::ForbiddenConfiguration(std::array<std::size_t, 4> vertices, std::string shape)
    : std::invalid_argument("forbidden configuration (" + shape + ") on vertices " +
                            std::to_string(vertices[0] + 1) + "," + std::to_string(vertices[1] + 1) + "," +
                            std::to_string(vertices[2] + 1) + "," + std::to_string(vertices[3] + 1)),
      vertices_(vertices),
      shape_(std::move(shape)) {}

IncidenceMatrix augment_pairs_code(std::size_t m, const Graph& extra, std::size_t k) {
    if (k != 9 && k != 10) throw std::invalid_argument("augment_pairs_code supports k = 9 or k = 10");
    if (extra.vertex_count() != m) throw std::invalid_argument("extra graph must have m vertices");

    for (auto four : subsets_lex(m, 4))
        if (extra.edges_within(four) >= 3) {
            const auto vs = mask_indices(four);
            throw ForbiddenConfiguration({vs[0], vs[1], vs[2], vs[3]}, shape_of(extra, four));
        }

    auto cols = subsets_lex(m, 2);
    for (auto [u, v] : extra.edges()) cols.push_back(bit(u) | bit(v));
    if (cols.size() < k) throw std::invalid_argument("augment_pairs_code needs at least k columns");
    IncidenceMatrix out(m, std::move(cols));
    self_verify(out, k, 2, "augment_pairs_code");
    return out;
}

}  // namespace cbc
