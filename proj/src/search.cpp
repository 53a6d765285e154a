#include "cbc/search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

#include "cbc/bounds.hpp"
#include "cbc/constructions.hpp"
#include "cbc/verifier.hpp"

namespace cbc {

void SearchBudget::validate() const {
    if (max_nodes == 0) throw std::invalid_argument("search budget needs max_nodes > 0");
    if (!(max_seconds > 0.0)) throw std::invalid_argument("search budget needs max_seconds > 0");
}

std::string_view to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::Optimal: return "OPTIMAL";
        case SearchStatus::Infeasible: return "INFEASIBLE";
        case SearchStatus::Unbounded: return "UNBOUNDED";
        case SearchStatus::Found: return "FOUND";
        case SearchStatus::NotFound: return "NONE";
        case SearchStatus::Exhausted: return "EXHAUSTED";
    }
    return "EXHAUSTED";
}

namespace {

class Meter {
public:
    explicit Meter(const SearchBudget& budget) : budget_(budget), start_(std::chrono::steady_clock::now()) {
        budget.validate();
    }

    // Counts one node; false once the budget is spent.
    bool tick() {
        if (exhausted_) return false;
        ++nodes_;
        if (nodes_ > budget_.max_nodes) {
            exhausted_ = true;
        } else if ((nodes_ & 0x3FFF) == 0) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
            if (elapsed.count() > budget_.max_seconds) exhausted_ = true;
        }
        return !exhausted_;
    }

    bool exhausted() const { return exhausted_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

// Item counts inside every server set R with t*|R| < k, kept under the cap
// t*|R| as columns are pushed and popped.
class DeficiencyCounter {
public:
    DeficiencyCounter(std::size_t m, std::size_t k, std::size_t t)
        : m_(m), t_(t), max_size_(std::min(m, (k - 1) / t)), count_(std::size_t{1} << m, 0),
          supersets_(std::size_t{1} << m) {}

    bool try_add(Mask column) {
        const auto& sup = supersets(column);
        for (auto r : sup)
            if (count_[r] + 1 > t_ * weight(r)) return false;
        for (auto r : sup) ++count_[r];
        return true;
    }

    void remove(Mask column) {
        for (auto r : supersets(column)) --count_[r];
    }

    std::size_t min_slack(Mask column) {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (auto r : supersets(column)) best = std::min(best, t_ * weight(r) - count_[r]);
        return best;
    }

    std::size_t max_size() const { return max_size_; }

private:
    const std::vector<Mask>& supersets(Mask column) {
        auto& sup = supersets_[column];
        if (sup.empty() && weight(column) <= max_size_) {
            const Mask rest = low_bits(m_) & ~column;
            for (Mask sub = rest;; sub = (sub - 1) & rest) {
                if (weight(column | sub) <= max_size_) sup.push_back(column | sub);
                if (sub == 0) break;
            }
            std::sort(sup.begin(), sup.end());
        }
        return sup;
    }

    std::size_t m_;
    std::size_t t_;
    std::size_t max_size_;
    std::vector<std::size_t> count_;
    std::vector<std::vector<Mask>> supersets_;
};

// With the first column fixed to rows {0..w-1}, a row permutation fixing that
// set can bring the second column to {0..a-1} u {w..w+b-1}.
bool canonical_second(Mask first, Mask second) {
    const std::size_t w = weight(first);
    const std::size_t a = weight(second & first);
    const std::size_t b = weight(second & ~first);
    return second == (low_bits(a) | (low_bits(b) << w));
}

bool symmetric_skip(bool enabled, std::size_t depth, Mask candidate, const std::vector<Mask>& chosen) {
    if (!enabled) return false;
    if (depth == 0) return candidate != low_bits(weight(candidate));
    if (depth == 1) return !canonical_second(chosen[0], candidate);
    return false;
}

constexpr std::size_t kMaxSearchServers = 10;

}  // namespace

StorageSearchResult min_storage_search(const CodeParams& params, const SearchBudget& budget, SearchOptions options) {
    params.validate();
    if (params.m > kMaxSearchServers) throw std::invalid_argument("min_storage_search supports m <= 10");
    Meter meter(budget);
    StorageSearchResult result;
    if (params.k > params.t * params.m) {
        result.status = SearchStatus::Infeasible;
        return result;
    }

    std::vector<Mask> columns;
    for (Mask c = 1; c <= low_bits(params.m); ++c) columns.push_back(c);
    std::stable_sort(columns.begin(), columns.end(),
                     [](Mask a, Mask b) { return weight(a) < weight(b) || (weight(a) == weight(b) && a < b); });

    DeficiencyCounter counter(params.m, params.k, params.t);
    std::vector<Mask> chosen;
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    std::vector<Mask> best_columns;

    auto dfs = [&](auto&& self, std::size_t start, std::uint64_t storage) -> void {
        if (!meter.tick()) return;
        const std::size_t depth = chosen.size();
        if (depth == params.n) {
            if (storage < best) {
                best = storage;
                best_columns = chosen;
            }
            return;
        }
        for (std::size_t ci = start; ci < columns.size(); ++ci) {
            const Mask c = columns[ci];
            const std::uint64_t w = weight(c);
            if (storage + (params.n - depth) * w >= best) break;
            if (symmetric_skip(options.symmetry, depth, c, chosen)) continue;
            if (!counter.try_add(c)) continue;
            chosen.push_back(c);
            self(self, ci, storage + w);
            chosen.pop_back();
            counter.remove(c);
            if (meter.exhausted()) return;
        }
    };
    dfs(dfs, 0, 0);

    result.nodes = meter.nodes();
    if (!best_columns.empty()) {
        result.storage = best;
        result.witness = IncidenceMatrix(params.m, best_columns);
    }
    if (meter.exhausted())
        result.status = SearchStatus::Exhausted;
    else
        result.status = best_columns.empty() ? SearchStatus::Infeasible : SearchStatus::Optimal;
    return result;
}

UniformSearchResult max_uniform_n_search(std::size_t m, std::size_t c, std::size_t k, std::size_t t,
                                         const SearchBudget& budget, SearchOptions options) {
    if (m < 1 || m > kMaxSearchServers) throw std::invalid_argument("max_uniform_n_search supports 1 <= m <= 10");
    if (c < 1 || c > m) throw std::invalid_argument("max_uniform_n_search requires 1 <= c <= m");
    if (k < 1 || t < 1) throw std::invalid_argument("k and t must be at least 1");
    Meter meter(budget);
    UniformSearchResult result;
    if (k <= c * t) {
        result.status = SearchStatus::Unbounded;
        return result;
    }

    const auto columns = [&] {
        auto cols = subsets_lex(m, c);
        std::sort(cols.begin(), cols.end());
        return cols;
    }();
    DeficiencyCounter counter(m, k, t);

    // Each weight-c set lies in C(m-c, r-c) of the r-sets, each r-set holds at
    // most t*r items.
    std::uint64_t ceiling = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t r = c; r <= counter.max_size(); ++r)
        ceiling = std::min(ceiling, t * r * binomial(m, r) / binomial(m - c, r - c));

    std::vector<Mask> chosen;
    std::vector<Mask> best_columns;
    bool done = false;

    auto dfs = [&](auto&& self, std::size_t start) -> void {
        if (!meter.tick()) return;
        const std::size_t depth = chosen.size();
        if (depth > best_columns.size() || (depth == 0 && best_columns.empty())) {
            best_columns = chosen;
            if (best_columns.size() >= ceiling) done = true;
        }
        if (done) return;

        std::uint64_t room = 0;
        for (std::size_t ci = start; ci < columns.size() && room < ceiling; ++ci)
            room += std::min(c * t, counter.min_slack(columns[ci]));
        if (depth + std::min<std::uint64_t>(room, ceiling - depth) <= best_columns.size()) return;

        for (std::size_t ci = start; ci < columns.size(); ++ci) {
            const Mask col = columns[ci];
            if (symmetric_skip(options.symmetry, depth, col, chosen)) continue;
            if (!counter.try_add(col)) continue;
            chosen.push_back(col);
            self(self, ci);
            chosen.pop_back();
            counter.remove(col);
            if (done || meter.exhausted()) return;
        }
    };
    dfs(dfs, 0);

    result.nodes = meter.nodes();
    // Fewer than k items is vacuously a code, so k-1 is always reachable.
    if (best_columns.size() + 1 < k) best_columns.assign(k - 1, columns.front());
    result.n = best_columns.size();
    if (!best_columns.empty()) result.witness = IncidenceMatrix(m, best_columns);
    result.status = meter.exhausted() ? SearchStatus::Exhausted : SearchStatus::Optimal;
    return result;
}

SpanWitnessResult find_span_witness_graph(std::size_t v, std::size_t triangle_target, std::size_t k,
                                          const SearchBudget& budget) {
    if (v > 9) throw std::invalid_argument("find_span_witness_graph supports v <= 9");
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    Meter meter(budget);
    SpanWitnessResult result;

    std::vector<Edge> pairs;
    for (std::size_t a = 0; a < v; ++a)
        for (std::size_t b = a + 1; b < v; ++b) pairs.emplace_back(a, b);

    // Triangles inside R may not exceed |R| for every R with |R| < k.
    const std::size_t max_size = k - 1;
    std::vector<std::size_t> inside(std::size_t{1} << v, 0);
    std::vector<std::vector<Mask>> sup_cache(std::size_t{1} << v);
    auto supersets = [&](Mask tri) -> const std::vector<Mask>& {
        auto& sup = sup_cache[tri];
        if (sup.empty()) {
            const Mask rest = low_bits(v) & ~tri;
            for (Mask sub = rest;; sub = (sub - 1) & rest) {
                if (weight(tri | sub) <= max_size) sup.push_back(tri | sub);
                if (sub == 0) break;
            }
        }
        return sup;
    };

    std::vector<Mask> adj(v, 0), banned(v, 0);
    std::size_t triangles = 0;
    std::uint64_t possible = v >= 3 ? binomial(v, 3) : 0;
    bool found = triangle_target == 0;

    auto include = [&](std::size_t a, std::size_t b) -> bool {
        const auto common = mask_indices(adj[a] & adj[b]);
        std::vector<Mask> added;
        bool ok = true;
        for (auto x : common) {
            const Mask tri = bit(a) | bit(b) | bit(x);
            if (weight(tri) > max_size) continue;
            for (auto r : supersets(tri))
                if (inside[r] + 1 > weight(r)) ok = false;
            if (!ok) break;
            for (auto r : supersets(tri)) ++inside[r];
            added.push_back(tri);
        }
        if (!ok) {
            for (auto tri : added)
                for (auto r : supersets(tri)) --inside[r];
            return false;
        }
        adj[a] |= bit(b);
        adj[b] |= bit(a);
        triangles += common.size();
        return true;
    };
    auto exclude_undo = [&](std::size_t a, std::size_t b) {
        const auto common = mask_indices(adj[a] & adj[b]);
        for (auto x : common) {
            const Mask tri = bit(a) | bit(b) | bit(x);
            if (weight(tri) > max_size) continue;
            for (auto r : supersets(tri)) --inside[r];
        }
        adj[a] &= ~bit(b);
        adj[b] &= ~bit(a);
        triangles -= common.size();
    };

    auto snapshot = [&] {
        Graph g(v);
        for (std::size_t a = 0; a < v; ++a)
            for (auto b : mask_indices(adj[a] & ~low_bits(a + 1))) g.add_edge(a, b);
        return g;
    };

    auto dfs = [&](auto&& self, std::size_t p) -> void {
        if (found || !meter.tick()) return;
        result.best_triangles = std::max(result.best_triangles, triangles);
        if (triangles >= triangle_target) {
            found = true;
            result.graph = snapshot();
            return;
        }
        if (p == pairs.size() || possible < triangle_target) return;
        const auto [a, b] = pairs[p];

        if (include(a, b)) {
            self(self, p + 1);
            exclude_undo(a, b);
            if (found || meter.exhausted()) return;
        }
        // Any graph with an edge can be relabelled so that 0-1 is an edge.
        if (p == 0) return;

        const Mask free_ab = ~(banned[a] | banned[b]) & low_bits(v) & ~(bit(a) | bit(b));
        const std::size_t lost = weight(free_ab);
        possible -= lost;
        banned[a] |= bit(b);
        banned[b] |= bit(a);
        self(self, p + 1);
        banned[a] &= ~bit(b);
        banned[b] &= ~bit(a);
        possible += lost;
    };
    if (!found) dfs(dfs, 0);
    if (triangle_target == 0) result.graph = Graph(v);

    result.nodes = meter.nodes();
    if (result.graph) {
        result.triangles = result.graph->triangles();
        if (result.triangles.size() >= k && !is_cbc(triangle_code(*result.graph, result.triangles), k, 1).valid)
            throw std::logic_error("find_span_witness_graph: witness failed verification");
        result.status = SearchStatus::Found;
    } else {
        result.status = meter.exhausted() ? SearchStatus::Exhausted : SearchStatus::NotFound;
    }
    return result;
}

namespace {

enum class Existence { Yes, No, OutOfBudget };

// Is there a triangle- and square-free graph on v vertices with exactly
// `edges` edges and minimum degree >= min_degree?  Vertex 0 is taken to have
// the maximum degree and neighbours 1..max_degree.
Existence girth5_graph_exists(std::size_t v, std::size_t edges, std::size_t min_degree, Meter& meter,
                              std::optional<Graph>& witness) {
    if (v * min_degree > 2 * edges) return Existence::No;
    if (edges == 0) {
        witness = Graph(v);
        return Existence::Yes;
    }

    std::vector<Edge> pairs;
    for (std::size_t a = 1; a < v; ++a)
        for (std::size_t b = a + 1; b < v; ++b) pairs.emplace_back(a, b);

    for (std::size_t top = std::min(v - 1, edges); top >= std::max<std::size_t>(min_degree, 1); --top) {
        if (top * v < 2 * edges) break;

        std::vector<Mask> adj(v, 0);
        std::vector<std::size_t> deg(v, 0), open(v, v - 2);
        open[0] = 0;
        for (std::size_t x = 1; x <= top; ++x) {
            adj[0] |= bit(x);
            adj[x] |= bit(0);
            deg[x] = 1;
        }
        deg[0] = top;
        std::size_t count = top;

        auto fits = [&](std::size_t a, std::size_t b) {
            if (adj[a] & adj[b]) return false;
            for (auto x : mask_indices(adj[a]))
                if (adj[x] & adj[b]) return false;
            return true;
        };

        auto dfs = [&](auto&& self, std::size_t p) -> bool {
            if (!meter.tick()) return false;
            if (count == edges) {
                for (std::size_t x = 0; x < v; ++x)
                    if (deg[x] < min_degree) return false;
                return true;
            }
            if (p == pairs.size()) return false;
            std::size_t room = 0;
            for (std::size_t x = 1; x < v; ++x) room += std::min(open[x], top - deg[x]);
            if (room < 2 * (edges - count)) return false;

            const auto [a, b] = pairs[p];
            --open[a];
            --open[b];
            bool ok = false;
            if (deg[a] < top && deg[b] < top && fits(a, b)) {
                adj[a] |= bit(b);
                adj[b] |= bit(a);
                ++deg[a];
                ++deg[b];
                ++count;
                ok = self(self, p + 1);
                if (!ok) {
                    adj[a] &= ~bit(b);
                    adj[b] &= ~bit(a);
                    --deg[a];
                    --deg[b];
                    --count;
                }
            }
            if (!ok && !meter.exhausted() && deg[a] + open[a] >= min_degree && deg[b] + open[b] >= min_degree)
                ok = self(self, p + 1);
            ++open[a];
            ++open[b];
            return ok;
        };

        if (dfs(dfs, 0)) {
            Graph g(v);
            for (std::size_t a = 0; a < v; ++a)
                for (auto b : mask_indices(adj[a] & ~low_bits(a + 1))) g.add_edge(a, b);
            witness = std::move(g);
            return Existence::Yes;
        }
        if (meter.exhausted()) return Existence::OutOfBudget;
        if (top == 1) break;
    }
    return Existence::No;
}

Graph with_isolated_vertex(const Graph& g) {
    Graph out(g.vertex_count() + 1);
    for (auto [a, b] : g.edges()) out.add_edge(a, b);
    return out;
}

}  // namespace

Girth5SearchResult max_girth5_edges_search(std::size_t v, const SearchBudget& budget) {
    if (v < 1 || v > 12) throw std::invalid_argument("max_girth5_edges_search supports 1 <= v <= 12");
    Meter meter(budget);
    Girth5SearchResult result;

    Graph best(1);
    std::uint64_t extremal = 0;  // ex(w - 1) while processing w
    for (std::size_t w = 2; w <= v; ++w) {
        Graph level = with_isolated_vertex(best);
        if (w >= 3) {
            auto built = construct_girth5(w);
            if (built.edge_count() > level.edge_count()) level = std::move(built);
        }
        for (std::size_t e = level.edge_count() + 1;; ++e) {
            std::optional<Graph> found;
            const auto answer = girth5_graph_exists(w, e, e - extremal, meter, found);
            if (answer == Existence::Yes) {
                level = std::move(*found);
                continue;
            }
            if (answer == Existence::OutOfBudget) {
                result.status = SearchStatus::Exhausted;
                result.nodes = meter.nodes();
                Graph fallback = w == v ? level : (v >= 3 ? construct_girth5(v) : Graph(v));
                result.edges = fallback.edge_count();
                result.witness = std::move(fallback);
                return result;
            }
            break;
        }
        best = std::move(level);
        extremal = best.edge_count();
    }
    result.nodes = meter.nodes();
    result.edges = best.edge_count();
    result.witness = std::move(best);
    result.status = SearchStatus::Optimal;
    return result;
}

}  // namespace cbc
