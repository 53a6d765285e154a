#pragma once

// Brute-force reference checks used by the tests.  They share no code with
// the library beyond the matrix type.

#include <cstdint>
#include <functional>
#include <vector>

#include "cbc/core.hpp"

namespace test {

// Tries every way of sending each chosen item to one of its servers.
inline bool readable(const cbc::IncidenceMatrix& m, const std::vector<std::size_t>& items, std::size_t t) {
    std::vector<std::size_t> load(m.rows(), 0);
    std::function<bool(std::size_t)> place = [&](std::size_t i) {
        if (i == items.size()) return true;
        const cbc::Mask col = m.column(items[i]);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (!((col >> r) & 1U) || load[r] == t) continue;
            ++load[r];
            if (place(i + 1)) return true;
            --load[r];
        }
        return false;
    };
    return place(0);
}

// Every k-subset of columns is readable.
inline bool brute_is_cbc(const cbc::IncidenceMatrix& m, std::size_t k, std::size_t t) {
    std::vector<std::size_t> items;
    std::function<bool(std::size_t)> choose = [&](std::size_t start) {
        if (items.size() == k) return readable(m, items, t);
        for (std::size_t j = start; j + (k - items.size()) <= m.cols(); ++j) {
            items.push_back(j);
            if (!choose(j + 1)) return false;
            items.pop_back();
        }
        return true;
    };
    return choose(0);
}

// Every m x n matrix without empty columns, columns in any order, visited
// as column masks.
inline void for_each_matrix(std::size_t m, std::size_t n, const std::function<void(const cbc::IncidenceMatrix&)>& f) {
    const cbc::Mask top = (cbc::Mask{1} << m) - 1;
    std::vector<cbc::Mask> cols(n, 1);
    while (true) {
        f(cbc::IncidenceMatrix(m, cols));
        std::size_t i = 0;
        while (i < n && cols[i] == top) cols[i++] = 1;
        if (i == n) return;
        ++cols[i];
    }
}

// Maximum edge count of a graph on v vertices without triangles or squares,
// by trying every edge subset.
inline std::size_t brute_girth5_max(std::size_t v) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < v; ++a)
        for (std::size_t b = a + 1; b < v; ++b) pairs.emplace_back(a, b);
    std::size_t best = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << pairs.size()); ++s) {
        const auto e = static_cast<std::size_t>(__builtin_popcountll(s));
        if (e <= best) continue;
        std::vector<std::uint64_t> adj(v, 0);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if ((s >> i) & 1U) {
                adj[pairs[i].first] |= std::uint64_t{1} << pairs[i].second;
                adj[pairs[i].second] |= std::uint64_t{1} << pairs[i].first;
            }
        bool ok = true;
        for (std::size_t a = 0; a < v && ok; ++a)
            for (std::size_t b = a + 1; b < v && ok; ++b) {
                const auto common = __builtin_popcountll(adj[a] & adj[b]);
                if (common >= 2) ok = false;                         // square
                if (((adj[a] >> b) & 1U) && common >= 1) ok = false;  // triangle
            }
        if (ok) best = e;
    }
    return best;
}

}  // namespace test
