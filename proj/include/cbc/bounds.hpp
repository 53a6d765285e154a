#pragma once

// Closed-form optimal values and bounds for batch codes.
//
//   N(n,k,m)     minimum storage of an (n, N, k, m) code (t = 1)
//   N_t(n,k,m)   the same for t > 1
//   n(m,c,k)     maximum n of a column-uniform code of weight c (t = 1)
//   n_t(m,c,k)   the same for t > 1
//
// Every function returns a BoundResult tagged with its kind and a provenance
// label naming the result it came from.  An unknown value is an ordinary
// result, not an error.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cbc {

enum class BoundKind { Exact, Lower, Upper, Unbounded, Unknown };

std::string_view to_string(BoundKind kind);

struct BoundResult {
    BoundKind kind = BoundKind::Unknown;
    std::optional<std::uint64_t> value;  // present iff kind is Exact, Lower or Upper
    std::string provenance;
    bool ambiguous = false;  // formula transcribed from a garbled source

    static BoundResult exact(std::uint64_t v, std::string why) { return {BoundKind::Exact, v, std::move(why)}; }
    static BoundResult lower(std::uint64_t v, std::string why) { return {BoundKind::Lower, v, std::move(why)}; }
    static BoundResult upper(std::uint64_t v, std::string why) { return {BoundKind::Upper, v, std::move(why)}; }
    static BoundResult unbounded(std::string why) { return {BoundKind::Unbounded, std::nullopt, std::move(why)}; }
    static BoundResult unknown(std::string why) { return {BoundKind::Unknown, std::nullopt, std::move(why)}; }

    // "160 EXACT (Theorem 3, d=6, l=2)", "UNBOUNDED (Corollary 1)", ...
    std::string describe() const;
};

// Piecewise, first match wins: m = n; m = k; m = n - 1;
// n >= (k-1)C(m,k-1); C(m,k-2) <= n < (k-1)C(m,k-1); otherwise UNKNOWN.
// Throws std::invalid_argument for n < k or k < 1, and std::domain_error
// when k > m (no code exists).
BoundResult optimal_N(std::size_t n, std::size_t k, std::size_t m);

// t = 1 defers to optimal_N.  Otherwise exact only for m = n, or for m = k
// with n <= t*k.
BoundResult optimal_N_t(std::size_t n, std::size_t k, std::size_t m, std::size_t t);

// Uniform weight-c codes with t = 1.  Usually a single result; the c = 2,
// k = 5 case returns a LOWER and an UPPER entry.  Requires 1 <= c < m.
std::vector<BoundResult> uniform_max_n(std::size_t m, std::size_t c, std::size_t k);

// Uniform weight-c codes for any t >= 1.  Requires 1 <= c <= m.
BoundResult uniform_max_n_t(std::size_t m, std::size_t c, std::size_t k, std::size_t t);

// One level of the octagon/square tiling used for rate-1/3 codes.
struct TilingLevel {
    std::uint64_t d = 0;
    std::uint64_t g = 0;  // octagons
    std::uint64_t s = 0;  // squares
    std::uint64_t e = 0;  // shared edges between faces
    std::uint64_t servers = 0;    // 8g + 4s
    std::uint64_t triangles = 0;  // 16g + 4s + 4e
};

// Requires d >= 1.
TilingLevel tiling_level(std::uint64_t d);

// Lower bound on n(m, 3, 6) from the tiling.
struct TilingBound {
    std::uint64_t m = 0;
    std::uint64_t d = 0;
    std::uint64_t g = 0;
    std::uint64_t s = 0;
    std::uint64_t e = 0;
    std::uint64_t delta_prime = 0;  // triangles in the full levels
    std::uint64_t m_prime = 0;      // vertices left over after the full levels
    std::uint64_t j = 0;            // leftover class in 1..8 (0 when nothing is left)
    std::uint64_t oct = 0;
    std::uint64_t l_prime = 0;
    std::int64_t delta_double_prime = 0;
    std::uint64_t best_i = 0;
    std::int64_t delta = 0;
    std::uint64_t printed_root_level = 0;  // the level the "+24" root formula would give

    BoundResult as_bound() const;
};

// Requires m >= 8.  The level is the largest d with 8 + 24d(d+1) <= m.
TilingBound tiling_bound(std::uint64_t m);

// 2 + 3*floor((v-3)/2): edges of a triangle- and square-free graph on v
// vertices that can always be reached.  Requires v >= 3.
std::uint64_t girth5_edge_bound(std::uint64_t v);

}  // namespace cbc
