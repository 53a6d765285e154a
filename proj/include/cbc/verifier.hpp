#pragma once

// Validity of (n, N, k, m, t) batch codes.
//
// A k-subset of items is retrievable with at most t reads per server iff every
// sub-subset S satisfies |S| <= t * |span(S)| (Hall's condition for the
// capacitated bipartite graph).  Globally this reduces to: for every server
// set R with t*|R| < k, at most t*|R| items are stored entirely inside R.
// is_cbc checks that reduced form; naive_is_cbc checks every k-subset.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "cbc/core.hpp"

namespace cbc {

struct RetrievalAssignment {
    // (item, server) in request order.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// A set of items that cannot all be read: items.size() > t * |spanned|.
struct Violation {
    std::vector<std::size_t> items;
    Mask spanned = 0;
};

using RetrievalOutcome = std::variant<RetrievalAssignment, Violation>;

// Capacitated augmenting-path matching; servers are scanned in ascending
// order so the result is deterministic.  `items` must be distinct and in
// range (std::out_of_range / std::invalid_argument otherwise).
RetrievalOutcome retrieval_assignment(const IncidenceMatrix& matrix, std::span<const std::size_t> items,
                                      std::size_t t);

struct CbcCheck {
    bool valid = true;
    std::optional<Violation> witness;
};

// Requires 1 <= k <= n and t >= 1.  The witness comes from the
// lexicographically smallest deficient server set.
CbcCheck is_cbc(const IncidenceMatrix& matrix, std::size_t k, std::size_t t = 1);

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kNaiveBudget = 5'000'000;

// Ground truth by enumerating all C(n, k) item subsets.  Throws
// BudgetExceeded when C(n, k) > budget.
bool naive_is_cbc(const IncidenceMatrix& matrix, std::size_t k, std::size_t t = 1,
                  std::uint64_t budget = kNaiveBudget);

struct Position {
    std::size_t row = 0;
    std::size_t col = 0;
    friend bool operator==(const Position&, const Position&) = default;
};

// One 1-entry per selected column, in pairwise distinct rows.
std::optional<std::vector<Position>> find_transversal(const IncidenceMatrix& matrix,
                                                      std::span<const std::size_t> items);

}  // namespace cbc
