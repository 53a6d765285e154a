#include "cbc/verifier.hpp"

#include <algorithm>
#include <map>

namespace cbc {

namespace {

class CapacitatedMatcher {
public:
    CapacitatedMatcher(const IncidenceMatrix& matrix, std::span<const std::size_t> items, std::size_t t)
        : matrix_(matrix), items_(items), t_(t), load_(matrix.rows()), server_of_(items.size()) {}

    // Tries to place request `slot`; on failure `visited_` holds the servers
    // reached by the alternating search, all of them full.
    bool place(std::size_t slot) {
        visited_ = 0;
        return augment(slot);
    }

    Mask visited() const { return visited_; }
    const std::vector<std::vector<std::size_t>>& load() const { return load_; }
    std::size_t server_of(std::size_t slot) const { return server_of_[slot]; }

private:
    bool augment(std::size_t slot) {
        const Mask column = matrix_.column(items_[slot]);
        for (auto s : mask_indices(column)) {
            if (visited_ & bit(s)) continue;
            visited_ |= bit(s);
            if (load_[s].size() < t_) {
                load_[s].push_back(slot);
                server_of_[slot] = s;
                return true;
            }
            for (auto& occupant : load_[s]) {
                const auto moved = occupant;
                if (augment(moved)) {
                    occupant = slot;
                    server_of_[slot] = s;
                    return true;
                }
            }
        }
        return false;
    }

    const IncidenceMatrix& matrix_;
    std::span<const std::size_t> items_;
    std::size_t t_;
    std::vector<std::vector<std::size_t>> load_;
    std::vector<std::size_t> server_of_;
    Mask visited_ = 0;
};

void check_items(const IncidenceMatrix& matrix, std::span<const std::size_t> items) {
    std::vector<std::size_t> sorted(items.begin(), items.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] >= matrix.cols())
            throw std::out_of_range("item " + std::to_string(sorted[i] + 1) + " out of range (n = " +
                                    std::to_string(matrix.cols()) + ")");
        if (i > 0 && sorted[i] == sorted[i - 1]) throw std::invalid_argument("duplicate item in request");
    }
}

}  // namespace

RetrievalOutcome retrieval_assignment(const IncidenceMatrix& matrix, std::span<const std::size_t> items,
                                      std::size_t t) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    check_items(matrix, items);

    CapacitatedMatcher matcher(matrix, items, t);
    for (std::size_t slot = 0; slot < items.size(); ++slot) {
        if (matcher.place(slot)) continue;

        // Deficient set: the failed request plus everything parked on the
        // visited servers.
        Violation v;
        v.spanned = matcher.visited();
        v.items.push_back(items[slot]);
        for (auto s : mask_indices(v.spanned))
            for (auto other : matcher.load()[s]) v.items.push_back(items[other]);
        std::sort(v.items.begin(), v.items.end());
        return v;
    }

    RetrievalAssignment out;
    out.pairs.reserve(items.size());
    for (std::size_t slot = 0; slot < items.size(); ++slot) out.pairs.emplace_back(items[slot], matcher.server_of(slot));
    return out;
}

CbcCheck is_cbc(const IncidenceMatrix& matrix, std::size_t k, std::size_t t) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    if (k < 1 || k > matrix.cols()) throw std::invalid_argument("is_cbc requires 1 <= k <= n");

    std::map<Mask, std::size_t> histogram;
    for (auto c : matrix.columns()) ++histogram[c];
    const std::vector<std::pair<Mask, std::size_t>> distinct(histogram.begin(), histogram.end());

    const std::size_t m = matrix.rows();
    const std::size_t max_size = std::min(m, (k - 1) / t);

    // Server sets in lexicographic order of their sorted index lists.
    std::optional<Mask> deficient;
    auto visit = [&](auto&& self, Mask set, std::size_t size, std::size_t next) -> void {
        for (std::size_t s = next; s < m && !deficient; ++s) {
            const Mask r = set | bit(s);
            std::size_t inside = 0;
            for (const auto& [col, count] : distinct)
                if ((col & ~r) == 0) inside += count;
            if (inside > t * (size + 1)) {
                deficient = r;
                return;
            }
            if (size + 1 < max_size) self(self, r, size + 1, s + 1);
        }
    };
    if (max_size > 0) visit(visit, 0, 0, 0);

    if (!deficient) return {};

    Violation v;
    for (std::size_t j = 0; j < matrix.cols() && v.items.size() < k; ++j)
        if ((matrix.column(j) & ~*deficient) == 0) v.items.push_back(j);
    v.spanned = span(matrix, v.items);
    return {false, std::move(v)};
}

bool naive_is_cbc(const IncidenceMatrix& matrix, std::size_t k, std::size_t t, std::uint64_t budget) {
    const std::size_t n = matrix.cols();
    if (k < 1 || k > n) throw std::invalid_argument("naive_is_cbc requires 1 <= k <= n");
    std::uint64_t subsets = 0;
    try {
        subsets = binomial(n, k);
    } catch (const std::overflow_error&) {
        throw BudgetExceeded("instance too large for naive oracle");
    }
    if (subsets > budget) throw BudgetExceeded("instance too large for naive oracle");

    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        if (std::holds_alternative<Violation>(retrieval_assignment(matrix, pick, t))) return false;
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return true;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

std::optional<std::vector<Position>> find_transversal(const IncidenceMatrix& matrix,
                                                      std::span<const std::size_t> items) {
    auto outcome = retrieval_assignment(matrix, items, 1);
    const auto* assignment = std::get_if<RetrievalAssignment>(&outcome);
    if (!assignment) return std::nullopt;
    std::vector<Position> out;
    out.reserve(assignment->pairs.size());
    for (auto [item, server] : assignment->pairs) out.push_back({server, item});
    return out;
}

}  // namespace cbc
