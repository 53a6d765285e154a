#include "cbc/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace cbc {

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    __extension__ using Wide = unsigned __int128;
    Wide result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        result = result * (n - r + i) / i;
        if (result > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(result);
}

std::vector<std::size_t> mask_indices(Mask mask) {
    std::vector<std::size_t> out;
    out.reserve(weight(mask));
    while (mask) {
        out.push_back(static_cast<std::size_t>(__builtin_ctzll(mask)));
        mask &= mask - 1;
    }
    return out;
}

Mask mask_of(std::span<const std::size_t> indices) {
    Mask mask = 0;
    for (auto i : indices) {
        if (i >= kMaxServers) throw std::invalid_argument("index exceeds the 64-row limit");
        mask |= bit(i);
    }
    return mask;
}

namespace {

void lex_rec(std::size_t m, std::size_t r, std::size_t next, Mask acc, std::vector<Mask>& out) {
    if (r == 0) {
        out.push_back(acc);
        return;
    }
    for (std::size_t i = next; i + r <= m; ++i) lex_rec(m, r - 1, i + 1, acc | bit(i), out);
}

}  // namespace

std::vector<Mask> subsets_lex(std::size_t m, std::size_t r) {
    if (m > kMaxServers) throw std::invalid_argument("at most 64 rows are supported");
    std::vector<Mask> out;
    if (r > m) return out;
    out.reserve(binomial(m, r));
    lex_rec(m, r, 0, 0, out);
    return out;
}

std::string format_servers(Mask mask) {
    std::ostringstream os;
    bool first = true;
    for (auto i : mask_indices(mask)) {
        if (!first) os << ',';
        os << i + 1;
        first = false;
    }
    return os.str();
}

void CodeParams::validate() const {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (n < k) throw std::invalid_argument("n must be at least k");
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (t < 1) throw std::invalid_argument("t must be at least 1");
}

IncidenceMatrix::IncidenceMatrix(std::size_t rows, std::vector<Mask> columns)
    : rows_(rows), columns_(std::move(columns)) {
    if (rows_ > kMaxServers) throw std::invalid_argument("at most 64 servers are supported");
    const Mask allowed = low_bits(rows_);
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (columns_[j] == 0)
            throw std::invalid_argument("unstorable item: column " + std::to_string(j + 1) + " is empty");
        if (columns_[j] & ~allowed)
            throw std::invalid_argument("column " + std::to_string(j + 1) + " uses a server index >= m");
    }
}

IncidenceMatrix build_matrix(std::span<const std::vector<std::size_t>> blocks, std::size_t m) {
    if (m > kMaxServers) throw std::invalid_argument("at most 64 servers are supported");
    std::vector<Mask> columns;
    columns.reserve(blocks.size());
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (blocks[j].empty())
            throw std::invalid_argument("unstorable item: block " + std::to_string(j + 1) + " is empty");
        for (auto server : blocks[j])
            if (server >= m)
                throw std::invalid_argument("block " + std::to_string(j + 1) + " names server " +
                                            std::to_string(server + 1) + " but m = " + std::to_string(m));
        columns.push_back(mask_of(blocks[j]));
    }
    return IncidenceMatrix(m, std::move(columns));
}

std::uint64_t total_storage(const IncidenceMatrix& matrix) {
    std::uint64_t total = 0;
    for (auto c : matrix.columns()) total += weight(c);
    return total;
}

Mask span(const IncidenceMatrix& matrix, std::span<const std::size_t> items) {
    if (items.empty()) throw std::invalid_argument("span of an empty item selection");
    Mask out = 0;
    for (auto j : items) {
        if (j >= matrix.cols()) throw std::out_of_range("item index out of range");
        out |= matrix.column(j);
    }
    return out;
}

namespace {

Mask permute_rows(Mask column, const std::vector<std::size_t>& perm) {
    Mask out = 0;
    for (auto i : mask_indices(column)) out |= bit(perm[i]);
    return out;
}

std::vector<std::size_t> row_sums(const IncidenceMatrix& m) {
    std::vector<std::size_t> sums(m.rows(), 0);
    for (auto c : m.columns())
        for (auto i : mask_indices(c)) ++sums[i];
    return sums;
}

}  // namespace

bool equivalent(const IncidenceMatrix& a, const IncidenceMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    auto sa = row_sums(a);
    auto sb = row_sums(b);
    {
        auto x = sa, y = sb;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y) return false;
    }
    std::vector<Mask> target(b.columns().begin(), b.columns().end());
    std::sort(target.begin(), target.end());

    // Rows of a may only map to rows of b with the same sum.
    const std::size_t m = a.rows();
    std::vector<std::size_t> perm(m);
    std::vector<bool> used(m, false);
    std::vector<Mask> image(a.cols());

    auto rec = [&](auto&& self, std::size_t row) -> bool {
        if (row == m) {
            for (std::size_t j = 0; j < a.cols(); ++j) image[j] = permute_rows(a.column(j), perm);
            std::sort(image.begin(), image.end());
            return image == target;
        }
        for (std::size_t dst = 0; dst < m; ++dst) {
            if (used[dst] || sb[dst] != sa[row]) continue;
            used[dst] = true;
            perm[row] = dst;
            if (self(self, row + 1)) return true;
            used[dst] = false;
        }
        return false;
    };
    return rec(rec, 0);
}

void SetSystem::validate() const {
    for (std::size_t j = 0; j < blocks.size(); ++j)
        for (auto p : blocks[j])
            if (p >= ground_size)
                throw std::invalid_argument("block " + std::to_string(j + 1) + " contains point " +
                                            std::to_string(p + 1) + " outside the ground set");
}

SetSystem dualize(const SetSystem& system) {
    system.validate();
    SetSystem dual;
    dual.ground_size = system.blocks.size();
    dual.blocks.assign(system.ground_size, {});
    for (std::size_t i = 0; i < system.blocks.size(); ++i) {
        auto block = system.blocks[i];
        std::sort(block.begin(), block.end());
        block.erase(std::unique(block.begin(), block.end()), block.end());
        for (auto p : block) dual.blocks[p].push_back(i);
    }
    return dual;
}

IncidenceMatrix to_matrix(const SetSystem& system) {
    system.validate();
    return build_matrix(system.blocks, system.ground_size);
}

SetSystem to_set_system(const IncidenceMatrix& matrix) {
    SetSystem s;
    s.ground_size = matrix.rows();
    s.blocks.reserve(matrix.cols());
    for (auto c : matrix.columns()) s.blocks.push_back(mask_indices(c));
    return s;
}

IncidenceMatrix GroupedMatrix::flatten() const {
    std::vector<Mask> columns;
    for (const auto& g : groups) columns.insert(columns.end(), g.begin(), g.end());
    return IncidenceMatrix(m, std::move(columns));
}

GroupedMatrix grouped_matrix(std::size_t m, std::size_t k) {
    if (k < 2) throw std::invalid_argument("grouped matrix needs k >= 2");
    if (k > m) throw std::invalid_argument("grouped matrix needs k <= m");
    if (m > kMaxServers) throw std::invalid_argument("at most 64 servers are supported");
    GroupedMatrix g{m, k, {}};
    const auto group = subsets_lex(m, k - 1);
    g.groups.assign(k - 1, group);
    return g;
}

}  // namespace cbc
