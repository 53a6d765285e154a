#pragma once

// Set systems, incidence matrices and the grouped matrix.
//
// Convention: rows are servers, columns are items.  Every column is stored as
// a bitmask over the rows, so a matrix has at most 64 rows.  All indices in
// this API are 0-based; the CLI and the report tables print them 1-based.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbc {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxServers = 64;

// C(n, r).  Throws std::overflow_error when the result does not fit.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

inline std::size_t weight(Mask mask) { return static_cast<std::size_t>(__builtin_popcountll(mask)); }

inline Mask bit(std::size_t index) { return Mask{1} << index; }

// Mask with bits 0..count-1 set.
inline Mask low_bits(std::size_t count) { return count >= 64 ? ~Mask{0} : bit(count) - 1; }

std::vector<std::size_t> mask_indices(Mask mask);
Mask mask_of(std::span<const std::size_t> indices);

// All r-subsets of {0..m-1}, ordered lexicographically by their sorted index
// lists: {0,1,2}, {0,1,3}, ..., {m-3,m-2,m-1}.
std::vector<Mask> subsets_lex(std::size_t m, std::size_t r);

// "1,2,5" style rendering, 1-based.
std::string format_servers(Mask mask);

struct CodeParams {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t m = 0;
    std::size_t t = 1;

    // Throws std::invalid_argument unless n >= k >= 1, m >= 1 and t >= 1.
    void validate() const;
};

class IncidenceMatrix {
public:
    IncidenceMatrix() = default;

    // Throws std::invalid_argument on an empty column ("unstorable item"), a
    // bit outside the row range, or more than kMaxServers rows.
    IncidenceMatrix(std::size_t rows, std::vector<Mask> columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }
    bool at(std::size_t row, std::size_t col) const { return (columns_.at(col) >> row) & 1U; }
    Mask column(std::size_t col) const { return columns_.at(col); }
    std::span<const Mask> columns() const { return columns_; }

    // Literal entry equality; column order matters.
    friend bool operator==(const IncidenceMatrix&, const IncidenceMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<Mask> columns_;
};

// Item-as-block view: blocks[j] lists the servers storing item j.
IncidenceMatrix build_matrix(std::span<const std::vector<std::size_t>> blocks, std::size_t m);

// N: the number of 1-entries.
std::uint64_t total_storage(const IncidenceMatrix& matrix);

// Union of the supports of the selected columns.
Mask span(const IncidenceMatrix& matrix, std::span<const std::size_t> items);

// Same multiset of columns up to a permutation of rows.  Brute force over row
// permutations that preserve row sums; intended for tests on small matrices.
bool equivalent(const IncidenceMatrix& a, const IncidenceMatrix& b);

struct SetSystem {
    std::size_t ground_size = 0;
    std::vector<std::vector<std::size_t>> blocks;

    // Throws std::invalid_argument if a block mentions a point >= ground_size.
    void validate() const;

    friend bool operator==(const SetSystem&, const SetSystem&) = default;
};

// Transpose of the incidence structure: the dual has one point per block of
// `system`, and its block j collects the blocks of `system` that contain j.
SetSystem dualize(const SetSystem& system);

// Blocks become columns, points become rows.
IncidenceMatrix to_matrix(const SetSystem& system);
SetSystem to_set_system(const IncidenceMatrix& matrix);

// k-1 copies of the C(m, k-1) weight-(k-1) columns.  Inside a group the
// columns follow subsets_lex order, which reproduces the classic m=6, k=4
// numbering (column 1 = rows {1,2,3}, column 20 = rows {4,5,6}).
struct GroupedMatrix {
    std::size_t m = 0;
    std::size_t k = 0;
    std::vector<std::vector<Mask>> groups;

    IncidenceMatrix flatten() const;
};

// Requires 2 <= k <= m.
GroupedMatrix grouped_matrix(std::size_t m, std::size_t k);

}  // namespace cbc
