#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cbc/core.hpp"
#include "cbc/verifier.hpp"
#include "rng.hpp"

using namespace cbc;

TEST_SUITE("core") {

TEST_CASE("binomial coefficients") {
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(10, 2) == 45);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(64, 32) == 1832624140942590534ULL);
    CHECK_THROWS_AS(binomial(100, 50), std::overflow_error);

    // Pascal's rule as an independent check.
    for (std::uint64_t n = 1; n <= 30; ++n)
        for (std::uint64_t r = 1; r < n; ++r) CHECK(binomial(n, r) == binomial(n - 1, r - 1) + binomial(n - 1, r));
}

TEST_CASE("lexicographic subsets") {
    const auto pairs = subsets_lex(4, 2);
    const std::vector<Mask> expected = {0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
    CHECK(pairs == expected);
    CHECK(subsets_lex(6, 3).size() == 20);
    CHECK(subsets_lex(3, 0) == std::vector<Mask>{0});
    for (auto s : subsets_lex(7, 3)) CHECK(weight(s) == 3);
}

TEST_CASE("mask helpers") {
    CHECK(mask_indices(0b10110) == std::vector<std::size_t>{1, 2, 4});
    const std::vector<std::size_t> idx = {0, 3, 5};
    CHECK(mask_of(idx) == 0b101001);
    CHECK(format_servers(0b10110) == "2,3,5");
    CHECK(low_bits(64) == ~Mask{0});
}

TEST_CASE("incidence matrix validation") {
    CHECK_THROWS_AS(IncidenceMatrix(3, {0b001, 0}), std::invalid_argument);
    CHECK_THROWS_AS(IncidenceMatrix(3, {0b1000}), std::invalid_argument);
    CHECK_THROWS_AS(IncidenceMatrix(65, {1}), std::invalid_argument);

    IncidenceMatrix m(3, {0b011, 0b110, 0b111});
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 3);
    CHECK(m.at(0, 0));
    CHECK_FALSE(m.at(2, 0));
    CHECK(total_storage(m) == 7);
    const std::vector<std::size_t> sel = {0, 1};
    CHECK(span(m, sel) == 0b111);
    const std::vector<std::size_t> bad = {3};
    CHECK_THROWS(span(m, bad));
}

TEST_CASE("build_matrix from blocks") {
    const std::vector<std::vector<std::size_t>> blocks = {{0, 1}, {2}};
    const auto m = build_matrix(blocks, 3);
    CHECK(m.column(0) == 0b011);
    CHECK(m.column(1) == 0b100);
    const std::vector<std::vector<std::size_t>> empty = {{}};
    CHECK_THROWS_AS(build_matrix(empty, 3), std::invalid_argument);
}

TEST_CASE("code parameters") {
    CHECK_NOTHROW(CodeParams{5, 3, 3, 1}.validate());
    CHECK_THROWS_AS((CodeParams{2, 3, 3, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CodeParams{5, 0, 3, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CodeParams{5, 3, 0, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CodeParams{5, 3, 3, 0}.validate()), std::invalid_argument);
}

TEST_CASE("dual is an involution and transposes the matrix") {
    test::SplitMix rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t points = 1 + rng.below(6);
        const std::size_t blocks = 1 + rng.below(7);
        SetSystem s{points, {}};
        for (std::size_t b = 0; b < blocks; ++b) {
            std::vector<std::size_t> block;
            for (std::size_t p = 0; p < points; ++p)
                if (rng.below(2)) block.push_back(p);
            s.blocks.push_back(block);
        }
        const auto d = dualize(s);
        CHECK(d.ground_size == s.blocks.size());
        CHECK(d.blocks.size() == points);
        CHECK(dualize(d) == s);
        for (std::size_t p = 0; p < points; ++p)
            for (std::size_t b = 0; b < blocks; ++b) {
                const bool in_s = std::count(s.blocks[b].begin(), s.blocks[b].end(), p) > 0;
                const bool in_d = std::count(d.blocks[p].begin(), d.blocks[p].end(), b) > 0;
                CHECK(in_s == in_d);
            }
    }
}

TEST_CASE("set system round trip") {
    const SetSystem s{4, {{0, 2}, {1}, {0, 1, 3}}};
    CHECK(to_set_system(to_matrix(s)) == s);
    CHECK_THROWS_AS((SetSystem{2, {{0, 5}}}.validate()), std::invalid_argument);
}

TEST_CASE("equivalence up to row permutation") {
    IncidenceMatrix a(3, {0b011, 0b110, 0b100});
    IncidenceMatrix b(3, {0b110, 0b011, 0b001});  // rows reversed
    CHECK(equivalent(a, b));
    IncidenceMatrix c(3, {0b011, 0b011, 0b100});
    CHECK_FALSE(equivalent(a, c));
    IncidenceMatrix d(3, {0b011, 0b110});
    CHECK_FALSE(equivalent(a, d));
}

TEST_CASE("grouped matrix for m=6, k=4") {
    const auto g = grouped_matrix(6, 4);
    CHECK(g.groups.size() == 3);
    const auto m = g.flatten();
    CHECK(m.cols() == 60);
    CHECK(total_storage(m) == 180);
    // 1-based rows as in the classic numbering.
    auto rows_of = [&](std::size_t col) { return format_servers(m.column(col - 1)); };
    CHECK(rows_of(1) == "1,2,3");
    CHECK(rows_of(2) == "1,2,4");
    CHECK(rows_of(3) == "1,2,5");
    CHECK(rows_of(20) == "4,5,6");
    CHECK(rows_of(21) == "1,2,3");
    CHECK(rows_of(60) == "4,5,6");
    for (const auto& group : g.groups) {
        std::vector<Mask> sorted = group;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        CHECK(group.size() == 20);
    }
    CHECK_THROWS_AS(grouped_matrix(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(grouped_matrix(3, 1), std::invalid_argument);
}

TEST_CASE("grouped matrix size formula") {
    for (std::size_t m = 2; m <= 9; ++m)
        for (std::size_t k = 2; k <= m; ++k) {
            const auto flat = grouped_matrix(m, k).flatten();
            CHECK(flat.cols() == (k - 1) * binomial(m, k - 1));
            CHECK(total_storage(flat) == (k - 1) * (k - 1) * binomial(m, k - 1));
        }
}

TEST_CASE("storage of a weight-w matrix is n*w") {
    test::SplitMix rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + rng.below(8);
        const std::size_t w = 1 + rng.below(m);
        const auto supports = subsets_lex(m, w);
        const std::size_t n = 1 + rng.below(15);
        std::vector<Mask> cols;
        for (std::size_t j = 0; j < n; ++j) cols.push_back(supports[rng.below(supports.size())]);
        CHECK(total_storage(IncidenceMatrix(m, cols)) == n * w);
    }
}

TEST_CASE("span is monotone") {
    test::SplitMix rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = 1 + rng.below(8);
        const std::size_t n = 1 + rng.below(8);
        std::vector<Mask> cols;
        for (std::size_t j = 0; j < n; ++j) cols.push_back(1 + rng.below(low_bits(m)));
        const IncidenceMatrix mat(m, cols);
        std::vector<std::size_t> small, large;
        for (std::size_t j = 0; j < n; ++j) {
            const auto r = rng.below(3);
            if (r == 0) small.push_back(j);
            if (r <= 1) large.push_back(j);
        }
        const Mask a = small.empty() ? 0 : span(mat, small);
        const Mask b = large.empty() ? 0 : span(mat, large);
        CHECK((a & ~b) == 0);
    }
}

TEST_CASE("grouped matrices are codes for every 2 <= k <= m <= 6") {
    for (std::size_t m = 2; m <= 6; ++m)
        for (std::size_t k = 2; k <= m; ++k) CHECK(is_cbc(grouped_matrix(m, k).flatten(), k).valid);
}

TEST_CASE("columns of one group sharing i fixed rows") {
    const auto g = grouped_matrix(6, 4);
    auto sharing = [&](Mask rows) {
        std::size_t count = 0;
        for (auto c : g.groups[0])
            if ((c & rows) == rows) ++count;
        return count;
    };
    for (std::size_t i = 1; i <= 3; ++i)
        for (auto rows : subsets_lex(6, i)) CHECK(sharing(rows) == binomial(6 - i, 3 - i));
    CHECK(sharing(0b000111) == 1);
    CHECK(sharing(0b000011) == 4);
    CHECK(sharing(0b000001) == 10);
}

}  // TEST_SUITE
