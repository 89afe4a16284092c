#include "chidef/sparse_matrix.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace chidef;

namespace {

SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Rational(1));
    return m;
}

SparseMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
    SparseMatrix m(r, c);
    std::uniform_int_distribution<int> val(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (val(rng) > 0) m.set(i, j, Rational(val(rng), den(rng)));
    return m;
}

} // namespace

TEST_CASE("rank basics") {
    CHECK(rank(SparseMatrix(0, 0)) == 0);
    CHECK(rank(identity(3)) == 3);
    SparseMatrix m(2, 2);
    m.set(0, 0, Rational(1));
    m.set(0, 1, Rational(2));
    m.set(1, 0, Rational(2));
    m.set(1, 1, Rational(4));
    CHECK(rank(m) == 1);
}

TEST_CASE("kernel basics") {
    CHECK(kernel_basis(identity(2)).empty());
    CHECK(kernel_basis(SparseMatrix(2, 3)).size() == 3);
    SparseMatrix m(1, 2);
    m.set(0, 0, Rational(1));
    m.set(0, 1, Rational(1));
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    // proportional to (1, -1)
    CHECK(k[0][0] == -k[0][1]);
    CHECK(!k[0][0].is_zero());
}

TEST_CASE("solve_affine basics") {
    {
        Vec b{Rational(3), Rational(-5, 7)};
        auto s = solve_affine(identity(2), b);
        REQUIRE(s);
        CHECK(s->particular == b);
        CHECK(s->kernel.empty());
    }
    {
        SparseMatrix m(1, 2);
        m.set(0, 0, Rational(1));
        m.set(0, 1, Rational(1));
        auto s = solve_affine(m, {Rational(2)});
        REQUIRE(s);
        CHECK(m.apply(s->particular) == Vec{Rational(2)});
        REQUIRE(s->kernel.size() == 1);
    }
    {
        SparseMatrix m(1, 1); // [[0]]
        CHECK(!solve_affine(m, {Rational(1)}));
    }
    CHECK_THROWS(solve_affine(identity(2), {Rational(1)}));
}

TEST_CASE("rank-nullity and transpose rank on random matrices") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        SparseMatrix m = random_matrix(rng, 5, 7);
        CHECK(rank(m) + kernel_basis(m).size() == m.cols());
        CHECK(rank(m) == rank(m.transpose()));
        for (const auto& v : kernel_basis(m)) {
            Vec y = m.apply(v);
            for (const auto& e : y) CHECK(e.is_zero());
        }
    }
}

TEST_CASE("solvability iff augmented rank equals rank, randomized") {
    std::mt19937 rng(999);
    std::uniform_int_distribution<int> val(-3, 3);
    for (int trial = 0; trial < 25; ++trial) {
        SparseMatrix m = random_matrix(rng, 6, 6);
        Vec b(6);
        for (auto& e : b) e = Rational(val(rng));
        SparseMatrix aug(6, 7);
        for (const auto& [rc, v] : m.entries()) aug.set(rc.first, rc.second, v);
        for (std::size_t r = 0; r < 6; ++r) aug.set(r, 6, b[r]);
        bool solvable_by_rank = rank(aug) == rank(m);
        auto s = solve_affine(m, b);
        CHECK(bool(s) == solvable_by_rank);
        if (s) CHECK(m.apply(s->particular) == b);
    }
}
