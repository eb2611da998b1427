#include "doctest.h"

#include <random>

#include "ffdist/linalg.hpp"
#include "oracles.hpp"

using namespace ffdist;

namespace {

/// Tridiagonal Gram of e_i - e_{i+1}, i < m, as integers.
std::vector<std::vector<long long>> w_gram(std::size_t m)
{
    std::vector<std::vector<long long>> g(m, std::vector<long long>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        g[i][i] = 2;
        if (i + 1 < m)
            g[i][i + 1] = g[i + 1][i] = -1;
    }
    return g;
}

bool is_diagonal(const MatrixF & m)
{
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (r != c && m(r, c) != m.field().zero())
                return false;
    return true;
}

void check_diag(const MatrixF & g, const DiagForm & d)
{
    const MatrixF prod = d.basis.transpose() * g * d.basis;
    REQUIRE(is_diagonal(prod));
    for (std::size_t i = 0; i < d.dim(); ++i)
        CHECK(prod(i, i) == d.entries[i]);
    CHECK(rank(d.basis) == g.rows());
}

}  // namespace

TEST_CASE("rank examples")
{
    const Field f3 = Field::make(3);
    // 2x2 I+J: integer determinant 3, vanishes mod 3.
    REQUIRE(oracle::det({{2, 1}, {1, 2}}) == 3);
    CHECK(rank(MatrixF::identity_plus_ones(f3, 2)) == 1);
    // 4x4 I+J has eigenvalues 5 and 1, both nonzero mod 3.
    REQUIRE(oracle::det({{2, 1, 1, 1}, {1, 2, 1, 1}, {1, 1, 2, 1}, {1, 1, 1, 2}}) == 5);
    CHECK(rank(MatrixF::identity_plus_ones(f3, 4)) == 4);
    for (std::size_t d = 1; d <= 6; ++d)
        CHECK(rank(MatrixF::identity(Field::make(3, 2), d)) == d);
    CHECK(rank(MatrixF(f3, 3, 2)) == 0);
}

TEST_CASE("gram_rank_law examples")
{
    CHECK(gram_rank_law(3, Field::make(3)) == 1);
    CHECK(gram_rank_law(6, Field::make(3)) == 4);
    CHECK(gram_rank_law(7, Field::make(5)) == 6);
    CHECK(gram_rank_law(9, Field::make(3, 2)) == 7);
}

TEST_CASE("determinant matches integer cofactor oracle")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(-4, 4);
    for (long long p : {3, 5, 7, 11}) {
        const Field f = Field::make(p);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 1 + trial % 5;
            std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
            for (auto & row : m)
                for (auto & x : row)
                    x = pick(rng);
            const auto want = oracle::mod(oracle::det(m), p);
            CHECK(determinant(MatrixF::from_ints(f, m)).code == want);
            CHECK((rank(MatrixF::from_ints(f, m)) == n) == (want != 0));
        }
    }
}

TEST_CASE("diagonalize_form examples")
{
    const Field f5 = Field::make(5);

    const MatrixF diag = MatrixF::from_ints(f5, {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
    const DiagForm same = diagonalize_form(diag);
    CHECK(same.basis == MatrixF::identity(f5, 3));
    CHECK(same.entries == std::vector<Elem>{Elem{1}, Elem{2}, Elem{3}});

    // Hyperbolic plane: brute-force every B over F_5 to learn which diagonal
    // determinants are reachable by congruence.
    const MatrixF h = MatrixF::from_ints(f5, {{0, 1}, {1, 0}});
    std::set<long long> reachable;
    for (int b = 0; b < 625; ++b) {
        const long long b00 = b % 5, b01 = b / 5 % 5, b10 = b / 25 % 5, b11 = b / 125;
        if (oracle::mod(b00 * b11 - b01 * b10, 5) == 0)
            continue;
        // (B^T H B)_{ij} = b_{0i} b_{1j} + b_{1i} b_{0j}
        const long long off = oracle::mod(b00 * b11 + b10 * b01, 5);
        if (off != 0)
            continue;
        reachable.insert(oracle::mod(2 * b00 * b10 * 2 * b01 * b11, 5));
    }
    REQUIRE(!reachable.empty());
    const DiagForm hd = diagonalize_form(h);
    check_diag(h, hd);
    CHECK(reachable.contains(hd.determinant().code));
    CHECK(f5.square_class(hd.determinant()) == f5.square_class(f5.neg(f5.one())));

    // W-form of F_5^4 has integer determinant 4, a square mod 5.
    REQUIRE(oracle::det(w_gram(3)) == 4);
    const MatrixF w = MatrixF::from_ints(f5, w_gram(3));
    CHECK(w == MatrixF::from_ints(f5, {{2, 4, 0}, {4, 2, 4}, {0, 4, 2}}));
    const DiagForm wd = diagonalize_form(w);
    check_diag(w, wd);
    CHECK(f5.square_class(wd.determinant()) == SquareClass::Square);
}

TEST_CASE("diagonalization of random symmetric matrices")
{
    std::mt19937_64 rng(11);
    for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}, {7u, 1u}}) {
        const Field f = Field::make(p, k);
        std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 1 + trial % 6;
            MatrixF g(f, n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = r; c < n; ++c)
                    g(r, c) = g(c, r) = Elem{pick(rng)};
            const DiagForm d = diagonalize_form(g);
            check_diag(g, d);
            std::size_t nonzero = 0;
            for (auto e : d.entries)
                nonzero += e != f.zero();
            CHECK(nonzero == rank(g));
        }
    }
    CHECK_THROWS_AS(diagonalize_form(MatrixF::from_ints(Field::make(5), {{1, 2}, {3, 1}})), Error);
}

TEST_CASE("form_equivalent examples")
{
    const Field f5 = Field::make(5);
    auto diag = [&](std::vector<long long> e) {
        std::vector<std::vector<long long>> m(e.size(), std::vector<long long>(e.size(), 0));
        for (std::size_t i = 0; i < e.size(); ++i)
            m[i][i] = e[i];
        return diagonalize_form(MatrixF::from_ints(f5, m));
    };
    REQUIRE(!oracle::squares_mod(5).contains(2));
    CHECK(form_equivalent(diag({1, 1}), diag({4, 4})));
    CHECK_FALSE(form_equivalent(diag({1}), diag({2})));
    CHECK(form_equivalent(diag({1, 1, 1}), diagonalize_form(MatrixF::from_ints(f5, w_gram(3)))));
    CHECK_THROWS_AS(form_equivalent(diag({1, 1}), diag({1, 1, 1})), Error);
    CHECK_THROWS_AS(form_equivalent(diag({1, 0}), diag({1, 1})), Error);
}

TEST_CASE("isometry_to_standard examples")
{
    const Field f5 = Field::make(5);
    CHECK(isometry_to_standard(MatrixF::identity(f5, 4)) == MatrixF::identity(f5, 4));

    const MatrixF w = MatrixF::from_ints(f5, w_gram(3));
    const MatrixF t = isometry_to_standard(w);
    CHECK(t.transpose() * w * t == MatrixF::identity(f5, 3));

    const Field f3 = Field::make(3);
    REQUIRE(oracle::det(w_gram(4)) == 5);
    REQUIRE(oracle::squares_mod(3) == std::set<long long>{0, 1});
    try {
        isometry_to_standard(MatrixF::from_ints(f3, w_gram(4)));
        FAIL("expected NotIsometric");
    }
    catch (const NotIsometricError & e) {
        CHECK(e.kind() == ErrorKind::NotIsometric);
        CHECK(e.witness() == Elem{2});
    }
    CHECK_THROWS_AS(isometry_to_standard(MatrixF::from_ints(f3, {{1, 1}, {1, 1}})), Error);
}

TEST_CASE("isometry exists exactly for square determinants")
{
    std::mt19937_64 rng(3);
    for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}, {5u, 2u}}) {
        const Field f = Field::make(p, k);
        std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
        int tried = 0;
        while (tried < 60) {
            const std::size_t n = 1 + tried % 5;
            MatrixF g(f, n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = r; c < n; ++c)
                    g(r, c) = g(c, r) = Elem{pick(rng)};
            const Elem det = determinant(g);
            if (det == f.zero())
                continue;
            ++tried;
            if (f.square_class(det) == SquareClass::Square) {
                const MatrixF t = isometry_to_standard(g);
                CHECK(t.transpose() * g * t == MatrixF::identity(f, n));
            }
            else {
                CHECK_THROWS_AS(isometry_to_standard(g), NotIsometricError);
            }
        }
    }
}
