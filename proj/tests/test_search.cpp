#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <random>

#include "ffdist/search.hpp"
#include "oracles.hpp"

using namespace ffdist;

namespace {

SearchProblem problem(std::uint32_t p, std::size_t d, SearchMode mode, bool canonical = false)
{
    SearchProblem prob{Field::make(p)};
    prob.d = d;
    prob.mode = mode;
    prob.canonical = canonical;
    return prob;
}

/// Largest subset using at most two nonzero distance values, by exhaustive subset growth.
std::size_t oracle_two_distance(long long p, std::size_t d)
{
    std::size_t best = 0;
    for (long long a = 1; a < p; ++a)
        for (long long b = a + 1; b < p; ++b)
            best = std::max(best, oracle::max_subset(p, d, {a, b}));
    return best;
}

std::size_t oracle_equilateral(long long p, std::size_t d)
{
    std::size_t best = 0;
    for (long long a = 1; a < p; ++a)
        best = std::max(best, oracle::max_subset(p, d, {a}));
    return best;
}

BitGraph random_graph(std::size_t n, double density, std::mt19937_64 & rng)
{
    std::bernoulli_distribution coin(density);
    BitGraph g(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (coin(rng))
                g.add_edge(a, b);
    return g;
}

bool is_clique(const BitGraph & g, const std::vector<std::size_t> & c)
{
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (!g.adjacent(c[i], c[j]))
                return false;
    return true;
}

}  // namespace

TEST_CASE("clique engine agrees with reference on random graphs")
{
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 5 + trial % 70;
        const double density = 0.2 + 0.1 * (trial % 7);
        const BitGraph g = random_graph(n, density, rng);
        const CliqueResult ref = max_clique_reference(g);
        const CliqueResult fast = max_clique(g, CliqueBudget{});
        CHECK(fast.exhausted);
        CHECK(fast.clique.size() == ref.clique.size());
        CHECK(is_clique(g, fast.clique));
        CHECK(std::is_sorted(fast.clique.begin(), fast.clique.end()));
        const CliqueResult lex = lex_first_clique(g, ref.clique.size(), CliqueBudget{});
        CHECK(lex.clique.size() == ref.clique.size());
        CHECK(is_clique(g, lex.clique));
        CHECK(lex.clique <= fast.clique);
        CHECK(lex_first_clique(g, ref.clique.size() + 1, CliqueBudget{}).clique.empty());
    }
}

TEST_CASE("clique budget stops the search")
{
    std::mt19937_64 rng(1);
    const BitGraph g = random_graph(200, 0.9, rng);
    const CliqueResult r = max_clique(g, CliqueBudget{60.0, 50});
    CHECK_FALSE(r.exhausted);
    CHECK(is_clique(g, r.clique));
}

TEST_CASE("enumerate_space is lexicographic")
{
    const auto v = enumerate_space(Field::make(3), 2);
    REQUIRE(v.size() == 9);
    CHECK(std::is_sorted(v.begin(), v.end()));
    CHECK(v[1] == Vec{Elem{0}, Elem{1}});
    CHECK_THROWS_AS(enumerate_space(Field::make(101), 2), Error);
}

TEST_CASE("value subproblems cover every value-set orbit")
{
    for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u}) {
        SearchProblem prob = problem(q, 1, SearchMode::TwoDistance);
        const auto reps = value_subproblems(prob);
        // Oracle: orbits of unordered pairs {a, b} under scaling by nonzero squares.
        const auto squares = oracle::squares_mod(q);
        std::set<std::set<long long>> seen;
        std::size_t orbits = 0;
        for (long long a = 1; a < q; ++a)
            for (long long b = a + 1; b < q; ++b) {
                if (seen.contains({a, b}))
                    continue;
                ++orbits;
                for (auto s : squares)
                    if (s != 0)
                        seen.insert({a * s % q, b * s % q});
            }
        CHECK(reps.size() == orbits);
        prob.mode = SearchMode::Equilateral;
        CHECK(value_subproblems(prob).size() == 2);
    }
}

TEST_CASE("max_equilateral examples")
{
    const SearchResult a = run_search(problem(3, 1, SearchMode::Equilateral, true));
    CHECK(a.max_size == 3);
    CHECK(a.exhausted);
    CHECK(a.witness.points() == std::vector<Vec>{{Elem{0}}, {Elem{1}}, {Elem{2}}});
    CHECK(a.comparison == BoundComparison::Attained);

    const SearchResult b = run_search(problem(5, 1, SearchMode::Equilateral));
    CHECK(b.max_size == 2);
    CHECK(b.exhausted);

    const SearchResult c = run_search(problem(3, 2, SearchMode::Equilateral));
    CHECK(c.max_size == 3);
    CHECK(c.exhausted);
    REQUIRE(c.witness_class);
    CHECK(c.witness_class->kind == Classification::Kind::Equilateral);
}

TEST_CASE("max_two_distance examples")
{
    const SearchResult a = run_search(problem(3, 1, SearchMode::TwoDistance));
    CHECK(a.max_size == 3);
    CHECK(a.comparison == BoundComparison::Attained);

    const SearchResult b = run_search(problem(3, 2, SearchMode::TwoDistance));
    CHECK(b.max_size == 9);
    CHECK(b.exhausted);
    CHECK(b.comparison == BoundComparison::Exceeded);
    REQUIRE(b.witness_class);
    CHECK(b.witness_class->kind == Classification::Kind::TwoDistance);
    CHECK(b.witness_class->values == std::vector<Elem>{Elem{1}, Elem{2}});
    CHECK(b.both_values_occur);

    const SearchResult c = run_search(problem(5, 1, SearchMode::TwoDistance));
    CHECK(c.max_size == oracle_two_distance(5, 1));
    CHECK(c.max_size == 5);
    CHECK(c.exhausted);
}

TEST_CASE("search maxima agree with the subset oracle")
{
    for (auto [p, d] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 1u}, {7u, 1u}, {11u, 1u}, {5u, 2u}}) {
        CAPTURE(p);
        CAPTURE(d);
        const auto eq = run_search(problem(p, d, SearchMode::Equilateral));
        CHECK(eq.max_size == oracle_equilateral(p, d));
        CHECK(eq.max_size <= equilateral_upper(Field::make(p), d));
        const auto td = run_search(problem(p, d, SearchMode::TwoDistance));
        CHECK(td.max_size == oracle_two_distance(p, d));
        const auto canon = run_search(problem(p, d, SearchMode::TwoDistance, true));
        CHECK(canon.max_size == td.max_size);
    }
    CHECK(run_search(problem(3, 3, SearchMode::Equilateral)).max_size == oracle_equilateral(3, 3));
}

TEST_CASE("fixed values restrict the search")
{
    SearchProblem prob = problem(3, 2, SearchMode::TwoDistance);
    prob.fixed_pair = std::pair{Elem{1}, Elem{2}};
    CHECK(run_search(prob).max_size == 9);
    prob.mode = SearchMode::Equilateral;
    prob.fixed_delta = Elem{2};
    CHECK(run_search(prob).max_size == oracle::max_subset(3, 2, {2}));
    prob.fixed_delta = Elem{0};
    CHECK_THROWS_AS(run_search(prob), Error);
}

TEST_CASE("canonical search is deterministic across thread counts")
{
    SearchProblem a = problem(5, 2, SearchMode::TwoDistance, true);
    SearchProblem b = a;
    b.threads = 4;
    CHECK(run_search(a).witness.points() == run_search(b).witness.points());
}

TEST_CASE("brute_force_classify_all examples")
{
    const Field f3 = Field::make(3), f5 = Field::make(5);
    CHECK(brute_force_classify_all(f3, 1, 3).equilateral == 1);
    const Census c2 = brute_force_classify_all(f3, 1, 2);
    CHECK(c2.equilateral == 3);
    CHECK(c2.total == 3);
    CHECK(brute_force_classify_all(f5, 1, 3).equilateral == 0);
    CHECK_THROWS_AS(brute_force_classify_all(Field::make(101), 2, 3), Error);
}

TEST_CASE("golden files match recomputed maxima")
{
    const auto dir = golden_dir();
    std::size_t found = 0;
    for (auto [p, d] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 1u}, {3u, 4u}, {5u, 2u}, {7u, 1u}})
        for (auto mode : {SearchMode::Equilateral, SearchMode::TwoDistance}) {
            const auto rec = load_golden(dir, p, d, mode);
            if (!rec)
                continue;
            ++found;
            CHECK(rec->q == p);
            CHECK(rec->d == d);
            CHECK(run_search(problem(p, d, mode)).max_size == rec->max_size);
        }
    CHECK(found > 0);
}

TEST_CASE("golden round trip")
{
    const auto dir = std::filesystem::temp_directory_path() / "ffdist_golden_test";
    std::filesystem::create_directories(dir);
    store_golden(dir, GoldenRecord{9, 2, SearchMode::TwoDistance, 42});
    const auto back = load_golden(dir, 9, 2, SearchMode::TwoDistance);
    REQUIRE(back);
    CHECK(back->max_size == 42);
    CHECK(golden_path(dir, 9, 2, SearchMode::TwoDistance).filename() == "q9_d2_two_distance.json");
    CHECK_FALSE(load_golden(dir, 9, 2, SearchMode::Equilateral));
    std::filesystem::remove_all(dir);
}

TEST_CASE("standard F_3^4 holds at most 4 equidistant points")
{
    // The 5- and 6-point Gram forms have nonsquare discriminant over F_3, so
    // the rank bound of 6 is not reached in standard coordinates.
    const auto r = run_search(problem(3, 4, SearchMode::Equilateral));
    CHECK(r.exhausted);
    CHECK(r.max_size == 4);
    CHECK(r.max_size == oracle_equilateral(3, 4));
    CHECK(r.reference_bound == 6);
}
