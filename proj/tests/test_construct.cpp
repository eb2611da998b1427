#include "doctest.h"

#include "ffdist/construct.hpp"
#include "oracles.hpp"

using namespace ffdist;

namespace {

std::vector<std::vector<long long>> as_ints(const PointSet & s)
{
    std::vector<std::vector<long long>> out;
    for (const auto & v : s.points()) {
        std::vector<long long> row;
        for (auto x : v)
            row.push_back(x.code);
        out.push_back(row);
    }
    return out;
}

ErrorKind kind_of(auto && fn)
{
    try {
        fn();
    }
    catch (const Error & e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("modular_equilateral examples")
{
    const Field f3 = Field::make(3), f5 = Field::make(5);

    const PointSet a = modular_equilateral(ModularParams::make(f3, 1));
    CHECK(as_ints(a) == std::vector<std::vector<long long>>{{0, 0}, {2, 1}, {1, 2}});
    CHECK(a.form() == Form::SumZeroHyperplane);
    CHECK(a.geometric_dim() == 1);
    CHECK(oracle::census(as_ints(a), 3) == std::map<long long, std::size_t>{{2, 3}});

    const PointSet b = modular_equilateral(ModularParams::make(f5, 3));
    const std::vector<std::vector<long long>> want{
        {0, 0, 0, 0}, {2, 1, 1, 1}, {1, 2, 1, 1}, {1, 1, 2, 1}, {1, 1, 1, 2}};
    CHECK(as_ints(b) == want);
    CHECK(oracle::census(want, 5) == std::map<long long, std::size_t>{{2, 10}});

    CHECK(kind_of([&] { ModularParams::make(f3, 2); }) == ErrorKind::NotModular);
    CHECK(kind_of([&] { ModularParams::make(f5, 3, f5.zero()); }) == ErrorKind::ZeroScale);
}

TEST_CASE("construction over an extension field")
{
    const Field f9 = Field::make(3, 2);
    const std::vector<std::uint32_t> t{0, 1};
    const Elem b = f9.from_coeffs(t);
    const auto params = ModularParams::make(f9, 4, b);
    const PointSet s = modular_equilateral(params);
    CHECK(s.size() == 6);
    const Classification c = classify(s);
    CHECK(c.kind == Classification::Kind::Equilateral);
    CHECK(c.values[0] == params.delta());
    CHECK(params.delta() == f9.from_int(-2));  // 2 t^2 = -2
}

TEST_CASE("midpoints examples")
{
    const Field f5 = Field::make(5), f3 = Field::make(3);
    const MidpointSet m = midpoints(modular_equilateral(ModularParams::make(f5, 3)));
    CHECK(m.points.size() == 10);
    CHECK(m.shared_value() == Elem{3});
    CHECK(m.disjoint_value() == Elem{1});
    const auto pts = as_ints(m.points);
    CHECK(pts[0] == std::vector<long long>{1, 3, 3, 3});
    CHECK(pts[1] == std::vector<long long>{3, 1, 3, 3});
    CHECK(oracle::dist2(pts[0], pts[1], 5) == 3);
    CHECK(m.type(0, 1) == PairType::SharedVertex);
    const auto census = oracle::census(pts, 5);
    CHECK(census == std::map<long long, std::size_t>{{1, 15}, {3, 30}});
    const Classification c = classify(m.points);
    CHECK(c.kind == Classification::Kind::TwoDistance);

    const std::vector<Vec> line{{Elem{0}}, {Elem{1}}, {Elem{2}}};
    const MidpointSet m3 = midpoints(PointSet(f3, 1, Form::Standard, line));
    CHECK(as_ints(m3.points) == std::vector<std::vector<long long>>{{2}, {1}, {0}});
    CHECK(classify(m3.points).kind == Classification::Kind::Equilateral);
    CHECK(classify(m3.points).values == std::vector<Elem>{Elem{1}});
    const LemmaReport r3 = check_midpoint_lemma(m3);
    CHECK(r3.disjoint_pairs == 0);
    CHECK(r3.shared_pairs == 3);

    const std::vector<Vec> uneven{{Elem{0}}, {Elem{1}}, {Elem{3}}};
    CHECK(kind_of([&] { midpoints(PointSet(f5, 1, Form::Standard, uneven)); }) == ErrorKind::NotEquilateral);
}

TEST_CASE("midpoint lemma holds with parallel and serial checks agreeing")
{
    for (std::uint32_t p : {3u, 5u, 7u, 11u})
        for (std::size_t d = p - 2; d <= 25; d += p)
            for (std::uint32_t b : {1u, 2u}) {
                const Field f = Field::make(p);
                const MidpointSet m = midpoints(modular_equilateral(ModularParams::make(f, d, Elem{b})));
                const LemmaReport par = check_midpoint_lemma(m), ser = check_midpoint_lemma_serial(m);
                CHECK(par == ser);
                CHECK(par.ok());
                const std::size_t n = d + 2;
                CHECK(par.shared_pairs == n * (n - 1) * (n - 2) / 2);
                CHECK(par.shared_pairs + par.disjoint_pairs == binomial(binomial(n, 2), 2));
            }
}

TEST_CASE("embed_standard examples")
{
    const Field f5 = Field::make(5), f3 = Field::make(3);
    const PointSet src = modular_equilateral(ModularParams::make(f5, 3));
    const PointSet e = embed_standard(src);
    CHECK(e.form() == Form::Standard);
    CHECK(e.ambient_dim() == 3);
    CHECK(oracle::census(as_ints(e), 5) == std::map<long long, std::size_t>{{2, 10}});
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j)
            CHECK(dist2(f5, e[i], e[j]) == dist2(f5, src[i], src[j]));
    const MidpointSet m = midpoints(e);
    CHECK(m.points.size() == blokhuis_bound(3));
    CHECK(oracle::census(as_ints(m.points), 5) == std::map<long long, std::size_t>{{1, 15}, {3, 30}});

    try {
        embed_standard(modular_equilateral(ModularParams::make(f3, 4)));
        FAIL("expected NotIsometric");
    }
    catch (const NotIsometricError & err) {
        CHECK(err.witness() == Elem{2});
    }
    CHECK_THROWS_AS(embed_standard(modular_equilateral(ModularParams::make(f3, 1))), NotIsometricError);
}

TEST_CASE("sharp_dimensions and admissible_chars")
{
    CHECK(sharp_dimensions(3, 20) == std::vector<std::size_t>{1, 4, 7, 10, 13, 16, 19});
    CHECK(sharp_dimensions(5, 20) == std::vector<std::size_t>{3, 8, 13, 18});
    CHECK(sharp_dimensions(7, 4).empty());
    CHECK(admissible_chars(6).empty());
    CHECK(admissible_chars(13) == std::vector<std::uint64_t>{3, 5});
    CHECK(admissible_chars(8) == std::vector<std::uint64_t>{5});
    for (std::size_t t = 2; t <= 10; ++t)
        CHECK(admissible_chars((std::size_t{1} << t) - 2).empty());
}
