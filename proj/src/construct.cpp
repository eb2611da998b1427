#include "ffdist/construct.hpp"

#include <stdexcept>

namespace ffdist {

ModularParams ModularParams::make(Field field, std::size_t d, Elem b)
{
    if (d == 0)
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    if ((d + 2) % field.p() != 0)
        throw Error(ErrorKind::NotModular, "p does not divide d+2 (p=" + std::to_string(field.p())
                                               + ", d=" + std::to_string(d) + ")");
    if (!field.contains(b))
        throw Error(ErrorKind::InvalidArgument, "scale b is not a field element");
    if (b.code == 0)
        throw Error(ErrorKind::ZeroScale, "scale b must be nonzero");
    return ModularParams(std::move(field), d, b);
}

PointSet modular_equilateral(const ModularParams & params)
{
    const Field & f = params.field();
    const std::size_t m = params.ambient_dim();
    const Elem b = params.b();
    const Elem two_b = f.add(b, b);
    std::vector<Vec> pts;
    pts.reserve(m + 1);
    pts.emplace_back(m, f.zero());
    for (std::size_t i = 0; i < m; ++i) {
        Vec x(m, b);
        x[i] = two_b;
        pts.push_back(std::move(x));
    }
    return PointSet(f, m, Form::SumZeroHyperplane, std::move(pts));
}

PairType MidpointSet::type(std::size_t a, std::size_t b) const
{
    const auto & e = edges.at(a);
    const auto & g = edges.at(b);
    const bool shared = e.i == g.i || e.i == g.j || e.j == g.i || e.j == g.j;
    return shared ? PairType::SharedVertex : PairType::DisjointEdges;
}

Elem MidpointSet::shared_value() const
{
    const Field & f = points.field();
    return f.div(delta, f.from_int(4));
}

Elem MidpointSet::disjoint_value() const
{
    const Field & f = points.field();
    return f.div(delta, f.from_int(2));
}

MidpointSet midpoints(const PointSet & s)
{
    if (s.size() < 2)
        throw Error(ErrorKind::TooFewPoints, "midpoints need at least two points");
    const Classification c = classify(s);
    if (c.kind != Classification::Kind::Equilateral)
        throw Error(ErrorKind::NotEquilateral, "midpoint construction needs an equilateral source");
    const Field & f = s.field();
    const Elem half = f.inv(f.from_int(2));
    const std::size_t n = s.size();
    const std::size_t m = s.ambient_dim();
    std::vector<Vec> pts;
    std::vector<MidpointIndex> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec x(m);
            for (std::size_t t = 0; t < m; ++t)
                x[t] = f.mul(half, f.add(s[i][t], s[j][t]));
            pts.push_back(std::move(x));
            edges.push_back({i, j});
        }
    return MidpointSet{PointSet(f, m, s.form(), std::move(pts)), std::move(edges), c.values.front()};
}

namespace {

inline void tally(const MidpointSet & mids, std::size_t a, std::size_t b, Elem shared, Elem disjoint,
                  LemmaReport & r)
{
    const Elem v = dist2(mids.points.field(), mids.points[a], mids.points[b]);
    if (mids.type(a, b) == PairType::SharedVertex) {
        ++r.shared_pairs;
        r.violations += v != shared;
    }
    else {
        ++r.disjoint_pairs;
        r.violations += v != disjoint;
    }
}

}  // namespace

LemmaReport check_midpoint_lemma_serial(const MidpointSet & mids)
{
    LemmaReport r;
    const Elem shared = mids.shared_value(), disjoint = mids.disjoint_value();
    const std::size_t v = mids.points.size();
    for (std::size_t a = 0; a < v; ++a)
        for (std::size_t b = a + 1; b < v; ++b)
            tally(mids, a, b, shared, disjoint, r);
    return r;
}

LemmaReport check_midpoint_lemma(const MidpointSet & mids)
{
    const Elem shared = mids.shared_value(), disjoint = mids.disjoint_value();
    const auto v = static_cast<std::ptrdiff_t>(mids.points.size());
    std::size_t shared_pairs = 0, disjoint_pairs = 0, violations = 0;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : shared_pairs, disjoint_pairs, violations)
    for (std::ptrdiff_t a = 0; a < v; ++a) {
        LemmaReport local;
        for (std::ptrdiff_t b = a + 1; b < v; ++b)
            tally(mids, static_cast<std::size_t>(a), static_cast<std::size_t>(b), shared, disjoint, local);
        shared_pairs += local.shared_pairs;
        disjoint_pairs += local.disjoint_pairs;
        violations += local.violations;
    }
    return LemmaReport{shared_pairs, disjoint_pairs, violations};
}

PointSet embed_standard(const PointSet & s)
{
    if (s.form() != Form::SumZeroHyperplane)
        throw Error(ErrorKind::InvalidArgument, "embed_standard expects a sum-zero hyperplane set");
    const Field & f = s.field();
    const std::size_t m = s.ambient_dim();
    const std::size_t d = m - 1;

    // Gram matrix of w_i = e_i - e_{i+1}.
    MatrixF g(f, d, d);
    for (std::size_t i = 0; i < d; ++i) {
        g(i, i) = f.from_int(2);
        if (i + 1 < d) {
            g(i, i + 1) = f.from_int(-1);
            g(i + 1, i) = f.from_int(-1);
        }
    }
    const MatrixF t = isometry_to_standard(g);

    // Columns of u are an orthonormal basis of the hyperplane in ambient coordinates.
    MatrixF u(f, m, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) {
            u(i, j) = f.add(u(i, j), t(i, j));
            u(i + 1, j) = f.sub(u(i + 1, j), t(i, j));
        }

    std::vector<Vec> pts;
    pts.reserve(s.size());
    for (const Vec & x : s.points()) {
        Vec y(d, f.zero());
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t c = 0; c < m; ++c)
                y[j] = f.add(y[j], f.mul(x[c], u(c, j)));
        pts.push_back(std::move(y));
    }
    PointSet out(f, d, Form::Standard, std::move(pts));

    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (dist2(f, s[i], s[j]) != dist2(f, out[i], out[j]))
                throw std::logic_error("embedding failed to preserve a squared distance");
    return out;
}

std::vector<std::size_t> sharp_dimensions(std::uint32_t p, std::size_t d_max)
{
    if (p < 3 || !is_prime(p))
        throw Error(ErrorKind::InvalidArgument, "p must be an odd prime");
    std::vector<std::size_t> out;
    for (std::size_t d = p - 2; d <= d_max; d += p)
        out.push_back(d);
    return out;
}

std::vector<std::uint64_t> admissible_chars(std::size_t d)
{
    if (d == 0)
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    std::uint64_t n = d + 2;
    while (n % 2 == 0)
        n /= 2;
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 3; f * f <= n; f += 2)
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0)
                n /= f;
        }
    if (n > 1)
        out.push_back(n);
    return out;
}

}  // namespace ffdist
