#include "ffdist/geometry.hpp"

#include <algorithm>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffdist {

std::string_view to_string(Form form)
{
    return form == Form::Standard ? "standard" : "sum_zero_hyperplane";
}

std::string_view to_string(Classification::Kind kind)
{
    switch (kind) {
    case Classification::Kind::Equilateral: return "equilateral";
    case Classification::Kind::TwoDistance: return "two_distance";
    case Classification::Kind::Other: return "other";
    }
    return "?";
}

PointSet::PointSet(Field field, std::size_t ambient_dim, Form form, std::vector<Vec> points)
    : field_(std::move(field)), ambient_dim_(ambient_dim), form_(form), points_(std::move(points))
{
    if (ambient_dim_ == 0)
        throw Error(ErrorKind::InvalidPointSet, "ambient dimension must be positive");
    if (form_ == Form::SumZeroHyperplane && ambient_dim_ < 2)
        throw Error(ErrorKind::InvalidPointSet, "hyperplane sets need ambient dimension >= 2");
    std::set<Vec> seen;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const Vec & x = points_[i];
        if (x.size() != ambient_dim_)
            throw Error(ErrorKind::DimensionMismatch, "point " + std::to_string(i) + " has wrong length");
        Elem sum = field_.zero();
        for (auto c : x) {
            if (!field_.contains(c))
                throw Error(ErrorKind::InvalidPointSet, "coordinate outside the field");
            sum = field_.add(sum, c);
        }
        if (form_ == Form::SumZeroHyperplane && sum.code != 0)
            throw Error(ErrorKind::InvalidPointSet, "point " + std::to_string(i) + " leaves the sum-zero hyperplane");
        if (!seen.insert(x).second)
            throw Error(ErrorKind::InvalidPointSet, "point " + std::to_string(i) + " is a duplicate");
    }
}

std::size_t Spectrum::total() const
{
    std::size_t t = 0;
    for (const auto & [v, c] : values)
        t += c;
    return t;
}

Elem dist2(const Field & f, std::span<const Elem> x, std::span<const Elem> y)
{
    if (x.size() != y.size())
        throw Error(ErrorKind::DimensionMismatch, "dist2 of vectors of different length");
    Elem s = f.zero();
    for (std::size_t i = 0; i < x.size(); ++i)
        s = f.add(s, f.sqr(f.sub(x[i], y[i])));
    return s;
}

Spectrum spectrum_serial(const PointSet & s)
{
    if (s.size() < 2)
        throw Error(ErrorKind::TooFewPoints, "spectrum needs at least two points");
    Spectrum out;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            ++out.values[dist2(s.field(), s[i], s[j])];
    out.has_zero = out.values.contains(s.field().zero());
    return out;
}

Spectrum spectrum(const PointSet & s)
{
    if (s.size() < 2)
        throw Error(ErrorKind::TooFewPoints, "spectrum needs at least two points");
    Spectrum out;
    const auto n = static_cast<std::ptrdiff_t>(s.size());
#pragma omp parallel
    {
        std::map<Elem, std::size_t> local;
#pragma omp for schedule(dynamic, 8) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i)
            for (std::ptrdiff_t j = i + 1; j < n; ++j)
                ++local[dist2(s.field(), s[i], s[j])];
#pragma omp critical(ffdist_spectrum_merge)
        for (const auto & [v, c] : local)
            out.values[v] += c;
    }
    out.has_zero = out.values.contains(s.field().zero());
    return out;
}

Classification classify(const Spectrum & spec)
{
    Classification c;
    c.value_count = spec.values.size();
    c.has_zero = spec.has_zero;
    if (spec.has_zero)
        return c;
    if (c.value_count == 1) {
        c.kind = Classification::Kind::Equilateral;
        c.values = {spec.values.begin()->first};
    }
    else if (c.value_count == 2) {
        c.kind = Classification::Kind::TwoDistance;
        c.values = {spec.values.begin()->first, spec.values.rbegin()->first};
    }
    return c;
}

Classification classify(const PointSet & s) { return classify(spectrum(s)); }

MatrixF gram(const PointSet & s)
{
    if (s.size() < 2)
        throw Error(ErrorKind::TooFewPoints, "gram needs at least two points");
    const Field & f = s.field();
    const std::size_t n = s.size() - 1;
    const std::size_t m = s.ambient_dim();
    std::vector<Vec> v(n, Vec(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < m; ++c)
            v[i][c] = f.sub(s[i + 1][c], s[0][c]);
    MatrixF g(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Elem acc = f.zero();
            for (std::size_t c = 0; c < m; ++c)
                acc = f.add(acc, f.mul(v[i][c], v[j][c]));
            g(i, j) = acc;
            g(j, i) = acc;
        }
    return g;
}

std::size_t equilateral_upper(const Field & f, std::size_t d)
{
    if (d == 0)
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    return (d + 2) % f.p() == 0 ? d + 2 : d + 1;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

std::uint64_t blokhuis_bound(std::size_t d)
{
    if (d == 0)
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    return binomial(d + 2, 2);
}

}  // namespace ffdist
