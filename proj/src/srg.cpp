#include "ffdist/srg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ffdist/linalg.hpp"

namespace ffdist {

using boost::multiprecision::cpp_rational;

Graph Graph::complete(std::size_t n)
{
    Graph g(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            g.add_edge(a, b);
    return g;
}

Graph Graph::triangular(std::size_t n)
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);
    Graph g(pairs.size());
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            const auto [i, j] = pairs[a];
            const auto [k, l] = pairs[b];
            if (i == k || i == l || j == k || j == l)
                g.add_edge(a, b);
        }
    return g;
}

void Graph::add_edge(std::size_t a, std::size_t b)
{
    if (a == b)
        throw Error(ErrorKind::InvalidArgument, "loops are not allowed");
    adj_[a * n_ + b] = 1;
    adj_[b * n_ + a] = 1;
}

std::size_t Graph::degree(std::size_t a) const
{
    std::size_t d = 0;
    for (std::size_t b = 0; b < n_; ++b)
        d += adj_[a * n_ + b];
    return d;
}

std::size_t Graph::edge_count() const
{
    std::size_t e = 0;
    for (std::size_t a = 0; a < n_; ++a)
        e += degree(a);
    return e / 2;
}

Graph midpoint_graph(const PointSet & mids, Elem delta)
{
    const Field & f = mids.field();
    const Elem shared = f.div(delta, f.from_int(4));
    const Elem disjoint = f.div(delta, f.from_int(2));
    Graph g(mids.size());
    for (std::size_t a = 0; a < mids.size(); ++a)
        for (std::size_t b = a + 1; b < mids.size(); ++b) {
            const Elem v = dist2(f, mids[a], mids[b]);
            if (v == shared)
                g.add_edge(a, b);
            else if (v != disjoint)
                throw Error(ErrorKind::BadDistanceValue, "midpoints " + std::to_string(a) + " and "
                                                             + std::to_string(b) + " at squared distance "
                                                             + std::to_string(v.code));
        }
    return g;
}

SrgParams expected_params(std::size_t n)
{
    if (n <= 3)
        throw Error(ErrorKind::TooSmall, "triangular graph parameters need n >= 4");
    const auto sn = static_cast<std::int64_t>(n);
    SrgParams p;
    p.v = n * (n - 1) / 2;
    p.k = 2 * (n - 2);
    p.lambda = n - 2;
    p.mu = 4;
    p.eigenvalues = {
        {2 * (sn - 2), 1},
        {sn - 4, n - 1},
        {-2, n * (n - 3) / 2},
    };
    return p;
}

namespace {

// Products of entries below 2^31 stay within 64 bits.
constexpr std::uint32_t rank_prime = 2147483647;

std::int64_t isqrt_exact(std::int64_t x)
{
    if (x < 0)
        return -1;
    auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(x))));
    while (r * r > x)
        --r;
    while ((r + 1) * (r + 1) <= x)
        ++r;
    return r * r == x ? r : -1;
}

std::string at(std::size_t a, std::size_t b)
{
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

std::size_t rank_over_q(const Graph & g, std::int64_t theta)
{
    const std::size_t v = g.size();
    std::vector<std::vector<cpp_rational>> m(v, std::vector<cpp_rational>(v));
    for (std::size_t a = 0; a < v; ++a)
        for (std::size_t b = 0; b < v; ++b)
            m[a][b] = (g.adjacent(a, b) ? 1 : 0) - (a == b ? theta : 0);
    std::size_t r = 0;
    for (std::size_t c = 0; c < v && r < v; ++c) {
        std::size_t piv = r;
        while (piv < v && m[piv][c] == 0)
            ++piv;
        if (piv == v)
            continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < v; ++i) {
            if (m[i][c] == 0)
                continue;
            const cpp_rational factor = m[i][c] / m[r][c];
            for (std::size_t j = c; j < v; ++j)
                m[i][j] -= factor * m[r][j];
        }
        ++r;
    }
    return r;
}

std::size_t rank_mod_prime(const Graph & g, std::int64_t theta)
{
    const Field f = Field::make(rank_prime);
    const std::size_t v = g.size();
    MatrixF m(f, v, v);
    for (std::size_t a = 0; a < v; ++a)
        for (std::size_t b = 0; b < v; ++b)
            m(a, b) = f.from_int((g.adjacent(a, b) ? 1 : 0) - (a == b ? theta : 0));
    return rank(m);
}

SrgReport srg_check(const Graph & g, const SrgParams & params)
{
    SrgReport report;
    const std::size_t v = g.size();
    if (v != params.v) {
        report.failure = "vertex count " + std::to_string(v) + " != v=" + std::to_string(params.v);
        return report;
    }
    for (std::size_t a = 0; a < v; ++a) {
        if (g.adjacent(a, a)) {
            report.failure = "loop at vertex " + std::to_string(a);
            return report;
        }
        for (std::size_t b = a + 1; b < v; ++b)
            if (g.adjacent(a, b) != g.adjacent(b, a)) {
                report.failure = "asymmetric adjacency at " + at(a, b);
                return report;
            }
    }
    for (std::size_t a = 0; a < v; ++a)
        if (g.degree(a) != params.k) {
            report.failure = "vertex " + std::to_string(a) + " has degree " + std::to_string(g.degree(a))
                             + " != k=" + std::to_string(params.k);
            return report;
        }

    // A^2 = k I + lambda A + mu (J - I - A), entrywise.
    const auto sv = static_cast<std::ptrdiff_t>(v);
    std::vector<std::int64_t> sq(v * v, 0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t a = 0; a < sv; ++a)
        for (std::size_t b = 0; b < v; ++b) {
            std::int64_t s = 0;
            for (std::size_t c = 0; c < v; ++c)
                s += g.adjacent(static_cast<std::size_t>(a), c) && g.adjacent(c, b);
            sq[static_cast<std::size_t>(a) * v + b] = s;
        }
    for (std::size_t a = 0; a < v; ++a)
        for (std::size_t b = 0; b < v; ++b) {
            std::int64_t want;
            if (a == b)
                want = static_cast<std::int64_t>(params.k);
            else if (g.adjacent(a, b))
                want = static_cast<std::int64_t>(params.lambda);
            else
                want = static_cast<std::int64_t>(params.mu);
            if (sq[a * v + b] != want) {
                std::ostringstream os;
                os << "A^2 identity fails at " << at(a, b) << ": " << sq[a * v + b] << " != " << want;
                report.failure = os.str();
                return report;
            }
        }

    // With the identity above, every eigenvalue is k or a root of
    // x^2 - (lambda - mu) x - (k - mu), so the true multiplicities of those
    // values sum to v. Ranks mod a prime never exceed ranks over Q, so
    // v - rank_p bounds each multiplicity from above; when the bounds also
    // sum to v they are exact. Otherwise fall back to rational elimination.
    const auto k = static_cast<std::int64_t>(params.k), lambda = static_cast<std::int64_t>(params.lambda),
               mu = static_cast<std::int64_t>(params.mu);
    const std::int64_t disc = (lambda - mu) * (lambda - mu) + 4 * (k - mu);
    const std::int64_t root = isqrt_exact(disc);
    std::set<std::int64_t> claimed;
    for (const auto & ev : params.eigenvalues)
        claimed.insert(ev.value);
    if (claimed.size() != params.eigenvalues.size()) {
        report.failure = "claimed eigenvalues are not distinct";
        return report;
    }
    if (root < 0 || (lambda - mu + root) % 2 != 0) {
        report.failure = "parameters force non-integral eigenvalues";
        return report;
    }
    for (std::int64_t theta : {k, (lambda - mu + root) / 2, (lambda - mu - root) / 2})
        if (!claimed.contains(theta)) {
            report.failure = "eigenvalue " + std::to_string(theta) + " forced by the parameters is not claimed";
            return report;
        }

    std::vector<std::size_t> mults;
    std::size_t total = 0;
    for (const auto & ev : params.eigenvalues) {
        mults.push_back(v - rank_mod_prime(g, ev.value));
        total += mults.back();
    }
    if (total != v) {
        mults.clear();
        total = 0;
        for (const auto & ev : params.eigenvalues) {
            mults.push_back(v - rank_over_q(g, ev.value));
            total += mults.back();
        }
    }
    for (std::size_t i = 0; i < params.eigenvalues.size(); ++i) {
        const auto & ev = params.eigenvalues[i];
        report.measured.push_back({ev.value, mults[i]});
        if (mults[i] != ev.multiplicity) {
            report.failure = "eigenvalue " + std::to_string(ev.value) + " has multiplicity "
                             + std::to_string(mults[i]) + " != " + std::to_string(ev.multiplicity);
            return report;
        }
    }
    if (total != v) {
        report.failure = "eigenvalue multiplicities sum to " + std::to_string(total) + " != v";
        return report;
    }
    report.passed = true;
    return report;
}

CollapseReport eigen_collapse(std::size_t n, std::uint32_t p)
{
    if (n < 4)
        throw Error(ErrorKind::TooSmall, "eigen_collapse needs n >= 4");
    if (p < 3 || !is_prime(p))
        throw Error(ErrorKind::InvalidArgument, "p must be an odd prime");
    auto mod = [p](std::int64_t x) {
        const auto sp = static_cast<std::int64_t>(p);
        return ((x % sp) + sp) % sp;
    };
    const auto sn = static_cast<std::int64_t>(n);
    CollapseReport r;
    r.n = n;
    r.p = p;
    r.top = 2 * (sn - 2);
    r.middle = sn - 4;
    r.bottom = -2;
    r.modular = n % p == 0;
    r.top_two_coincide = mod(r.top) == mod(r.middle);
    r.third_distinct = mod(r.middle) != mod(r.bottom);
    if (r.top_two_coincide != r.modular)
        throw std::logic_error("top eigenvalues differ by n, so they coincide mod p iff p | n");
    if (r.modular && !r.third_distinct)
        throw std::logic_error("third eigenvalue collapsed in the modular regime");
    return r;
}

}  // namespace ffdist
