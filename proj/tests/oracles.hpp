#pragma once

// Independent reference computations used to derive frozen expected values.
// Everything here works on plain integers and never calls into the library's
// arithmetic, so a bug in the implementation cannot hide behind its oracle.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Poly = std::vector<long long>;  // little-endian coefficients mod p

inline long long mod(long long a, long long p) { return ((a % p) + p) % p; }

/// Schoolbook product reduced modulo a monic polynomial.
inline Poly polymulmod(const Poly & a, const Poly & b, const Poly & monic, long long p)
{
    const std::size_t k = monic.size() - 1;
    Poly r(2 * k, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod(r[i + j] + a[i] * b[j], p);
    for (std::size_t i = r.size(); i-- > k;) {
        const long long c = r[i];
        for (std::size_t j = 0; j <= k; ++j)
            r[i - k + j] = mod(r[i - k + j] - c * monic[j], p);
    }
    r.resize(k);
    return r;
}

/// Polynomials of degree 2 or 3 are irreducible iff they have no root.
inline bool has_root(const Poly & f, long long p)
{
    for (long long x = 0; x < p; ++x) {
        long long v = 0, xp = 1;
        for (auto c : f) {
            v = mod(v + c * xp, p);
            xp = mod(xp * x, p);
        }
        if (v == 0)
            return true;
    }
    return false;
}

/// Squares of F_p by enumeration.
inline std::set<long long> squares_mod(long long p)
{
    std::set<long long> s;
    for (long long x = 0; x < p; ++x)
        s.insert(x * x % p);
    return s;
}

/// Integer determinant by cofactor expansion (small matrices only).
inline long long det(const std::vector<std::vector<long long>> & m)
{
    const std::size_t n = m.size();
    if (n == 1)
        return m[0][0];
    long long total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<long long>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<long long> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c)
                    row.push_back(m[r][j]);
            minor.push_back(row);
        }
        total += (c % 2 == 0 ? 1 : -1) * m[0][c] * det(minor);
    }
    return total;
}

/// Squared distance of integer vectors reduced mod p.
inline long long dist2(const std::vector<long long> & x, const std::vector<long long> & y, long long p)
{
    long long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += (x[i] - y[i]) * (x[i] - y[i]);
    return mod(s, p);
}

/// All of F_p^d as integer vectors.
inline std::vector<std::vector<long long>> space(long long p, std::size_t d)
{
    std::vector<std::vector<long long>> out{{}};
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::vector<long long>> next;
        for (const auto & v : out)
            for (long long x = 0; x < p; ++x) {
                auto w = v;
                w.push_back(x);
                next.push_back(w);
            }
        out = std::move(next);
    }
    return out;
}

/// Pairwise distance census of integer points mod p.
inline std::map<long long, std::size_t> census(const std::vector<std::vector<long long>> & pts, long long p)
{
    std::map<long long, std::size_t> c;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            ++c[dist2(pts[i], pts[j], p)];
    return c;
}

/// Largest subset of F_p^d whose pairwise distances all lie in `allowed`
/// (nonzero), by exhaustive subset growth. Only for spaces of <= 27 points.
inline std::size_t max_subset(long long p, std::size_t d, const std::set<long long> & allowed)
{
    const auto pts = space(p, d);
    const std::size_t n = pts.size();
    std::size_t best = 0;
    std::vector<std::size_t> cur;
    auto rec = [&](auto && self, std::size_t start) -> void {
        best = std::max(best, cur.size());
        for (std::size_t v = start; v < n; ++v) {
            bool ok = true;
            for (auto u : cur)
                ok = ok && allowed.count(dist2(pts[u], pts[v], p));
            if (!ok)
                continue;
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return best;
}

}  // namespace oracle
