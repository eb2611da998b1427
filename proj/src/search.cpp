#include "ffdist/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

#ifndef FFDIST_DEFAULT_GOLDEN_DIR
#define FFDIST_DEFAULT_GOLDEN_DIR "golden"
#endif

namespace ffdist {

std::string_view to_string(SearchMode mode)
{
    return mode == SearchMode::Equilateral ? "equilateral" : "two_distance";
}

SearchMode parse_search_mode(std::string_view text)
{
    if (text == "equilateral")
        return SearchMode::Equilateral;
    if (text == "two_distance" || text == "two-distance")
        return SearchMode::TwoDistance;
    throw Error(ErrorKind::InvalidArgument, "unknown search mode '" + std::string(text) + "'");
}

std::string_view to_string(BoundComparison c)
{
    switch (c) {
    case BoundComparison::Attained: return "attained";
    case BoundComparison::Exceeded: return "exceeded";
    case BoundComparison::Unreached: return "unreached";
    }
    return "?";
}

BoundComparison compare_to_bound(std::uint64_t size, std::uint64_t bound)
{
    if (size == bound)
        return BoundComparison::Attained;
    return size > bound ? BoundComparison::Exceeded : BoundComparison::Unreached;
}

namespace {

std::uint64_t checked_space_size(const Field & f, std::size_t d, std::uint64_t limit)
{
    if (d == 0)
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < d; ++i) {
        n *= f.q();
        if (n > limit)
            throw Error(ErrorKind::TooLarge, "q^d exceeds " + std::to_string(limit));
    }
    return n;
}

// Vectors of F_q^d indexed lexicographically, with cached norms.
class Space {
public:
    Space(const Field & f, std::size_t d) : f_(f), d_(d), n_(checked_space_size(f, d, search_ceiling))
    {
        weight_.assign(d_, 1);
        for (std::size_t j = d_ - 1; j-- > 0;)
            weight_[j] = weight_[j + 1] * f_.q();
        coords_.resize(n_ * d_);
        norm_.resize(n_);
        for (std::size_t v = 0; v < n_; ++v) {
            std::size_t rest = v;
            Elem s = f_.zero();
            for (std::size_t j = 0; j < d_; ++j) {
                const Elem c{static_cast<std::uint32_t>(rest / weight_[j])};
                rest %= weight_[j];
                coords_[v * d_ + j] = c;
                s = f_.add(s, f_.sqr(c));
            }
            norm_[v] = s;
        }
    }

    std::size_t size() const noexcept { return n_; }
    Elem norm(std::size_t v) const noexcept { return norm_[v]; }
    Vec point(std::size_t v) const { return Vec(coords_.begin() + v * d_, coords_.begin() + (v + 1) * d_); }

    std::size_t difference(std::size_t a, std::size_t b) const noexcept
    {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < d_; ++j)
            idx += f_.sub(coords_[a * d_ + j], coords_[b * d_ + j]).code * weight_[j];
        return idx;
    }

private:
    const Field & f_;
    std::size_t d_;
    std::size_t n_;
    std::vector<std::size_t> weight_;
    std::vector<Elem> coords_;
    std::vector<Elem> norm_;
};

struct CandidateGraph {
    std::vector<std::size_t> vertices;  // space indices, ascending
    BitGraph graph;
};

// Neighbourhood of the origin in the distance graph restricted to `values`.
CandidateGraph build_candidates(const Space & space, const Field & f, const std::vector<Elem> & values)
{
    std::vector<std::uint8_t> allowed(f.q(), 0);
    for (auto v : values)
        allowed[v.code] = 1;
    std::vector<std::size_t> verts;
    for (std::size_t v = 1; v < space.size(); ++v)
        if (allowed[space.norm(v).code])
            verts.push_back(v);
    BitGraph g(verts.size());
    const auto n = static_cast<std::ptrdiff_t>(verts.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t a = 0; a < n; ++a)
        for (std::ptrdiff_t b = 0; b < n; ++b)
            if (a != b && allowed[space.norm(space.difference(verts[a], verts[b])).code])
                g.set_arc(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    return CandidateGraph{std::move(verts), std::move(g)};
}

std::vector<std::size_t> witness_indices(const CandidateGraph & cg, const std::vector<std::size_t> & clique)
{
    std::vector<std::size_t> out{0};
    for (auto c : clique)
        out.push_back(cg.vertices[c]);
    std::sort(out.begin(), out.end());
    return out;
}

Elem square_class_rep(const Field & f, Elem x, Elem nonsquare)
{
    return f.square_class(x) == SquareClass::Square ? f.one() : nonsquare;
}

std::vector<Elem> sorted_pair(Elem a, Elem b)
{
    return a < b ? std::vector<Elem>{a, b} : std::vector<Elem>{b, a};
}

}  // namespace

std::vector<Vec> enumerate_space(const Field & f, std::size_t d)
{
    const Space space(f, d);
    std::vector<Vec> out;
    out.reserve(space.size());
    for (std::size_t v = 0; v < space.size(); ++v)
        out.push_back(space.point(v));
    return out;
}

std::vector<std::vector<Elem>> value_subproblems(const SearchProblem & prob)
{
    const Field & f = prob.field;
    auto check = [&](Elem v) {
        if (!f.contains(v) || v.code == 0)
            throw Error(ErrorKind::InvalidArgument, "distance values must be nonzero field elements");
    };
    if (prob.mode == SearchMode::Equilateral) {
        if (prob.fixed_delta) {
            check(*prob.fixed_delta);
            return {{*prob.fixed_delta}};
        }
        if (prob.canonical) {
            std::vector<std::vector<Elem>> out;
            for (std::uint32_t c = 1; c < f.q(); ++c)
                out.push_back({Elem{c}});
            return out;
        }
        // x -> lambda x scales every distance by lambda^2.
        return {{f.one()}, {f.first_nonsquare()}};
    }

    if (prob.fixed_pair) {
        const auto [a, b] = *prob.fixed_pair;
        check(a);
        check(b);
        if (a == b)
            throw Error(ErrorKind::InvalidArgument, "two-distance values must be distinct");
        return {sorted_pair(a, b)};
    }
    const Elem ns = f.first_nonsquare();
    std::vector<std::vector<Elem>> out;
    std::set<std::vector<Elem>> seen;
    for (std::uint32_t a = 1; a < f.q(); ++a)
        for (std::uint32_t b = a + 1; b < f.q(); ++b) {
            const Elem ea{a}, eb{b};
            if (prob.canonical) {
                out.push_back({ea, eb});
                continue;
            }
            const Elem ra = square_class_rep(f, ea, ns), rb = square_class_rep(f, eb, ns);
            const auto by_a = sorted_pair(ra, f.mul(eb, f.div(ra, ea)));
            const auto by_b = sorted_pair(f.mul(ea, f.div(rb, eb)), rb);
            if (seen.insert(std::min(by_a, by_b)).second)
                out.push_back({ea, eb});
        }
    return out;
}

namespace {

SearchResult solve(const SearchProblem & prob)
{
    const auto start = std::chrono::steady_clock::now();
    const Field & f = prob.field;
    const Space space(f, prob.d);
    const auto subproblems = value_subproblems(prob);
    const int threads = prob.canonical ? 1 : prob.threads;

    SearchStats stats;
    bool exhausted = true;
    std::size_t best = 0;
    std::vector<std::size_t> best_indices{0};
    std::vector<Elem> best_values;
    std::vector<std::size_t> sizes(subproblems.size());

    for (std::size_t s = 0; s < subproblems.size(); ++s) {
        const CandidateGraph cg = build_candidates(space, f, subproblems[s]);
        const CliqueResult r = max_clique(cg.graph, prob.budget, threads);
        ++stats.subproblems;
        stats.nodes += r.nodes;
        exhausted = exhausted && r.exhausted;
        sizes[s] = 1 + r.clique.size();
        if (sizes[s] > best) {
            best = sizes[s];
            best_indices = witness_indices(cg, r.clique);
            best_values = subproblems[s];
        }
    }

    if (prob.canonical && exhausted) {
        std::optional<std::vector<std::size_t>> least;
        for (std::size_t s = 0; s < subproblems.size(); ++s) {
            if (sizes[s] != best)
                continue;
            const CandidateGraph cg = build_candidates(space, f, subproblems[s]);
            const CliqueResult r = lex_first_clique(cg.graph, best - 1, prob.budget);
            stats.nodes += r.nodes;
            exhausted = exhausted && r.exhausted;
            if (r.clique.size() + 1 != best)
                continue;
            auto idx = witness_indices(cg, r.clique);
            if (!least || idx < *least) {
                least = std::move(idx);
                best_values = subproblems[s];
            }
        }
        if (least)
            best_indices = std::move(*least);
    }

    std::vector<Vec> pts;
    for (auto v : best_indices)
        pts.push_back(space.point(v));
    PointSet witness(f, prob.d, Form::Standard, std::move(pts));
    stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    SearchResult result{prob.mode, best, std::move(witness), exhausted, stats, best_values, std::nullopt};
    if (result.witness.size() >= 2)
        result.witness_class = classify(result.witness);
    result.both_values_occur
        = result.witness_class && result.witness_class->kind == Classification::Kind::TwoDistance;
    return result;
}

}  // namespace

SearchResult max_equilateral(const SearchProblem & prob)
{
    SearchProblem p = prob;
    p.mode = SearchMode::Equilateral;
    SearchResult r = solve(p);
    r.reference_bound = equilateral_upper(p.field, p.d);
    r.comparison = compare_to_bound(r.max_size, r.reference_bound);
    if (r.witness_class && r.witness_class->kind != Classification::Kind::Equilateral)
        throw std::logic_error("equilateral search returned a non-equilateral witness");
    if (r.exhausted && r.max_size > r.reference_bound)
        throw std::logic_error("equilateral set of size " + std::to_string(r.max_size)
                               + " violates the rank bound " + std::to_string(r.reference_bound));
    return r;
}

SearchResult max_two_distance(const SearchProblem & prob)
{
    SearchProblem p = prob;
    p.mode = SearchMode::TwoDistance;
    SearchResult r = solve(p);
    r.reference_bound = blokhuis_bound(p.d);
    r.comparison = compare_to_bound(r.max_size, r.reference_bound);
    if (r.witness_class && r.witness_class->kind == Classification::Kind::Other)
        throw std::logic_error("two-distance search returned a witness with more than two values");
    return r;
}

SearchResult run_search(const SearchProblem & prob)
{
    return prob.mode == SearchMode::Equilateral ? max_equilateral(prob) : max_two_distance(prob);
}

Census brute_force_classify_all(const Field & f, std::size_t d, std::size_t n)
{
    constexpr std::uint64_t limit = 10'000'000;
    if (n < 2)
        throw Error(ErrorKind::TooFewPoints, "subsets need at least two points");
    const std::uint64_t big_n = checked_space_size(f, d, limit);
    if (n > big_n)
        return Census{n, 0, 0, 0, 0};
    // C(N, n) with early exit once it passes the limit.
    std::uint64_t subsets = 1;
    for (std::uint64_t i = 1; i <= n; ++i) {
        subsets = subsets * (big_n - n + i) / i;
        if (subsets > limit)
            throw Error(ErrorKind::TooLarge, "more than 10^7 subsets");
    }

    // Materialize points by plain odometer over coordinates.
    std::vector<Vec> pts;
    Vec x(d, f.zero());
    for (std::uint64_t v = 0; v < big_n; ++v) {
        pts.push_back(x);
        for (std::size_t j = d; j-- > 0;) {
            if (++x[j].code < f.q())
                break;
            x[j].code = 0;
        }
    }
    const std::size_t npts = pts.size();
    const bool tabulate = npts <= 4096;
    std::vector<Elem> table;
    if (tabulate) {
        table.resize(npts * npts);
        for (std::size_t a = 0; a < npts; ++a)
            for (std::size_t b = 0; b < npts; ++b)
                table[a * npts + b] = dist2(f, pts[a], pts[b]);
    }
    auto dist = [&](std::size_t a, std::size_t b) {
        return tabulate ? table[a * npts + b] : dist2(f, pts[a], pts[b]);
    };

    Census census;
    census.n = n;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    while (true) {
        Elem seen[2];
        std::size_t distinct = 0;
        bool other = false;
        for (std::size_t i = 0; i < n && !other; ++i)
            for (std::size_t j = i + 1; j < n && !other; ++j) {
                const Elem v = dist(idx[i], idx[j]);
                if (v.code == 0)
                    other = true;
                else if (distinct == 0 || (v != seen[0] && (distinct == 1 || v != seen[1]))) {
                    if (distinct == 2)
                        other = true;
                    else
                        seen[distinct++] = v;
                }
            }
        ++census.total;
        if (other)
            ++census.other;
        else if (distinct == 1)
            ++census.equilateral;
        else
            ++census.two_distance;

        std::size_t i = n;
        while (i-- > 0 && idx[i] == npts - n + i) {
        }
        if (i == static_cast<std::size_t>(-1))
            break;
        ++idx[i];
        for (std::size_t j = i + 1; j < n; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return census;
}

const std::vector<SearchPreset> & search_presets()
{
    static const std::vector<SearchPreset> presets{
        {"p3d4-equilateral", 3, 4, SearchMode::Equilateral,
         "6-point equilateral probe in standard F_3^4, where the hyperplane embedding fails"},
        {"p5d3-two-distance", 5, 3, SearchMode::TwoDistance,
         "10-point two-distance confirmation in standard F_5^3"},
    };
    return presets;
}

std::filesystem::path golden_dir()
{
    if (const char * env = std::getenv("FFDIST_GOLDEN_DIR"); env && *env)
        return env;
    return FFDIST_DEFAULT_GOLDEN_DIR;
}

std::filesystem::path golden_path(const std::filesystem::path & dir, std::uint32_t q, std::size_t d, SearchMode mode)
{
    return dir / ("q" + std::to_string(q) + "_d" + std::to_string(d) + "_" + std::string(to_string(mode)) + ".json");
}

std::optional<GoldenRecord> load_golden(const std::filesystem::path & dir, std::uint32_t q, std::size_t d,
                                        SearchMode mode)
{
    std::ifstream in(golden_path(dir, q, d, mode));
    if (!in)
        return std::nullopt;
    const auto j = nlohmann::json::parse(in);
    return GoldenRecord{j.at("q").get<std::uint32_t>(), j.at("d").get<std::size_t>(),
                        parse_search_mode(j.at("mode").get<std::string>()), j.at("max_size").get<std::size_t>()};
}

void store_golden(const std::filesystem::path & dir, const GoldenRecord & record)
{
    std::filesystem::create_directories(dir);
    nlohmann::json j;
    j["q"] = record.q;
    j["d"] = record.d;
    j["mode"] = std::string(to_string(record.mode));
    j["max_size"] = record.max_size;
    std::ofstream out(golden_path(dir, record.q, record.d, record.mode));
    out << j.dump(2) << "\n";
}

}  // namespace ffdist
