#include "ffdist/clique.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffdist {

namespace {

using Bits = std::vector<std::uint64_t>;
using Clock = std::chrono::steady_clock;

inline bool empty(const Bits & b)
{
    for (auto w : b)
        if (w)
            return false;
    return true;
}

inline std::size_t popcount(const Bits & b)
{
    std::size_t c = 0;
    for (auto w : b)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

inline void reset(Bits & b, std::size_t v) { b[v / 64] &= ~(std::uint64_t{1} << (v % 64)); }

inline Bits intersect(const Bits & p, const std::uint64_t * row)
{
    Bits out(p.size());
    for (std::size_t w = 0; w < p.size(); ++w)
        out[w] = p[w] & row[w];
    return out;
}

// Greedy sequential colouring of p in index order. order[i] gets colour
// bound[i]; bounds are non-decreasing.
void colour_sort(const BitGraph & g, const Bits & p, std::vector<std::size_t> & order,
                 std::vector<std::size_t> & bound)
{
    order.clear();
    bound.clear();
    Bits uncoloured = p;
    std::size_t colour = 0;
    while (!empty(uncoloured)) {
        ++colour;
        Bits q = uncoloured;
        for (std::size_t w = 0; w < q.size(); ++w) {
            while (q[w]) {
                const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(q[w]));
                reset(q, v);
                reset(uncoloured, v);
                const std::uint64_t * nv = g.row(v);
                for (std::size_t x = w; x < q.size(); ++x)
                    q[x] &= ~nv[x];
                order.push_back(v);
                bound.push_back(colour);
            }
        }
    }
}

// Shared search state: incumbent, node counter and budget.
class Controller {
public:
    explicit Controller(const CliqueBudget & budget) : budget_(budget), start_(Clock::now()) {}

    bool tick()
    {
        const auto n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (n > budget_.nodes)
            abort_.store(true, std::memory_order_relaxed);
        else if ((n & 1023) == 0
                 && std::chrono::duration<double>(Clock::now() - start_).count() > budget_.seconds)
            abort_.store(true, std::memory_order_relaxed);
        return !abort_.load(std::memory_order_relaxed);
    }

    bool aborted() const { return abort_.load(std::memory_order_relaxed); }
    std::uint64_t nodes() const { return nodes_.load(); }
    std::size_t best_size() const { return best_size_.load(std::memory_order_relaxed); }

    void offer(const std::vector<std::size_t> & clique)
    {
        if (clique.size() <= best_size())
            return;
        std::lock_guard lock(mutex_);
        if (clique.size() > best_.size()) {
            best_ = clique;
            best_size_.store(clique.size(), std::memory_order_relaxed);
        }
    }

    std::vector<std::size_t> best() const
    {
        std::lock_guard lock(mutex_);
        return best_;
    }

private:
    CliqueBudget budget_;
    Clock::time_point start_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> abort_{false};
    std::atomic<std::size_t> best_size_{0};
    mutable std::mutex mutex_;
    std::vector<std::size_t> best_;
};

void expand(const BitGraph & g, Bits p, std::vector<std::size_t> & current, Controller & ctl)
{
    if (!ctl.tick())
        return;
    std::vector<std::size_t> order, bound;
    colour_sort(g, p, order, bound);
    for (std::size_t i = order.size(); i-- > 0;) {
        if (current.size() + bound[i] <= ctl.best_size() || ctl.aborted())
            return;
        const std::size_t v = order[i];
        current.push_back(v);
        Bits next = intersect(p, g.row(v));
        if (empty(next))
            ctl.offer(current);
        else
            expand(g, std::move(next), current, ctl);
        current.pop_back();
        reset(p, v);
    }
}

// Min-degree elimination order, reversed so the densest core comes first.
std::vector<std::size_t> degeneracy_order(const BitGraph & g)
{
    const std::size_t n = g.size();
    std::vector<std::size_t> degree(n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < g.words(); ++w)
            degree[v] += static_cast<std::size_t>(std::popcount(g.row(v)[w]));
    std::vector<bool> removed(n, false);
    std::vector<std::size_t> elimination;
    elimination.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!removed[v] && (pick == n || degree[v] < degree[pick]))
                pick = v;
        removed[pick] = true;
        elimination.push_back(pick);
        for (std::size_t v = 0; v < n; ++v)
            if (!removed[v] && g.adjacent(pick, v))
                --degree[v];
    }
    std::reverse(elimination.begin(), elimination.end());
    return elimination;
}

}  // namespace

CliqueResult max_clique(const BitGraph & g, const CliqueBudget & budget, int threads)
{
    const std::size_t n = g.size();
    CliqueResult result;
    if (n == 0)
        return result;

    const std::vector<std::size_t> perm = degeneracy_order(g);  // new index -> old index
    BitGraph h(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (g.adjacent(perm[a], perm[b]))
                h.set_arc(a, b);

    Controller ctl(budget);
    Bits all(h.words(), 0);
    for (std::size_t v = 0; v < n; ++v)
        all[v / 64] |= std::uint64_t{1} << (v % 64);
    std::vector<std::size_t> order, bound;
    colour_sort(h, all, order, bound);

    // Top-level branch i may use only order[0..i-1]; branches are independent.
    std::vector<Bits> prefix(order.size());
    Bits seen(h.words(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        prefix[i] = intersect(seen, h.row(order[i]));
        seen[order[i] / 64] |= std::uint64_t{1} << (order[i] % 64);
    }

    const auto count = static_cast<std::ptrdiff_t>(order.size());
#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
#endif
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
    for (std::ptrdiff_t t = 0; t < count; ++t) {
        const std::size_t i = order.size() - 1 - static_cast<std::size_t>(t);
        if (bound[i] <= ctl.best_size() || ctl.aborted())
            continue;
        std::vector<std::size_t> current{order[i]};
        if (empty(prefix[i])) {
            ctl.tick();
            ctl.offer(current);
        }
        else
            expand(h, prefix[i], current, ctl);
    }

    for (auto v : ctl.best())
        result.clique.push_back(perm[v]);
    std::sort(result.clique.begin(), result.clique.end());
    result.exhausted = !ctl.aborted();
    result.nodes = ctl.nodes();
    return result;
}

namespace {

bool find_first(const BitGraph & g, Bits p, std::size_t target, std::vector<std::size_t> & current,
                Controller & ctl)
{
    if (!ctl.tick())
        return false;
    if (current.size() == target)
        return true;
    if (current.size() + popcount(p) < target)
        return false;
    std::vector<std::size_t> order, bound;
    colour_sort(g, p, order, bound);
    if (current.size() + (bound.empty() ? 0 : bound.back()) < target)
        return false;
    for (std::size_t w = 0; w < p.size(); ++w) {
        while (p[w]) {
            const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(p[w]));
            current.push_back(v);
            if (find_first(g, intersect(p, g.row(v)), target, current, ctl))
                return true;
            current.pop_back();
            if (ctl.aborted())
                return false;
            reset(p, v);
            if (current.size() + popcount(p) < target)
                return false;
        }
    }
    return false;
}

void reference_expand(const BitGraph & g, const std::vector<std::size_t> & p, std::vector<std::size_t> & current,
                      std::vector<std::size_t> & best, std::uint64_t & nodes)
{
    ++nodes;
    if (current.size() > best.size())
        best = current;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (current.size() + (p.size() - i) <= best.size())
            return;
        current.push_back(p[i]);
        std::vector<std::size_t> next;
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (g.adjacent(p[i], p[j]))
                next.push_back(p[j]);
        reference_expand(g, next, current, best, nodes);
        current.pop_back();
    }
}

}  // namespace

CliqueResult lex_first_clique(const BitGraph & g, std::size_t target, const CliqueBudget & budget)
{
    CliqueResult result;
    Controller ctl(budget);
    Bits all(g.words(), 0);
    for (std::size_t v = 0; v < g.size(); ++v)
        all[v / 64] |= std::uint64_t{1} << (v % 64);
    std::vector<std::size_t> current;
    if (find_first(g, std::move(all), target, current, ctl))
        result.clique = current;
    result.exhausted = !ctl.aborted();
    result.nodes = ctl.nodes();
    return result;
}

CliqueResult max_clique_reference(const BitGraph & g)
{
    std::vector<std::size_t> all(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
        all[v] = v;
    CliqueResult result;
    std::vector<std::size_t> current;
    reference_expand(g, all, current, result.clique, result.nodes);
    return result;
}

}  // namespace ffdist
