// Wall-clock comparison of the OpenMP kernels against their serial references.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include <omp.h>

#include "ffdist/clique.hpp"
#include "ffdist/construct.hpp"
#include "ffdist/geometry.hpp"

using namespace ffdist;

namespace {

double seconds(const std::function<void()> & fn, int reps)
{
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char * name, double serial, double parallel)
{
    std::printf("%-28s serial %10.4f ms   parallel %10.4f ms   ratio %6.2f\n", name, serial * 1e3,
                parallel * 1e3, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main()
{
    std::printf("OpenMP max threads: %d\n", omp_get_max_threads());

    const Field f = Field::make(5);
    const auto eq = modular_equilateral(ModularParams::make(f, 48));
    const auto mids = midpoints(eq);

    row("spectrum (1225 pts)", seconds([&] { (void)spectrum_serial(mids.points); }, 3),
        seconds([&] { (void)spectrum(mids.points); }, 3));
    row("midpoint lemma (1225 pts)", seconds([&] { (void)check_midpoint_lemma_serial(mids); }, 3),
        seconds([&] { (void)check_midpoint_lemma(mids); }, 3));

    std::mt19937_64 rng(42);
    std::bernoulli_distribution coin(0.6);
    BitGraph g(150);
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = a + 1; b < g.size(); ++b)
            if (coin(rng))
                g.add_edge(a, b);
    row("max clique (G(150, 0.6))", seconds([&] { (void)max_clique_reference(g); }, 1),
        seconds([&] { (void)max_clique(g, CliqueBudget{}); }, 1));
    return 0;
}
