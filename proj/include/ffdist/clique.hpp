#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ffdist {

/// Adjacency rows as packed 64-bit words.
class BitGraph {
public:
    explicit BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n_ * words_, 0) {}

    std::size_t size() const noexcept { return n_; }
    std::size_t words() const noexcept { return words_; }

    /// Sets a -> b only; callers building symmetric graphs set both.
    void set_arc(std::size_t a, std::size_t b) noexcept { bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64); }
    void add_edge(std::size_t a, std::size_t b) noexcept
    {
        set_arc(a, b);
        set_arc(b, a);
    }
    bool adjacent(std::size_t a, std::size_t b) const noexcept
    {
        return (bits_[a * words_ + b / 64] >> (b % 64)) & 1;
    }
    const std::uint64_t * row(std::size_t a) const noexcept { return bits_.data() + a * words_; }

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

struct CliqueBudget {
    double seconds = 60.0;
    std::uint64_t nodes = 100'000'000;
};

struct CliqueResult {
    /// Vertex indices, ascending.
    std::vector<std::size_t> clique;
    bool exhausted = true;
    std::uint64_t nodes = 0;
};

/// Exact maximum clique: degeneracy vertex order, greedy colouring bound
/// recomputed per branch, top-level branches shared across OpenMP threads
/// with a common incumbent. threads <= 0 uses the OpenMP default.
CliqueResult max_clique(const BitGraph & g, const CliqueBudget & budget, int threads = 0);

/// The lexicographically least clique of exactly `target` vertices, or an
/// empty clique when none exists.
CliqueResult lex_first_clique(const BitGraph & g, std::size_t target, const CliqueBudget & budget);

/// Plain serial branch and bound without colouring; reference for tests.
CliqueResult max_clique_reference(const BitGraph & g);

}  // namespace ffdist
