#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ffdist/geometry.hpp"

namespace ffdist {

/// Simple undirected graph as a dense 0/1 adjacency matrix.
class Graph {
public:
    explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

    static Graph complete(std::size_t n);
    /// Line graph of K_n: vertices are pairs {i, j}, adjacent iff they share an index.
    static Graph triangular(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    bool adjacent(std::size_t a, std::size_t b) const { return adj_[a * n_ + b] != 0; }
    void add_edge(std::size_t a, std::size_t b);
    std::size_t degree(std::size_t a) const;
    std::size_t edge_count() const;

private:
    std::size_t n_;
    std::vector<std::uint8_t> adj_;
};

struct Eigenvalue {
    std::int64_t value;
    std::size_t multiplicity;

    friend bool operator==(const Eigenvalue &, const Eigenvalue &) = default;
};

struct SrgParams {
    std::size_t v = 0, k = 0, lambda = 0, mu = 0;
    std::vector<Eigenvalue> eigenvalues;

    friend bool operator==(const SrgParams &, const SrgParams &) = default;
};

struct SrgReport {
    bool passed = false;
    /// Empty on success, otherwise the first violated condition.
    std::string failure;
    /// v - rank(A - theta I) over Q for each claimed eigenvalue.
    std::vector<Eigenvalue> measured;
};

struct CollapseReport {
    std::size_t n = 0;
    std::uint32_t p = 0;
    std::int64_t top = 0, middle = 0, bottom = 0;  // 2(n-2), n-4, -2
    bool modular = false;           // p | n
    bool top_two_coincide = false;  // 2(n-2) = n-4 (mod p)
    bool third_distinct = false;    // n-4 != -2 (mod p)
};

/// Edge iff the squared distance is delta / 4; throws BadDistanceValue for a
/// pair at neither delta / 4 nor delta / 2.
Graph midpoint_graph(const PointSet & mids, Elem delta);

/// Parameters and integer spectrum of the triangular graph T(n).
SrgParams expected_params(std::size_t n);

/// Checks size, regularity, the A^2 identity and the claimed integer
/// spectrum. Multiplicities are v - rank(A - theta I) over Q, certified via
/// ranks modulo a large prime with a rational fallback.
SrgReport srg_check(const Graph & g, const SrgParams & params);

/// rank(A - theta I) by exact elimination over Q; reference for tests.
std::size_t rank_over_q(const Graph & g, std::int64_t theta);
/// rank(A - theta I) over F_{2^31 - 1}; never exceeds rank_over_q.
std::size_t rank_mod_prime(const Graph & g, std::int64_t theta);

CollapseReport eigen_collapse(std::size_t n, std::uint32_t p);

}  // namespace ffdist
