#pragma once

#include <cstddef>
#include <vector>

#include "ffdist/geometry.hpp"

namespace ffdist {

/// Parameters of the (d+2)-point equilateral set living in the sum-zero
/// hyperplane of F_q^{d+1}. Requires p | (d + 2) and b != 0.
class ModularParams {
public:
    static ModularParams make(Field field, std::size_t d, Elem b);
    static ModularParams make(Field field, std::size_t d) { return make(field, d, field.one()); }

    const Field & field() const noexcept { return field_; }
    std::size_t d() const noexcept { return d_; }
    std::size_t ambient_dim() const noexcept { return d_ + 1; }
    Elem b() const noexcept { return b_; }
    /// Common squared distance 2b^2.
    Elem delta() const noexcept { return field_.mul(field_.from_int(2), field_.sqr(b_)); }

private:
    ModularParams(Field field, std::size_t d, Elem b) : field_(std::move(field)), d_(d), b_(b) {}

    Field field_;
    std::size_t d_;
    Elem b_;
};

/// P_0 = 0, P_i = b * (1 + e_i) for 1 <= i <= d + 1.
PointSet modular_equilateral(const ModularParams & params);

struct MidpointIndex {
    std::size_t i;
    std::size_t j;
};

enum class PairType { SharedVertex, DisjointEdges };

/// Midpoints (P_i + P_j) / 2 of every edge of an equilateral set, ordered
/// lexicographically by (i, j).
struct MidpointSet {
    PointSet points;
    std::vector<MidpointIndex> edges;
    Elem delta;  // of the source set

    PairType type(std::size_t a, std::size_t b) const;
    Elem shared_value() const;    // delta / 4
    Elem disjoint_value() const;  // delta / 2
};

MidpointSet midpoints(const PointSet & s);

struct LemmaReport {
    std::size_t shared_pairs = 0;
    std::size_t disjoint_pairs = 0;
    std::size_t violations = 0;

    bool ok() const noexcept { return violations == 0; }
    friend bool operator==(const LemmaReport &, const LemmaReport &) = default;
};

/// Checks every midpoint pair against its combinatorial type.
LemmaReport check_midpoint_lemma(const MidpointSet & mids);
LemmaReport check_midpoint_lemma_serial(const MidpointSet & mids);

/// Rewrites a sum-zero hyperplane set in orthonormal coordinates of the
/// hyperplane. Throws NotIsometricError when the hyperplane's form has a
/// nonsquare discriminant.
PointSet embed_standard(const PointSet & s);

/// All d <= d_max with d = -2 (mod p), ascending.
std::vector<std::size_t> sharp_dimensions(std::uint32_t p, std::size_t d_max);

/// Odd prime divisors of d + 2, ascending.
std::vector<std::uint64_t> admissible_chars(std::size_t d);

}  // namespace ffdist
