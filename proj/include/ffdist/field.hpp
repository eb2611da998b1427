#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffdist/error.hpp"

namespace ffdist {

/// An element of F_q, stored as the integer code sum_i c_i p^i of its
/// little-endian coefficient vector (c_0, ..., c_{k-1}) over the basis
/// 1, t, ..., t^{k-1}. For prime fields the code is the residue itself.
struct Elem {
    std::uint32_t code = 0;

    friend auto operator<=>(const Elem &, const Elem &) = default;
};

enum class SquareClass { Zero, Square, NonSquare };

std::string_view to_string(SquareClass c);

/// The finite field F_q, q = p^k, p an odd prime, realized as
/// F_p[t]/(modulus) when k > 1. Immutable value type.
class Field {
public:
    /// Upper bound on q so that every intermediate product fits in 64 bits.
    static constexpr std::uint64_t max_order = std::uint64_t{1} << 31;

    /// Validates p and k. When k > 1 and no modulus is given, the
    /// lexicographically smallest monic irreducible (comparing the
    /// little-endian tuple (c_0, ..., c_{k-1}) with c_0 most significant)
    /// is chosen, so certificates are reproducible.
    static Field make(std::uint64_t p, unsigned k = 1,
                      std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    std::uint32_t p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    std::uint32_t q() const noexcept { return q_; }
    bool is_prime_field() const noexcept { return k_ == 1; }

    /// Monic modulus, little-endian, length k + 1. Empty when k = 1.
    const std::vector<std::uint32_t> & modulus() const noexcept { return modulus_; }

    Elem zero() const noexcept { return Elem{0}; }
    Elem one() const noexcept { return Elem{1}; }

    /// Image of an integer in the prime subfield.
    Elem from_int(std::int64_t v) const noexcept;
    bool contains(Elem a) const noexcept { return a.code < q_; }

    std::vector<std::uint32_t> coeffs(Elem a) const;
    Elem from_coeffs(std::span<const std::uint32_t> c) const;

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    Elem sqr(Elem a) const noexcept { return mul(a, a); }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    /// Euler's criterion: a^{(q-1)/2} = 1 for squares, -1 otherwise.
    SquareClass square_class(Elem a) const noexcept;

    /// Some x with x^2 = a, or nullopt when a is a nonsquare (Tonelli-Shanks).
    std::optional<Elem> sqrt(Elem a) const;

    /// The least nonsquare by code.
    Elem first_nonsquare() const;

    std::string describe() const;

    friend bool operator==(const Field & a, const Field & b) noexcept
    {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
    }

private:
    Field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus);

    std::uint32_t p_;
    unsigned k_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> pow_p_;  // p^i, i < k
};

bool is_prime(std::uint64_t n) noexcept;

/// True iff the monic polynomial (little-endian, degree = size - 1) has no
/// monic factor of degree 1..deg/2 over F_p.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

}  // namespace ffdist
