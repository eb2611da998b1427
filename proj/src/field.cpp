#include "ffdist/field.hpp"

#include <array>
#include <sstream>
#include <utility>

namespace ffdist {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotIsometric: return "NotIsometric";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::InvalidPointSet: return "InvalidPointSet";
    case ErrorKind::NotModular: return "NotModular";
    case ErrorKind::ZeroScale: return "ZeroScale";
    case ErrorKind::NotEquilateral: return "NotEquilateral";
    case ErrorKind::BadDistanceValue: return "BadDistanceValue";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::TooLarge: return "TooLarge";
    }
    return "Unknown";
}

std::string_view to_string(SquareClass c)
{
    switch (c) {
    case SquareClass::Zero: return "zero";
    case SquareClass::Square: return "square";
    case SquareClass::NonSquare: return "nonsquare";
    }
    return "?";
}

namespace {

constexpr unsigned max_degree = 32;
using Digits = std::array<std::uint32_t, max_degree>;

// Remainder of monic f modulo monic g, both little-endian; true iff zero.
bool divides(std::uint32_t p, std::span<const std::uint32_t> g, std::span<const std::uint32_t> f)
{
    std::vector<std::uint64_t> r(f.begin(), f.end());
    const std::size_t dg = g.size() - 1;
    for (std::size_t i = r.size() - 1; i >= dg; --i) {
        const std::uint64_t c = r[i] % p;
        if (c != 0)
            for (std::size_t j = 0; j <= dg; ++j)
                r[i - dg + j] = (r[i - dg + j] + (p - c) * g[j]) % p;
        if (i == dg)
            break;
    }
    for (std::size_t j = 0; j < dg; ++j)
        if (r[j] % p != 0)
            return false;
    return true;
}

// Advance a little-endian digit tuple treating c_0 as the most significant
// digit. Returns false on wrap-around.
bool next_lex(std::vector<std::uint32_t> & c, std::uint32_t p)
{
    for (std::size_t i = c.size(); i-- > 0;) {
        if (++c[i] < p)
            return true;
        c[i] = 0;
    }
    return false;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic)
{
    const std::size_t deg = monic.size() - 1;
    if (deg <= 1)
        return deg == 1;
    for (std::size_t j = 1; j <= deg / 2; ++j) {
        std::vector<std::uint32_t> g(j + 1, 0);
        g[j] = 1;
        std::vector<std::uint32_t> low(j, 0);
        do {
            std::copy(low.begin(), low.end(), g.begin());
            if (divides(p, g, monic))
                return false;
        } while (next_lex(low, p));
    }
    return true;
}

Field Field::make(std::uint64_t p, unsigned k, std::optional<std::vector<std::uint32_t>> modulus)
{
    if (p == 2)
        throw Error(ErrorKind::EvenCharacteristic, "characteristic 2 is not supported; p must be an odd prime");
    if (!is_prime(p))
        throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (k == 0)
        throw Error(ErrorKind::InvalidArgument, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p;
        if (q > max_order)
            throw Error(ErrorKind::FieldTooLarge, "p^k exceeds 2^31");
    }
    if (k == 1) {
        if (modulus && !modulus->empty())
            throw Error(ErrorKind::InvalidArgument, "prime fields take no modulus");
        return Field(static_cast<std::uint32_t>(p), 1, {});
    }
    if (k >= max_degree)
        throw Error(ErrorKind::FieldTooLarge, "extension degree too large");

    if (modulus) {
        auto & m = *modulus;
        if (m.size() != k + 1 || m.back() != 1)
            throw Error(ErrorKind::InvalidArgument, "modulus must be monic of degree k, little-endian");
        for (auto c : m)
            if (c >= p)
                throw Error(ErrorKind::InvalidArgument, "modulus coefficient not reduced mod p");
        if (!is_irreducible(static_cast<std::uint32_t>(p), m))
            throw Error(ErrorKind::ReducibleModulus, "modulus has a factor over F_p");
        return Field(static_cast<std::uint32_t>(p), k, m);
    }

    std::vector<std::uint32_t> low(k, 0);
    do {
        if (low[0] == 0)
            continue;  // t divides it
        std::vector<std::uint32_t> m = low;
        m.push_back(1);
        if (is_irreducible(static_cast<std::uint32_t>(p), m))
            return Field(static_cast<std::uint32_t>(p), k, std::move(m));
    } while (next_lex(low, static_cast<std::uint32_t>(p)));
    throw Error(ErrorKind::ReducibleModulus, "no irreducible modulus found");  // unreachable for prime p
}

Field::Field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus))
{
    for (unsigned i = 0; i < k_; ++i) {
        pow_p_.push_back(q_);
        q_ *= p_;
    }
}

Elem Field::from_int(std::int64_t v) const noexcept
{
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0)
        r += p_;
    return Elem{static_cast<std::uint32_t>(r)};
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const
{
    std::vector<std::uint32_t> c(k_);
    std::uint32_t v = a.code;
    for (unsigned i = 0; i < k_; ++i) {
        c[i] = v % p_;
        v /= p_;
    }
    return c;
}

Elem Field::from_coeffs(std::span<const std::uint32_t> c) const
{
    if (c.size() != k_)
        throw Error(ErrorKind::DimensionMismatch, "element needs exactly k coefficients");
    std::uint32_t code = 0;
    for (unsigned i = 0; i < k_; ++i) {
        if (c[i] >= p_)
            throw Error(ErrorKind::InvalidArgument, "coefficient not reduced mod p");
        code += c[i] * pow_p_[i];
    }
    return Elem{code};
}

namespace {

inline void decode(std::uint32_t v, std::uint32_t p, unsigned k, Digits & out) noexcept
{
    for (unsigned i = 0; i < k; ++i) {
        out[i] = v % p;
        v /= p;
    }
}

inline std::uint32_t encode(const std::uint64_t * d, std::uint32_t p, unsigned k) noexcept
{
    std::uint32_t v = 0;
    for (unsigned i = k; i-- > 0;)
        v = v * p + static_cast<std::uint32_t>(d[i]);
    return v;
}

}  // namespace

Elem Field::add(Elem a, Elem b) const noexcept
{
    if (k_ == 1) {
        std::uint64_t s = std::uint64_t{a.code} + b.code;
        return Elem{static_cast<std::uint32_t>(s >= p_ ? s - p_ : s)};
    }
    Digits x, y;
    decode(a.code, p_, k_, x);
    decode(b.code, p_, k_, y);
    std::uint64_t r[max_degree];
    for (unsigned i = 0; i < k_; ++i) {
        r[i] = x[i] + y[i];
        if (r[i] >= p_)
            r[i] -= p_;
    }
    return Elem{encode(r, p_, k_)};
}

Elem Field::neg(Elem a) const noexcept
{
    if (k_ == 1)
        return Elem{a.code == 0 ? 0 : p_ - a.code};
    Digits x;
    decode(a.code, p_, k_, x);
    std::uint64_t r[max_degree];
    for (unsigned i = 0; i < k_; ++i)
        r[i] = x[i] == 0 ? 0 : p_ - x[i];
    return Elem{encode(r, p_, k_)};
}

Elem Field::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const noexcept
{
    if (k_ == 1)
        return Elem{static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % p_)};
    Digits x, y;
    decode(a.code, p_, k_, x);
    decode(b.code, p_, k_, y);
    std::uint64_t r[2 * max_degree] = {};
    for (unsigned i = 0; i < k_; ++i) {
        if (x[i] == 0)
            continue;
        for (unsigned j = 0; j < k_; ++j)
            r[i + j] = (r[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
    }
    // t^k = -(m_0 + m_1 t + ... + m_{k-1} t^{k-1})
    for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
        const std::uint64_t c = r[i];
        if (c != 0) {
            for (unsigned j = 0; j < k_; ++j)
                r[i - k_ + j] = (r[i - k_ + j] + (p_ - c) * modulus_[j]) % p_;
        }
        r[i] = 0;
    }
    return Elem{encode(r, p_, k_)};
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept
{
    Elem result = one();
    while (e > 0) {
        if (e & 1)
            result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

Elem Field::inv(Elem a) const
{
    if (a.code == 0)
        throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    if (k_ == 1) {
        std::int64_t t = 0, new_t = 1, r = p_, new_r = a.code;
        while (new_r != 0) {
            const std::int64_t quot = r / new_r;
            t = std::exchange(new_t, t - quot * new_t);
            r = std::exchange(new_r, r - quot * new_r);
        }
        return from_int(t);
    }
    return pow(a, q_ - 2);
}

SquareClass Field::square_class(Elem a) const noexcept
{
    if (a.code == 0)
        return SquareClass::Zero;
    return pow(a, (q_ - 1) / 2) == one() ? SquareClass::Square : SquareClass::NonSquare;
}

Elem Field::first_nonsquare() const
{
    for (std::uint32_t c = 2; c < q_; ++c)
        if (square_class(Elem{c}) == SquareClass::NonSquare)
            return Elem{c};
    throw Error(ErrorKind::InvalidArgument, "field has no nonsquare");  // q odd always has one
}

std::optional<Elem> Field::sqrt(Elem a) const
{
    switch (square_class(a)) {
    case SquareClass::Zero: return zero();
    case SquareClass::NonSquare: return std::nullopt;
    case SquareClass::Square: break;
    }
    std::uint64_t t = q_ - 1;
    unsigned s = 0;
    while ((t & 1) == 0) {
        t >>= 1;
        ++s;
    }
    const Elem z = first_nonsquare();
    unsigned m = s;
    Elem c = pow(z, t);
    Elem u = pow(a, t);
    Elem r = pow(a, (t + 1) / 2);
    while (u != one()) {
        unsigned i = 0;
        Elem probe = u;
        while (probe != one()) {
            probe = sqr(probe);
            ++i;
        }
        Elem b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j)
            b = sqr(b);
        m = i;
        c = sqr(b);
        u = mul(u, c);
        r = mul(r, b);
    }
    return r;
}

std::string Field::describe() const
{
    std::ostringstream os;
    os << "F_" << q_;
    if (k_ > 1) {
        os << " = F_" << p_ << "[t]/(";
        bool first = true;
        for (unsigned i = k_ + 1; i-- > 0;) {
            const auto c = modulus_[i];
            if (c == 0)
                continue;
            if (!first)
                os << " + ";
            first = false;
            if (i == 0 || c != 1)
                os << c;
            if (i >= 1)
                os << "t";
            if (i > 1)
                os << "^" << i;
        }
        os << ")";
    }
    return os.str();
}

}  // namespace ffdist
