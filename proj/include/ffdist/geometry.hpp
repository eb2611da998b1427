#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ffdist/field.hpp"
#include "ffdist/linalg.hpp"

namespace ffdist {

using Vec = std::vector<Elem>;

enum class Form { Standard, SumZeroHyperplane };

std::string_view to_string(Form form);

/// Distinct points of F_q^m. Hyperplane sets have coordinate sum zero and
/// geometric dimension m - 1; standard sets have dimension m.
class PointSet {
public:
    PointSet(Field field, std::size_t ambient_dim, Form form, std::vector<Vec> points);

    const Field & field() const noexcept { return field_; }
    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    Form form() const noexcept { return form_; }
    std::size_t geometric_dim() const noexcept
    {
        return form_ == Form::Standard ? ambient_dim_ : ambient_dim_ - 1;
    }
    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<Vec> & points() const noexcept { return points_; }
    const Vec & operator[](std::size_t i) const { return points_[i]; }

private:
    Field field_;
    std::size_t ambient_dim_;
    Form form_;
    std::vector<Vec> points_;
};

/// Census of squared distances over unordered pairs.
struct Spectrum {
    std::map<Elem, std::size_t> values;
    bool has_zero = false;

    std::size_t total() const;
    friend bool operator==(const Spectrum &, const Spectrum &) = default;
};

struct Classification {
    enum class Kind { Equilateral, TwoDistance, Other };
    Kind kind = Kind::Other;
    /// Distance values: {delta} or {a, b} (ascending by code); empty for Other.
    std::vector<Elem> values;
    std::size_t value_count = 0;
    bool has_zero = false;

    friend bool operator==(const Classification &, const Classification &) = default;
};

std::string_view to_string(Classification::Kind kind);

Elem dist2(const Field & f, std::span<const Elem> x, std::span<const Elem> y);

/// Pairwise census, parallelized over rows.
Spectrum spectrum(const PointSet & s);
/// Single-threaded reference for spectrum().
Spectrum spectrum_serial(const PointSet & s);

Classification classify(const PointSet & s);
Classification classify(const Spectrum & spec);

/// Gram matrix of v_i = P_i - P_0, i = 1..n-1, under the ambient standard form.
MatrixF gram(const PointSet & s);

/// Largest equilateral size compatible with the rank of I + J in dimension d.
std::size_t equilateral_upper(const Field & f, std::size_t d);

/// C(d + 2, 2), reference value for two-distance sets.
std::uint64_t blokhuis_bound(std::size_t d);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace ffdist
