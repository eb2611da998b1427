#pragma once

#include <cstddef>
#include <vector>

#include "ffdist/field.hpp"

namespace ffdist {

/// Dense row-major matrix over a finite field.
class MatrixF {
public:
    MatrixF(Field field, std::size_t rows, std::size_t cols);

    static MatrixF identity(const Field & f, std::size_t n);
    /// I + J of size n: 2 on the diagonal, 1 elsewhere.
    static MatrixF identity_plus_ones(const Field & f, std::size_t n);
    /// Builds from integer rows, reduced into the prime subfield.
    static MatrixF from_ints(const Field & f, const std::vector<std::vector<long long>> & rows);

    const Field & field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Elem & operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    Elem operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    MatrixF transpose() const;
    MatrixF operator*(const MatrixF & rhs) const;
    bool is_symmetric() const;

    friend bool operator==(const MatrixF & a, const MatrixF & b)
    {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> entries_;
};

/// Result of congruence diagonalization: basis^T * G * basis = diag(entries).
struct DiagForm {
    Field field;
    std::vector<Elem> entries;
    MatrixF basis;

    std::size_t dim() const noexcept { return entries.size(); }
    bool nondegenerate() const noexcept;
    Elem determinant() const;
};

/// Thrown when a nondegenerate form is not isometric to the standard one;
/// witness is det(G), a nonsquare.
class NotIsometricError : public Error {
public:
    NotIsometricError(Elem witness, const std::string & message)
        : Error(ErrorKind::NotIsometric, message), witness_(witness)
    {
    }

    Elem witness() const noexcept { return witness_; }

private:
    Elem witness_;
};

std::size_t rank(const MatrixF & m);
Elem determinant(const MatrixF & m);

/// Rank of the (n-1)x(n-1) matrix I + J over f. Checks the result against
/// the closed form (n-2 when p | n, else n-1) and throws std::logic_error
/// on disagreement.
std::size_t gram_rank_law(std::size_t n, const Field & f);

/// Congruence-diagonalizes a symmetric matrix by splitting off anisotropic
/// vectors one at a time.
DiagForm diagonalize_form(const MatrixF & g);

/// Over F_q with q odd, two nondegenerate forms of equal dimension are
/// equivalent iff their determinants share a square class.
bool form_equivalent(const DiagForm & a, const DiagForm & b);

/// Returns T with T^T G T = I, or throws NotIsometricError when det(G) is a
/// nonsquare and Error(Degenerate) when G is singular.
MatrixF isometry_to_standard(const MatrixF & g);

}  // namespace ffdist
