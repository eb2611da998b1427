#include "ffdist/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace ffdist {

MatrixF::MatrixF(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, Elem{0})
{
}

MatrixF MatrixF::identity(const Field & f, std::size_t n)
{
    MatrixF m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = f.one();
    return m;
}

MatrixF MatrixF::identity_plus_ones(const Field & f, std::size_t n)
{
    MatrixF m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = i == j ? f.from_int(2) : f.one();
    return m;
}

MatrixF MatrixF::from_ints(const Field & f, const std::vector<std::vector<long long>> & rows)
{
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    MatrixF m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = f.from_int(rows[i][j]);
    }
    return m;
}

MatrixF MatrixF::transpose() const
{
    MatrixF t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

MatrixF MatrixF::operator*(const MatrixF & rhs) const
{
    if (!(field_ == rhs.field_))
        throw Error(ErrorKind::FieldMismatch, "matrix product over different fields");
    if (cols_ != rhs.rows_)
        throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    MatrixF out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t l = 0; l < cols_; ++l) {
            const Elem a = (*this)(i, l);
            if (a.code == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) = field_.add(out(i, j), field_.mul(a, rhs(l, j)));
        }
    return out;
}

bool MatrixF::is_symmetric() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

bool DiagForm::nondegenerate() const noexcept
{
    for (auto e : entries)
        if (e.code == 0)
            return false;
    return true;
}

Elem DiagForm::determinant() const
{
    Elem d = field.one();
    for (auto e : entries)
        d = field.mul(d, e);
    return d;
}

namespace {

// Row-reduces in place; returns the rank and accumulates the determinant
// (meaningful only for square input).
std::size_t eliminate(MatrixF & m, Elem * det)
{
    const Field & f = m.field();
    std::size_t r = 0;
    Elem d = f.one();
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows() && m(pivot, c).code == 0)
            ++pivot;
        if (pivot == m.rows()) {
            d = f.zero();
            continue;
        }
        if (pivot != r) {
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(pivot, j), m(r, j));
            d = f.neg(d);
        }
        const Elem pv = m(r, c);
        d = f.mul(d, pv);
        const Elem pinv = f.inv(pv);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const Elem factor = f.mul(m(i, c), pinv);
            if (factor.code == 0)
                continue;
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        ++r;
    }
    if (r < m.rows())
        d = f.zero();
    if (det)
        *det = d;
    return r;
}

}  // namespace

std::size_t rank(const MatrixF & m)
{
    MatrixF work = m;
    return eliminate(work, nullptr);
}

Elem determinant(const MatrixF & m)
{
    if (m.rows() != m.cols())
        throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    if (m.rows() == 0)
        return m.field().one();
    MatrixF work = m;
    Elem d;
    eliminate(work, &d);
    return d;
}

std::size_t gram_rank_law(std::size_t n, const Field & f)
{
    if (n < 2)
        throw Error(ErrorKind::InvalidArgument, "gram_rank_law needs n >= 2");
    const std::size_t r = rank(MatrixF::identity_plus_ones(f, n - 1));
    const std::size_t expected = n % f.p() == 0 ? n - 2 : n - 1;
    if (r != expected)
        throw std::logic_error("rank(I+J) = " + std::to_string(r) + " disagrees with closed form "
                               + std::to_string(expected));
    return r;
}

DiagForm diagonalize_form(const MatrixF & g)
{
    if (!g.is_symmetric())
        throw Error(ErrorKind::NotSymmetric, "form matrix must be symmetric");
    const Field & f = g.field();
    const std::size_t n = g.rows();
    MatrixF a = g;
    MatrixF basis = MatrixF::identity(f, n);

    auto swap_index = [&](std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t t = 0; t < n; ++t) {
            std::swap(a(i, t), a(j, t));
            std::swap(basis(t, i), basis(t, j));
        }
        for (std::size_t t = 0; t < n; ++t)
            std::swap(a(t, i), a(t, j));
    };
    // b_dst <- b_dst + c * b_src, applied as a congruence.
    auto add_multiple = [&](std::size_t dst, std::size_t src, Elem c) {
        for (std::size_t t = 0; t < n; ++t) {
            a(dst, t) = f.add(a(dst, t), f.mul(c, a(src, t)));
            basis(t, dst) = f.add(basis(t, dst), f.mul(c, basis(t, src)));
        }
        for (std::size_t t = 0; t < n; ++t)
            a(t, dst) = f.add(a(t, dst), f.mul(c, a(t, src)));
    };

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t piv = i;
        while (piv < n && a(piv, piv).code == 0)
            ++piv;
        if (piv == n) {
            // All remaining norms vanish; u + v has norm 2<u,v> != 0 when <u,v> != 0.
            bool found = false;
            for (std::size_t u = i; u < n && !found; ++u)
                for (std::size_t v = u + 1; v < n && !found; ++v)
                    if (a(u, v).code != 0) {
                        add_multiple(u, v, f.one());
                        piv = u;
                        found = true;
                    }
            if (!found)
                break;  // remaining block is zero
        }
        swap_index(i, piv);
        const Elem inv_norm = f.inv(a(i, i));
        for (std::size_t r = i + 1; r < n; ++r) {
            const Elem c = f.mul(a(r, i), inv_norm);
            if (c.code != 0)
                add_multiple(r, i, f.neg(c));
        }
    }

    std::vector<Elem> entries(n);
    for (std::size_t i = 0; i < n; ++i)
        entries[i] = a(i, i);
    return DiagForm{f, std::move(entries), std::move(basis)};
}

bool form_equivalent(const DiagForm & a, const DiagForm & b)
{
    if (!(a.field == b.field))
        throw Error(ErrorKind::FieldMismatch, "forms over different fields");
    if (a.dim() != b.dim())
        throw Error(ErrorKind::DimensionMismatch, "forms of different dimension");
    if (!a.nondegenerate() || !b.nondegenerate())
        throw Error(ErrorKind::Degenerate, "equivalence test requires nondegenerate forms");
    return a.field.square_class(a.determinant()) == b.field.square_class(b.determinant());
}

MatrixF isometry_to_standard(const MatrixF & g)
{
    const Field & f = g.field();
    DiagForm diag = diagonalize_form(g);
    if (!diag.nondegenerate())
        throw Error(ErrorKind::Degenerate, "form is singular");
    const Elem det = determinant(g);
    if (f.square_class(det) == SquareClass::NonSquare)
        throw NotIsometricError(det, "determinant " + std::to_string(det.code)
                                         + " is a nonsquare; the form is not isometric to the standard one");

    const std::size_t n = g.rows();
    MatrixF t = diag.basis;
    auto scale_column = [&](std::size_t c, Elem s) {
        for (std::size_t r = 0; r < n; ++r)
            t(r, c) = f.mul(t(r, c), s);
    };

    std::vector<std::size_t> nonsquares;
    for (std::size_t i = 0; i < n; ++i) {
        if (auto root = f.sqrt(diag.entries[i]))
            scale_column(i, f.inv(*root));
        else
            nonsquares.push_back(i);
    }
    // Even count, since det is a square.
    for (std::size_t k = 0; k + 1 < nonsquares.size(); k += 2) {
        const std::size_t i = nonsquares[k], j = nonsquares[k + 1];
        const Elem a = diag.entries[i], b = diag.entries[j];
        std::optional<std::pair<Elem, Elem>> sol;
        const Elem b_inv = f.inv(b);
        for (std::uint32_t xc = 0; xc < f.q() && !sol; ++xc) {
            const Elem x{xc};
            const Elem rhs = f.mul(f.sub(f.one(), f.mul(a, f.sqr(x))), b_inv);
            if (auto y = f.sqrt(rhs))
                sol = std::pair{x, *y};
        }
        if (!sol)
            throw std::logic_error("binary form failed to represent 1");
        const auto [x, y] = *sol;
        // u = x b_i + y b_j has norm 1; w = -b y b_i + a x b_j is orthogonal to u with norm ab.
        const Elem w_scale = f.inv(*f.sqrt(f.mul(a, b)));
        for (std::size_t r = 0; r < n; ++r) {
            const Elem bi = t(r, i), bj = t(r, j);
            t(r, i) = f.add(f.mul(x, bi), f.mul(y, bj));
            t(r, j) = f.mul(w_scale, f.add(f.mul(f.neg(f.mul(b, y)), bi), f.mul(f.mul(a, x), bj)));
        }
    }

    if (!(t.transpose() * g * t == MatrixF::identity(f, n)))
        throw std::logic_error("isometry_to_standard produced T with T^T G T != I");
    return t;
}

}  // namespace ffdist
