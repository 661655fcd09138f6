#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace vsi {

/// Dense row-major matrix. Arithmetic lives in free functions that take the
/// field explicitly, since F_p elements carry no modulus of their own.
template <class E>
class Matrix {
public:
    using Element = E;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const E& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    E& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const E& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<E>& data() const { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<E> data_;
};

template <class F>
using FMatrix = Matrix<typename F::Element>;

template <class F>
FMatrix<F> zeros(const F& f, std::size_t r, std::size_t c)
{
    return FMatrix<F>(r, c, f.zero());
}

template <class F>
FMatrix<F> identity(const F& f, std::size_t n)
{
    auto m = zeros(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = f.one();
    return m;
}

template <class F>
FMatrix<F> random_matrix(const F& f, std::size_t r, std::size_t c, Rng& rng)
{
    auto m = zeros(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = f.random(rng);
    return m;
}

template <class F>
FMatrix<F> mul(const F& f, const FMatrix<F>& a, const FMatrix<F>& b)
{
    if (a.cols() != b.rows())
        throw ShapeMismatch("matrix product " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
    auto c = zeros(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (f.is_zero(aik))
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
        }
    return c;
}

template <class F>
FMatrix<F> add(const F& f, const FMatrix<F>& a, const FMatrix<F>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("matrix sum");
    auto c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = f.add(a(i, j), b(i, j));
    return c;
}

template <class F>
FMatrix<F> sub(const F& f, const FMatrix<F>& a, const FMatrix<F>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("matrix difference");
    auto c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = f.sub(a(i, j), b(i, j));
    return c;
}

template <class F>
FMatrix<F> scale(const F& f, const typename F::Element& s, const FMatrix<F>& a)
{
    auto c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = f.mul(s, a(i, j));
    return c;
}

template <class E>
Matrix<E> transpose(const Matrix<E>& a)
{
    Matrix<E> t(a.cols(), a.rows(), E{});
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t(j, i) = a(i, j);
    return t;
}

/// Kronecker product: (a ⊗ b)(i*b.rows()+k, j*b.cols()+l) = a(i,j) b(k,l).
template <class F>
FMatrix<F> kron(const F& f, const FMatrix<F>& a, const FMatrix<F>& b)
{
    auto c = zeros(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (f.is_zero(a(i, j)))
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = f.mul(a(i, j), b(k, l));
        }
    return c;
}

/// Copy `block` into `m` with its top-left corner at (r0, c0).
template <class E>
void put_block(Matrix<E>& m, std::size_t r0, std::size_t c0, const Matrix<E>& block)
{
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j)
            m(r0 + i, c0 + j) = block(i, j);
}

template <class E>
Matrix<E> get_block(const Matrix<E>& m, std::size_t r0, std::size_t c0, std::size_t rows,
                    std::size_t cols)
{
    Matrix<E> b(rows, cols, E{});
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            b(i, j) = m(r0 + i, c0 + j);
    return b;
}

template <class F>
bool is_zero_matrix(const F& f, const FMatrix<F>& a)
{
    return std::all_of(a.data().begin(), a.data().end(),
                       [&](const auto& x) { return f.is_zero(x); });
}

template <class F>
struct Echelon {
    FMatrix<F> reduced;               // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination to reduced row echelon form.
template <class F>
Echelon<F> rref(const F& f, FMatrix<F> a)
{
    Echelon<F> out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && f.is_zero(a(piv, col)))
            ++piv;
        if (piv == a.rows())
            continue;
        if (piv != row)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(piv, j), a(row, j));
        const auto inv = f.inv(a(row, col));
        for (std::size_t j = col; j < a.cols(); ++j)
            a(row, j) = f.mul(a(row, j), inv);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || f.is_zero(a(i, col)))
                continue;
            const auto factor = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a(i, j) = f.sub(a(i, j), f.mul(factor, a(row, j)));
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(a);
    return out;
}

template <class F>
std::size_t rank(const F& f, const FMatrix<F>& a)
{
    if (a.empty())
        return 0;
    // eliminate along the shorter side
    if (a.rows() > a.cols())
        return rref(f, transpose(a)).pivots.size();
    return rref(f, a).pivots.size();
}

/// Basis of the right null space {x : a x = 0}, one basis vector per column.
template <class F>
FMatrix<F> kernel(const F& f, const FMatrix<F>& a)
{
    const std::size_t n = a.cols();
    if (a.rows() == 0)
        return identity(f, n);
    auto ech = rref(f, a);
    std::vector<bool> is_pivot(n, false);
    for (auto c : ech.pivots)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    auto basis = zeros(f, n, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const auto fc = free_cols[k];
        basis(fc, k) = f.one();
        for (std::size_t r = 0; r < ech.pivots.size(); ++r)
            basis(ech.pivots[r], k) = f.neg(ech.reduced(r, fc));
    }
    return basis;
}

/// Columns of `a` forming a basis of its column space.
template <class F>
FMatrix<F> column_basis(const F& f, const FMatrix<F>& a)
{
    auto ech = rref(f, a);
    auto out = zeros(f, a.rows(), ech.pivots.size());
    for (std::size_t k = 0; k < ech.pivots.size(); ++k)
        for (std::size_t i = 0; i < a.rows(); ++i)
            out(i, k) = a(i, ech.pivots[k]);
    return out;
}

namespace detail {

/// Bareiss fraction-free determinant of a square integer matrix.
inline BigInt bareiss_det(std::vector<std::vector<BigInt>> m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0)
                ++swap;
            if (swap == n)
                return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

} // namespace detail

/// Exact determinant. Over Q the rows are scaled to integers and Bareiss
/// elimination is used; over F_p plain Gaussian elimination.
template <class F>
typename F::Element det(const F& f, const FMatrix<F>& a)
{
    if (a.rows() != a.cols())
        throw ShapeMismatch("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if constexpr (is_rational_field_v<F>) {
        using boost::multiprecision::denominator;
        using boost::multiprecision::lcm;
        using boost::multiprecision::numerator;
        std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
        BigInt scale_total = 1;
        for (std::size_t i = 0; i < n; ++i) {
            BigInt l = 1;
            for (std::size_t j = 0; j < n; ++j)
                l = lcm(l, BigInt(denominator(a(i, j))));
            for (std::size_t j = 0; j < n; ++j)
                m[i][j] = numerator(a(i, j)) * (l / denominator(a(i, j)));
            scale_total *= l;
        }
        return Rational(detail::bareiss_det(std::move(m)), scale_total);
    } else {
        auto m = a;
        auto result = f.one();
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            while (piv < n && f.is_zero(m(piv, k)))
                ++piv;
            if (piv == n)
                return f.zero();
            if (piv != k) {
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(m(piv, j), m(k, j));
                result = f.neg(result);
            }
            result = f.mul(result, m(k, k));
            const auto inv = f.inv(m(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                if (f.is_zero(m(i, k)))
                    continue;
                const auto factor = f.mul(m(i, k), inv);
                for (std::size_t j = k; j < n; ++j)
                    m(i, j) = f.sub(m(i, j), f.mul(factor, m(k, j)));
            }
        }
        return result;
    }
}

/// Inverse of a square matrix, or nullopt if singular.
template <class F>
std::optional<FMatrix<F>> try_inverse(const F& f, const FMatrix<F>& a)
{
    if (a.rows() != a.cols())
        throw ShapeMismatch("inverse of non-square matrix");
    const std::size_t n = a.rows();
    auto aug = zeros(f, n, 2 * n);
    put_block(aug, 0, 0, a);
    put_block(aug, 0, n, identity(f, n));
    auto ech = rref(f, std::move(aug));
    if (ech.pivots.size() < n || (n > 0 && ech.pivots[n - 1] != n - 1))
        return std::nullopt;
    return get_block(ech.reduced, 0, n, n, n);
}

template <class F>
FMatrix<F> inverse(const F& f, const FMatrix<F>& a)
{
    auto inv = try_inverse(f, a);
    if (!inv)
        throw InternalError("inverse of a singular matrix");
    return *inv;
}

/// Unique solution x of a x = b, or nullopt when the system is inconsistent
/// or underdetermined.
template <class F>
std::optional<std::vector<typename F::Element>> solve_unique(const F& f, const FMatrix<F>& a,
                                                             const std::vector<typename F::Element>& b)
{
    if (b.size() != a.rows())
        throw ShapeMismatch("right-hand side length");
    const std::size_t n = a.cols();
    auto aug = zeros(f, a.rows(), n + 1);
    put_block(aug, 0, 0, a);
    for (std::size_t i = 0; i < a.rows(); ++i)
        aug(i, n) = b[i];
    auto ech = rref(f, std::move(aug));
    if (!ech.pivots.empty() && ech.pivots.back() == n)
        return std::nullopt;
    if (ech.pivots.size() != n)
        return std::nullopt;
    std::vector<typename F::Element> x(n, f.zero());
    for (std::size_t r = 0; r < n; ++r)
        x[ech.pivots[r]] = ech.reduced(r, n);
    return x;
}

template <class F>
FMatrix<F> matrix_pow(const F& f, FMatrix<F> a, std::uint64_t e)
{
    auto r = identity(f, a.rows());
    while (e) {
        if (e & 1)
            r = mul(f, r, a);
        e >>= 1;
        if (e)
            a = mul(f, a, a);
    }
    return r;
}

} // namespace vsi
