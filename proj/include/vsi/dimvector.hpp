#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace vsi {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("integer addition");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("integer multiplication");
    return r;
}

/// Integer vector indexed by the vertices of a quiver in canonical order.
/// Dimension vectors, roots, weights and projective decompositions all use it.
class DimVector {
public:
    DimVector() = default;
    explicit DimVector(std::size_t n) : v_(n, 0) {}
    DimVector(std::initializer_list<std::int64_t> init) : v_(init) {}
    explicit DimVector(std::vector<std::int64_t> v) : v_(std::move(v)) {}

    static DimVector unit(std::size_t n, std::size_t i)
    {
        DimVector e(n);
        e[i] = 1;
        return e;
    }

    std::size_t size() const { return v_.size(); }
    std::int64_t& operator[](std::size_t i) { return v_[i]; }
    std::int64_t operator[](std::size_t i) const { return v_[i]; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }
    const std::vector<std::int64_t>& values() const { return v_; }

    bool is_nonneg() const
    {
        for (auto x : v_)
            if (x < 0)
                return false;
        return true;
    }
    bool is_zero() const
    {
        for (auto x : v_)
            if (x != 0)
                return false;
        return true;
    }
    std::int64_t total() const
    {
        std::int64_t s = 0;
        for (auto x : v_)
            s = checked_add(s, x);
        return s;
    }

    DimVector positive_part() const
    {
        DimVector r(size());
        for (std::size_t i = 0; i < size(); ++i)
            r[i] = v_[i] > 0 ? v_[i] : 0;
        return r;
    }
    DimVector negative_part() const
    {
        DimVector r(size());
        for (std::size_t i = 0; i < size(); ++i)
            r[i] = v_[i] < 0 ? -v_[i] : 0;
        return r;
    }

    /// True when no coordinate is nonzero in both vectors.
    bool disjoint_support(const DimVector& o) const
    {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i)
            if (v_[i] != 0 && o.v_[i] != 0)
                return false;
        return true;
    }

    /// Componentwise a <= b.
    bool leq(const DimVector& o) const
    {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i)
            if (v_[i] > o.v_[i])
                return false;
        return true;
    }

    DimVector& operator+=(const DimVector& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i)
            v_[i] = checked_add(v_[i], o.v_[i]);
        return *this;
    }
    DimVector& operator-=(const DimVector& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i)
            v_[i] = checked_add(v_[i], -o.v_[i]);
        return *this;
    }
    friend DimVector operator+(DimVector a, const DimVector& b) { return a += b; }
    friend DimVector operator-(DimVector a, const DimVector& b) { return a -= b; }
    friend DimVector operator-(DimVector a)
    {
        for (auto& x : a.v_)
            x = -x;
        return a;
    }
    friend DimVector operator*(std::int64_t s, DimVector a)
    {
        for (auto& x : a.v_)
            x = checked_mul(s, x);
        return a;
    }

    friend bool operator==(const DimVector&, const DimVector&) = default;
    friend std::ostream& operator<<(std::ostream& os, const DimVector& v) { return os << v.to_string(); }
    friend auto operator<=>(const DimVector& a, const DimVector& b) { return a.v_ <=> b.v_; }

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < size(); ++i) {
            if (i)
                s += ",";
            s += std::to_string(v_[i]);
        }
        return s + ")";
    }

    void check_same(const DimVector& o) const
    {
        if (o.size() != size())
            throw DimensionMismatch("vector lengths " + std::to_string(size()) + " and " +
                                    std::to_string(o.size()));
    }

private:
    std::vector<std::int64_t> v_;
};

inline std::int64_t dot(const DimVector& a, const DimVector& b)
{
    a.check_same(b);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s = checked_add(s, checked_mul(a[i], b[i]));
    return s;
}

/// Square integer matrix used for the Euler matrix and its relatives.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
        : n_(rows.size())
    {
        for (const auto& r : rows) {
            if (r.size() != n_)
                throw DimensionMismatch("IntMatrix rows must be square");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t size() const { return n_; }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    IntMatrix transposed() const
    {
        IntMatrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    DimVector column(std::size_t j) const
    {
        DimVector c(n_);
        for (std::size_t i = 0; i < n_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    DimVector row(std::size_t i) const
    {
        DimVector r(n_);
        for (std::size_t j = 0; j < n_; ++j)
            r[j] = (*this)(i, j);
        return r;
    }

    DimVector operator*(const DimVector& v) const
    {
        if (v.size() != n_)
            throw DimensionMismatch("matrix of size " + std::to_string(n_) + " times vector of length " +
                                    std::to_string(v.size()));
        DimVector r(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::int64_t s = 0;
            for (std::size_t j = 0; j < n_; ++j)
                s = checked_add(s, checked_mul((*this)(i, j), v[j]));
            r[i] = s;
        }
        return r;
    }

    IntMatrix operator*(const IntMatrix& b) const
    {
        if (b.n_ != n_)
            throw DimensionMismatch("matrix sizes differ");
        IntMatrix c(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k)
                for (std::size_t j = 0; j < n_; ++j)
                    c(i, j) = checked_add(c(i, j), checked_mul((*this)(i, k), b(k, j)));
        return c;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

    std::string to_string() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < n_; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < n_; ++j) {
                if (j)
                    s += ",";
                s += std::to_string((*this)(i, j));
            }
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t n_ = 0;
    std::vector<std::int64_t> a_;
};

} // namespace vsi
