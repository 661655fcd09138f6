#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"
#include "random.hpp"

namespace vsi {

/// Univariate polynomial as a coefficient list, lowest degree first.
template <class F>
using Poly = std::vector<typename F::Element>;

template <class F>
void poly_trim(const F& f, Poly<F>& p)
{
    while (!p.empty() && f.is_zero(p.back()))
        p.pop_back();
}

template <class F>
typename F::Element poly_eval(const F& f, const Poly<F>& p, const typename F::Element& x)
{
    auto r = f.zero();
    for (std::size_t i = p.size(); i-- > 0;)
        r = f.add(f.mul(r, x), p[i]);
    return r;
}

template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly<F> c(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
    return c;
}

template <class F>
Poly<F> poly_derivative(const F& f, const Poly<F>& p)
{
    Poly<F> d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(f.mul(f.from_int(static_cast<std::int64_t>(i)), p[i]));
    poly_trim(f, d);
    return d;
}

/// Quotient and remainder of a by a nonzero b.
template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& f, Poly<F> a, Poly<F> b)
{
    poly_trim(f, a);
    poly_trim(f, b);
    if (b.empty())
        throw InternalError("polynomial division by zero");
    if (a.size() < b.size())
        return {{}, a};
    Poly<F> q(a.size() - b.size() + 1, f.zero());
    const auto lead_inv = f.inv(b.back());
    for (std::size_t k = q.size(); k-- > 0;) {
        const auto c = f.mul(a[k + b.size() - 1], lead_inv);
        q[k] = c;
        if (f.is_zero(c))
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[k + j] = f.sub(a[k + j], f.mul(c, b[j]));
    }
    poly_trim(f, a);
    return {q, a};
}

/// Monic gcd.
template <class F>
Poly<F> poly_gcd(const F& f, Poly<F> a, Poly<F> b)
{
    poly_trim(f, a);
    poly_trim(f, b);
    while (!b.empty()) {
        auto r = poly_divmod(f, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const auto inv = f.inv(a.back());
        for (auto& c : a)
            c = f.mul(c, inv);
    }
    return a;
}

/// Characteristic polynomial det(xI - A) via reduction to Hessenberg form.
template <class F>
Poly<F> charpoly(const F& f, FMatrix<F> h)
{
    const std::size_t n = h.rows();
    for (std::size_t m = 1; m < n; ++m) {
        std::size_t i = m;
        while (i < n && f.is_zero(h(i, m - 1)))
            ++i;
        if (i == n)
            continue;
        if (i != m) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(h(i, j), h(m, j));
            for (std::size_t j = 0; j < n; ++j)
                std::swap(h(j, i), h(j, m));
        }
        const auto t_inv = f.inv(h(m, m - 1));
        for (std::size_t j = m + 1; j < n; ++j) {
            if (f.is_zero(h(j, m - 1)))
                continue;
            const auto u = f.mul(h(j, m - 1), t_inv);
            for (std::size_t k = 0; k < n; ++k)
                h(j, k) = f.sub(h(j, k), f.mul(u, h(m, k)));
            for (std::size_t k = 0; k < n; ++k)
                h(k, m) = f.add(h(k, m), f.mul(u, h(k, j)));
        }
    }
    // p[k] is the characteristic polynomial of the leading k x k block.
    std::vector<Poly<F>> p(n + 1);
    p[0] = {f.one()};
    for (std::size_t k = 1; k <= n; ++k) {
        p[k] = poly_mul(f, Poly<F>{f.neg(h(k - 1, k - 1)), f.one()}, p[k - 1]);
        auto prod = f.one();
        for (std::size_t i = 1; i < k; ++i) {
            prod = f.mul(prod, h(k - i, k - i - 1));
            const auto c = f.mul(prod, h(k - i - 1, k - 1));
            if (f.is_zero(c))
                continue;
            const auto& lower = p[k - i - 1];
            for (std::size_t d = 0; d < lower.size(); ++d)
                p[k][d] = f.sub(p[k][d], f.mul(c, lower[d]));
        }
    }
    return p[n];
}

/// a * b mod m.
template <class F>
Poly<F> poly_mulmod(const F& f, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m)
{
    return poly_divmod(f, poly_mul(f, a, b), m).second;
}

/// base^e mod m for a nonnegative big exponent.
template <class F>
Poly<F> poly_powmod(const F& f, Poly<F> base, BigInt e, const Poly<F>& m)
{
    Poly<F> r{f.one()};
    r = poly_divmod(f, r, m).second;
    base = poly_divmod(f, base, m).second;
    while (e > 0) {
        if ((e & 1) != 0)
            r = poly_mulmod(f, r, base, m);
        e >>= 1;
        if (e > 0)
            base = poly_mulmod(f, base, base, m);
    }
    return r;
}

/// Square-free part, made monic.
template <class F>
Poly<F> squarefree_part(const F& f, Poly<F> p)
{
    poly_trim(f, p);
    if (p.size() <= 1)
        return p;
    auto d = poly_derivative(f, p);
    auto s = d.empty() ? p : poly_divmod(f, p, poly_gcd(f, p, d)).first;
    return poly_gcd(f, s, Poly<F>{});
}

/// Outcome of looking for a factor of a square-free polynomial.
template <class F>
struct FactorSearch {
    enum class Kind { Proper, Irreducible, Unknown } kind = Kind::Unknown;
    Poly<F> factor;          // Proper: a nontrivial factor coprime to its cofactor
    std::size_t degree = 0;  // Irreducible: the degree
};

namespace detail {

inline BigInt mod_floor(const BigInt& a, const BigInt& m)
{
    BigInt r = a % m;
    if (r < 0)
        r += m;
    return r;
}

inline std::optional<BigInt> mod_inverse(const BigInt& a, const BigInt& m)
{
    BigInt old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1)
        return std::nullopt;
    return mod_floor(old_s, m);
}

inline BigInt int_poly_eval_mod(const std::vector<BigInt>& p, const BigInt& x, const BigInt& m)
{
    BigInt r = 0;
    for (std::size_t i = p.size(); i-- > 0;)
        r = mod_floor(r * x + p[i], m);
    return r;
}

/// Find a/b with |a|, b <= sqrt(m/2) and a = b r (mod m).
inline std::optional<Rational> rational_reconstruct(const BigInt& r, const BigInt& m)
{
    BigInt bound = boost::multiprecision::sqrt(BigInt(m / 2));
    BigInt r0 = m, r1 = mod_floor(r, m), t0 = 0, t1 = 1;
    while (r1 > bound) {
        BigInt q = r0 / r1;
        BigInt tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0 || boost::multiprecision::abs(t1) > bound)
        return std::nullopt;
    if (t1 < 0) {
        t1 = -t1;
        r1 = -r1;
    }
    return Rational(r1, t1);
}

} // namespace detail

/// All distinct rational roots of a polynomial over Q: make the square-free
/// part integral, find roots modulo a good prime by exhaustion, lift them
/// p-adically and reconstruct, keeping only exact roots.
inline std::vector<Rational> rational_roots(const RationalField& q, Poly<RationalField> p)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::lcm;
    using boost::multiprecision::numerator;
    poly_trim(q, p);
    std::vector<Rational> roots;
    if (p.size() <= 1)
        return roots;
    auto sq = poly_divmod(q, p, poly_gcd(q, p, poly_derivative(q, p))).first;
    BigInt l = 1;
    for (const auto& c : sq)
        l = lcm(l, BigInt(denominator(c)));
    std::vector<BigInt> h;
    for (const auto& c : sq)
        h.push_back(numerator(c) * (l / denominator(c)));

    for (std::uint32_t prime : {32003u, 32009u, 32027u, 32029u, 32051u, 32057u, 32059u}) {
        PrimeField fp(prime);
        Poly<PrimeField> hp;
        for (const auto& c : h)
            hp.push_back(static_cast<std::uint32_t>(detail::mod_floor(c, prime)));
        if (hp.back() == 0)
            continue;
        if (poly_gcd(fp, hp, poly_derivative(fp, hp)).size() > 1)
            continue;
        std::vector<BigInt> hd;
        for (std::size_t i = 1; i < h.size(); ++i)
            hd.push_back(h[i] * static_cast<long long>(i));
        BigInt modulus = prime;
        while (modulus < BigInt(1) << 400)
            modulus *= modulus;
        for (std::uint32_t r = 0; r < prime; ++r) {
            if (poly_eval(fp, hp, r) != 0)
                continue;
            BigInt x = r, m = prime;
            while (m < modulus) {
                m *= m;
                auto deriv = detail::int_poly_eval_mod(hd, x, m);
                auto inv = detail::mod_inverse(deriv, m);
                if (!inv)
                    break;
                x = detail::mod_floor(x - detail::int_poly_eval_mod(h, x, m) * *inv, m);
            }
            auto cand = detail::rational_reconstruct(x, m);
            if (cand && poly_eval(q, p, *cand) == 0)
                roots.push_back(*cand);
        }
        return roots;
    }
    return roots;
}

/// Find a proper factor of a monic square-free s over F_p: distinct-degree
/// splitting, then Cantor-Zassenhaus when all factors share one degree.
inline FactorSearch<PrimeField> find_factor(const PrimeField& f, const Poly<PrimeField>& s, Rng& rng)
{
    using R = FactorSearch<PrimeField>;
    const std::size_t n = s.size() - 1;
    if (n == 1)
        return {R::Kind::Irreducible, {}, 1};
    const Poly<PrimeField> x{f.zero(), f.one()};
    Poly<PrimeField> xq = x;
    for (std::size_t i = 1; i <= n; ++i) {
        xq = poly_powmod(f, xq, BigInt(f.modulus()), s);
        auto diff = xq;
        diff.resize(std::max<std::size_t>(diff.size(), 2), f.zero());
        diff[1] = f.sub(diff[1], f.one());
        auto g = poly_gcd(f, s, diff);
        if (g.size() <= 1)
            continue;
        if (g.size() - 1 < n)
            return {R::Kind::Proper, g, 0};
        if (i == n)
            return {R::Kind::Irreducible, {}, n};
        if (f.modulus() == 2)
            return {};
        BigInt e = boost::multiprecision::pow(BigInt(f.modulus()), static_cast<unsigned>(i));
        e = (e - 1) / 2;
        for (int t = 0; t < 20; ++t) {
            Poly<PrimeField> a(n);
            for (auto& c : a)
                c = f.random(rng);
            poly_trim(f, a);
            if (a.size() <= 1)
                continue;
            auto b = poly_powmod(f, a, e, s);
            if (b.empty())
                b = {f.zero()};
            b[0] = f.sub(b[0], f.one());
            auto h = poly_gcd(f, s, b);
            if (h.size() > 1 && h.size() < s.size())
                return {R::Kind::Proper, h, 0};
        }
        return {};
    }
    return {};
}

/// Over Q only linear factors are found.
inline FactorSearch<RationalField> find_factor(const RationalField& f, const Poly<RationalField>& s, Rng&)
{
    using R = FactorSearch<RationalField>;
    if (s.size() == 2)
        return {R::Kind::Irreducible, {}, 1};
    auto roots = rational_roots(f, s);
    if (roots.empty())
        return {};
    return {R::Kind::Proper, Poly<RationalField>{-roots.front(), f.one()}, 0};
}

} // namespace vsi
