#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

#include "dimvector.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "quiver.hpp"
#include "random.hpp"

namespace vsi {

/// A representation of a quiver over an exact field: one matrix of shape
/// dim[head] x dim[tail] per arrow.
template <class F>
struct Representation {
    QuiverPtr quiver;
    F field;
    DimVector dim;
    std::vector<FMatrix<F>> mats;

    Representation(QuiverPtr q, F f, DimVector d, std::vector<FMatrix<F>> m)
        : quiver(std::move(q)), field(std::move(f)), dim(std::move(d)), mats(std::move(m))
    {
        quiver->check_length(dim);
        if (!dim.is_nonneg())
            throw NegativeDimension(dim.to_string());
        if (mats.size() != quiver->arrows().size())
            throw ShapeMismatch("one matrix per arrow expected");
        for (std::size_t a = 0; a < mats.size(); ++a) {
            auto ar = quiver->arrows()[a];
            if (mats[a].rows() != static_cast<std::size_t>(dim[ar.head]) ||
                mats[a].cols() != static_cast<std::size_t>(dim[ar.tail]))
                throw ShapeMismatch("matrix of arrow " + std::to_string(a) + " has the wrong shape");
        }
    }

    std::size_t total_dim() const { return static_cast<std::size_t>(dim.total()); }

    /// Equality of the matrices on the same quiver, not isomorphism.
    friend bool operator==(const Representation& a, const Representation& b)
    {
        return a.quiver->vertex_names() == b.quiver->vertex_names() && a.field == b.field && a.dim == b.dim &&
               a.mats == b.mats;
    }
    std::size_t dim_at(std::size_t v) const { return static_cast<std::size_t>(dim[v]); }
};

/// Homomorphism space with an explicit basis. Each basis element is a
/// tuple of per-vertex matrices f_v : M_v -> N_v.
template <class F>
struct HomSpace {
    std::size_t dimension = 0;
    std::vector<std::vector<FMatrix<F>>> basis;
};

template <class F>
Representation<F> zero_rep(QuiverPtr q, const F& f, const DimVector& d)
{
    std::vector<FMatrix<F>> mats;
    for (auto a : q->arrows())
        mats.push_back(zeros(f, d[a.head], d[a.tail]));
    return Representation<F>(q, f, d, std::move(mats));
}

template <class F>
Representation<F> simple_rep(QuiverPtr q, const F& f, std::size_t v)
{
    return zero_rep(q, f, DimVector::unit(q->n(), v));
}

/// The indecomposable projective P(v): at u it has the paths v -> u as a
/// basis, and an arrow extends a path at its end.
template <class F>
Representation<F> projective_rep(QuiverPtr q, const F& f, std::size_t v)
{
    const auto d = q->proj_vector(v);
    std::vector<FMatrix<F>> mats;
    for (std::size_t a = 0; a < q->arrows().size(); ++a) {
        auto ar = q->arrows()[a];
        auto m = zeros(f, d[ar.head], d[ar.tail]);
        const auto& from = q->paths_between(v, ar.tail);
        for (std::size_t i = 0; i < from.size(); ++i) {
            auto ext = q->concat(from[i], q->arrow_path(a));
            m(q->local_index(*ext), i) = f.one();
        }
        mats.push_back(std::move(m));
    }
    return Representation<F>(q, f, d, std::move(mats));
}

template <class F>
Representation<F> direct_sum(const Representation<F>& m, const Representation<F>& n)
{
    if (m.quiver != n.quiver)
        throw QuiverMismatch("direct sum of representations of different quivers");
    if (!(m.field == n.field))
        throw FieldMismatch("direct sum over different fields");
    std::vector<FMatrix<F>> mats;
    for (std::size_t a = 0; a < m.mats.size(); ++a) {
        auto s = zeros(m.field, m.mats[a].rows() + n.mats[a].rows(), m.mats[a].cols() + n.mats[a].cols());
        put_block(s, 0, 0, m.mats[a]);
        put_block(s, m.mats[a].rows(), m.mats[a].cols(), n.mats[a]);
        mats.push_back(std::move(s));
    }
    return Representation<F>(m.quiver, m.field, m.dim + n.dim, std::move(mats));
}

/// Random element of R(d); deterministic for a given seed.
template <class F>
Representation<F> random_rep(QuiverPtr q, const DimVector& d, const F& f, std::uint64_t seed)
{
    q->check_length(d);
    if (!d.is_nonneg())
        throw NegativeDimension(d.to_string());
    Rng rng(seed);
    std::vector<FMatrix<F>> mats;
    for (auto a : q->arrows())
        mats.push_back(random_matrix(f, d[a.head], d[a.tail], rng));
    return Representation<F>(q, f, d, std::move(mats));
}

/// Composite of the arrow maps of M along a path (source space to target space).
template <class F>
FMatrix<F> path_map(const Representation<F>& m, std::size_t path_id)
{
    const auto& p = m.quiver->path(path_id);
    auto r = identity(m.field, m.dim_at(p.source));
    for (auto a : p.arrows)
        r = mul(m.field, m.mats[a], r);
    return r;
}

/// Base-change action (gM)_a = g_head M_a g_tail^{-1}.
template <class F>
Representation<F> act(const std::vector<FMatrix<F>>& g, const Representation<F>& m)
{
    if (g.size() != m.quiver->n())
        throw ShapeMismatch("one group element per vertex expected");
    std::vector<FMatrix<F>> mats;
    for (std::size_t a = 0; a < m.mats.size(); ++a) {
        auto ar = m.quiver->arrows()[a];
        mats.push_back(mul(m.field, mul(m.field, g[ar.head], m.mats[a]), inverse(m.field, g[ar.tail])));
    }
    return Representation<F>(m.quiver, m.field, m.dim, std::move(mats));
}

/// Random element of G(d): invertible matrices at each vertex.
template <class F>
std::vector<FMatrix<F>> random_group_element(const Quiver& q, const DimVector& d, const F& f, Rng& rng)
{
    std::vector<FMatrix<F>> g;
    for (std::size_t v = 0; v < q.n(); ++v) {
        FMatrix<F> gv;
        do {
            gv = random_matrix(f, d[v], d[v], rng);
        } while (f.is_zero(det(f, gv)));
        g.push_back(std::move(gv));
    }
    return g;
}

namespace detail {

template <class F>
void check_compatible(const Representation<F>& m, const Representation<F>& n)
{
    if (m.quiver != n.quiver && !(m.quiver->vertex_names() == n.quiver->vertex_names() &&
                                  m.quiver->arrows().size() == n.quiver->arrows().size()))
        throw QuiverMismatch("representations of different quivers");
    if (!(m.field == n.field))
        throw FieldMismatch(m.field.name() + " vs " + n.field.name());
}

/// Linear system whose kernel is Hom(M, N). Unknown f_v(r, c) sits at
/// offset[v] + r * dim M_v + c.
template <class F>
FMatrix<F> hom_equations(const Representation<F>& m, const Representation<F>& n,
                         std::vector<std::size_t>& offset)
{
    const auto& q = *m.quiver;
    const auto& f = m.field;
    offset.assign(q.n() + 1, 0);
    for (std::size_t v = 0; v < q.n(); ++v)
        offset[v + 1] = offset[v] + m.dim_at(v) * n.dim_at(v);
    std::size_t eqs = 0;
    for (auto a : q.arrows())
        eqs += n.dim_at(a.head) * m.dim_at(a.tail);
    auto sys = zeros(f, eqs, offset[q.n()]);
    std::size_t row = 0;
    for (std::size_t ai = 0; ai < q.arrows().size(); ++ai) {
        const auto a = q.arrows()[ai];
        const std::size_t h = a.head, t = a.tail;
        const auto &ma = m.mats[ai], &na = n.mats[ai];
        // (f_h M_a - N_a f_t)(r, c) = 0
        for (std::size_t r = 0; r < n.dim_at(h); ++r)
            for (std::size_t c = 0; c < m.dim_at(t); ++c, ++row) {
                for (std::size_t k = 0; k < m.dim_at(h); ++k)
                    sys(row, offset[h] + r * m.dim_at(h) + k) =
                        f.add(sys(row, offset[h] + r * m.dim_at(h) + k), ma(k, c));
                for (std::size_t k = 0; k < n.dim_at(t); ++k)
                    sys(row, offset[t] + k * m.dim_at(t) + c) =
                        f.sub(sys(row, offset[t] + k * m.dim_at(t) + c), na(r, k));
            }
    }
    return sys;
}

} // namespace detail

/// Hom_Q(M, N) as the kernel of (f_v) -> (f_head M_a - N_a f_tail)_a.
template <class F>
HomSpace<F> hom_space(const Representation<F>& m, const Representation<F>& n)
{
    detail::check_compatible(m, n);
    std::vector<std::size_t> offset;
    auto sys = detail::hom_equations(m, n, offset);
    auto ker = kernel(m.field, sys);
    HomSpace<F> out;
    out.dimension = ker.cols();
    for (std::size_t k = 0; k < ker.cols(); ++k) {
        std::vector<FMatrix<F>> fv;
        for (std::size_t v = 0; v < m.quiver->n(); ++v) {
            auto block = zeros(m.field, n.dim_at(v), m.dim_at(v));
            for (std::size_t r = 0; r < n.dim_at(v); ++r)
                for (std::size_t c = 0; c < m.dim_at(v); ++c)
                    block(r, c) = ker(offset[v] + r * m.dim_at(v) + c, k);
            fv.push_back(std::move(block));
        }
        out.basis.push_back(std::move(fv));
    }
    return out;
}

/// dim Hom_Q(M, N) without building a basis.
template <class F>
std::size_t hom_dim(const Representation<F>& m, const Representation<F>& n)
{
    detail::check_compatible(m, n);
    std::vector<std::size_t> offset;
    auto sys = detail::hom_equations(m, n, offset);
    return offset.back() - rank(m.field, sys);
}

/// dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N> (the path algebra is hereditary).
template <class F>
std::size_t ext_dim(const Representation<F>& m, const Representation<F>& n)
{
    const auto h = static_cast<std::int64_t>(hom_dim(m, n));
    const auto e = h - m.quiver->euler_form(m.dim, n.dim);
    if (e < 0)
        throw InternalError("negative Ext dimension " + std::to_string(e));
    return static_cast<std::size_t>(e);
}

template <class F>
std::size_t end_dim(const Representation<F>& m)
{
    return hom_dim(m, m);
}

/// End_Q(M) = k.
template <class F>
bool is_schur_sample(const Representation<F>& m)
{
    return end_dim(m) == 1;
}

/// Minimum of dim Hom(A, B) over `trials` random pairs with dims (a, b).
/// Upper semicontinuity makes every sample an upper bound for the generic value.
template <class F>
std::size_t generic_hom(QuiverPtr q, const DimVector& a, const DimVector& b, const F& f,
                        std::uint64_t seed, int trials = 3)
{
    if (!a.is_nonneg() || !b.is_nonneg())
        throw NegativeDimension(a.to_string() + " / " + b.to_string());
    std::size_t best = SIZE_MAX;
    for (int t = 0; t < std::max(trials, 1) && best > 0; ++t) {
        auto ma = random_rep(q, a, f, derive_seed(seed, {0x686f6d, 2u * t}));
        auto mb = random_rep(q, b, f, derive_seed(seed, {0x686f6d, 2u * t + 1}));
        best = std::min(best, hom_dim(ma, mb));
    }
    return best;
}

template <class F>
std::size_t generic_ext(QuiverPtr q, const DimVector& a, const DimVector& b, const F& f,
                        std::uint64_t seed, int trials = 3)
{
    const auto h = static_cast<std::int64_t>(generic_hom(q, a, b, f, seed, trials));
    const auto e = h - q->euler_form(a, b);
    if (e < 0)
        throw InternalError("negative generic Ext dimension");
    return static_cast<std::size_t>(e);
}

/// Isomorphism test: a random element of Hom(M, N) is invertible at every
/// vertex with high probability when M and N are isomorphic.
template <class F>
bool is_isomorphic(const Representation<F>& m, const Representation<F>& n, std::uint64_t seed,
                   int trials = 3)
{
    detail::check_compatible(m, n);
    if (!(m.dim == n.dim))
        return false;
    auto hom = hom_space(m, n);
    if (m.total_dim() == 0)
        return true;
    if (hom.dimension == 0)
        return false;
    Rng rng(seed);
    const auto& f = m.field;
    for (int t = 0; t < trials; ++t) {
        bool ok = true;
        std::vector<typename F::Element> coef;
        for (std::size_t k = 0; k < hom.dimension; ++k)
            coef.push_back(f.random(rng));
        for (std::size_t v = 0; v < m.quiver->n() && ok; ++v) {
            auto fv = zeros(f, n.dim_at(v), m.dim_at(v));
            for (std::size_t k = 0; k < hom.dimension; ++k)
                fv = add(f, fv, scale(f, coef[k], hom.basis[k][v]));
            ok = f.is_zero(det(f, fv)) == false;
        }
        if (ok)
            return true;
    }
    return false;
}

struct FittingOptions {
    int max_retries = 20;
    // Consecutive endomorphisms with an irreducible characteristic polynomial
    // needed before a summand is declared indecomposable.
    int local_checks = 40;
};

/// A summand that is indecomposable over the base field. `degree` is the
/// dimension of End/rad over the base field; after extending to the
/// algebraic closure the summand breaks into `degree` conjugate pieces of
/// dimension dim / degree.
template <class F>
struct Summand {
    Representation<F> rep;
    std::size_t degree = 1;
};

namespace detail {

template <class F>
FMatrix<F> matrix_poly_eval(const F& f, const Poly<F>& p, const FMatrix<F>& a)
{
    auto r = zeros(f, a.rows(), a.cols());
    for (std::size_t i = p.size(); i-- > 0;) {
        r = mul(f, r, a);
        for (std::size_t k = 0; k < a.rows(); ++k)
            r(k, k) = f.add(r(k, k), p[i]);
    }
    return r;
}

/// Restrict M to the complementary subrepresentations spanned by the
/// columns of first[v] and second[v].
template <class F>
std::pair<Representation<F>, Representation<F>> split_rep(const Representation<F>& m,
                                                          const std::vector<FMatrix<F>>& first,
                                                          const std::vector<FMatrix<F>>& second)
{
    const auto& q = *m.quiver;
    const auto& f = m.field;
    std::vector<FMatrix<F>> t, t_inv;
    DimVector d1(q.n()), d2(q.n());
    for (std::size_t v = 0; v < q.n(); ++v) {
        d1[v] = static_cast<std::int64_t>(first[v].cols());
        d2[v] = static_cast<std::int64_t>(second[v].cols());
        auto tv = zeros(f, m.dim_at(v), m.dim_at(v));
        put_block(tv, 0, 0, first[v]);
        put_block(tv, 0, first[v].cols(), second[v]);
        t_inv.push_back(inverse(f, tv));
        t.push_back(std::move(tv));
    }
    std::vector<FMatrix<F>> m1, m2;
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        auto ar = q.arrows()[a];
        auto conj = mul(f, mul(f, t_inv[ar.head], m.mats[a]), t[ar.tail]);
        const auto h1 = static_cast<std::size_t>(d1[ar.head]), t1 = static_cast<std::size_t>(d1[ar.tail]);
        const auto h2 = static_cast<std::size_t>(d2[ar.head]), t2 = static_cast<std::size_t>(d2[ar.tail]);
        if (!is_zero_matrix(f, get_block(conj, 0, t1, h1, t2)) ||
            !is_zero_matrix(f, get_block(conj, h1, 0, h2, t1)))
            throw InternalError("Fitting split is not a direct sum");
        m1.push_back(get_block(conj, 0, 0, h1, t1));
        m2.push_back(get_block(conj, h1, t1, h2, t2));
    }
    return {Representation<F>(m.quiver, f, d1, std::move(m1)),
            Representation<F>(m.quiver, f, d2, std::move(m2))};
}

template <class F>
void fitting_rec(const Representation<F>& m, Rng& rng, const FittingOptions& opt,
                 std::vector<Summand<F>>& out)
{
    const auto total = m.total_dim();
    if (total == 0)
        return;
    auto end = hom_space(m, m);
    if (end.dimension <= 1) {
        out.push_back({m, 1});
        return;
    }
    const auto& f = m.field;
    const auto& q = *m.quiver;
    int failures = 0, confirmations = 0;
    std::size_t degree = 1;
    for (int attempt = 0;; ++attempt) {
        // Over Q sparse small combinations are tried first; their
        // eigenvalues are far more often rational.
        std::vector<typename F::Element> coef(end.dimension, f.zero());
        if (is_rational_field_v<F> && attempt % 2 == 0) {
            for (auto& c : coef)
                if (rng.uniform(0, 2) == 0)
                    c = f.from_int(rng.uniform(-3, 3));
        } else {
            for (auto& c : coef)
                c = f.random(rng);
        }
        std::vector<FMatrix<F>> psi;
        Poly<F> cp{f.one()};
        for (std::size_t v = 0; v < q.n(); ++v) {
            auto pv = zeros(f, m.dim_at(v), m.dim_at(v));
            for (std::size_t k = 0; k < end.dimension; ++k)
                if (!f.is_zero(coef[k]))
                    pv = add(f, pv, scale(f, coef[k], end.basis[k][v]));
            if (pv.rows() > 0)
                cp = poly_mul(f, cp, charpoly(f, pv));
            psi.push_back(std::move(pv));
        }
        auto found = find_factor(f, squarefree_part(f, cp), rng);
        using Kind = typename FactorSearch<F>::Kind;
        if (found.kind == Kind::Proper) {
            std::vector<FMatrix<F>> ker, img;
            for (std::size_t v = 0; v < q.n(); ++v) {
                auto power = matrix_pow(f, matrix_poly_eval(f, found.factor, psi[v]), total);
                ker.push_back(kernel(f, power));
                img.push_back(column_basis(f, power));
            }
            auto [k_part, i_part] = split_rep(m, ker, img);
            fitting_rec(k_part, rng, opt, out);
            fitting_rec(i_part, rng, opt, out);
            return;
        }
        if (found.kind == Kind::Irreducible) {
            degree = std::max(degree, found.degree);
            if (++confirmations >= opt.local_checks) {
                out.push_back({m, degree});
                return;
            }
        } else if (++failures >= opt.max_retries) {
            throw SplitFailure("no splitting endomorphism found after " + std::to_string(opt.max_retries) +
                               " attempts for dimension vector " + m.dim.to_string());
        }
    }
}

} // namespace detail

/// Decompose M into summands indecomposable over the base field (Fitting's
/// lemma): a random endomorphism psi whose characteristic polynomial has a
/// proper factor h splits M as ker h(psi)^N (+) im h(psi)^N, N the total
/// dimension; recurse.
template <class F>
std::vector<Summand<F>> fitting_summands(const Representation<F>& m, std::uint64_t seed,
                                         FittingOptions opt = {})
{
    Rng rng(derive_seed(seed, {0x666974}));
    std::vector<Summand<F>> out;
    detail::fitting_rec(m, rng, opt, out);
    return out;
}

template <class F>
std::vector<Representation<F>> fitting_decompose(const Representation<F>& m, std::uint64_t seed,
                                                 FittingOptions opt = {})
{
    std::vector<Representation<F>> out;
    for (auto& s : fitting_summands(m, seed, opt))
        out.push_back(std::move(s.rep));
    return out;
}

} // namespace vsi
