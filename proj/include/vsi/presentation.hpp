#pragma once

#include <cstdint>
#include <vector>

#include "dimvector.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "quiver.hpp"
#include "random.hpp"
#include "representation.hpp"

namespace vsi {

/// A pair (gamma0, gamma1) with E^t alpha = gamma0 - gamma1.
struct ProjDecomp {
    DimVector alpha;
    DimVector gamma0;
    DimVector gamma1;

    friend bool operator==(const ProjDecomp&, const ProjDecomp&) = default;
};

inline ProjDecomp make_decomp(const Quiver& q, const DimVector& gamma0, const DimVector& gamma1)
{
    q.check_length(gamma0);
    q.check_length(gamma1);
    if (!gamma0.is_nonneg() || !gamma1.is_nonneg())
        throw NegativeDimension("projective decomposition " + gamma0.to_string() + ", " + gamma1.to_string());
    return {q.Et_inv_times(gamma0 - gamma1), gamma0, gamma1};
}

/// gamma0 and gamma1 are the positive and negative parts of E^t alpha.
inline ProjDecomp minimal_decomp(const Quiver& q, const DimVector& alpha)
{
    auto et = q.Et_times(alpha);
    return {alpha, et.positive_part(), et.negative_part()};
}

struct CanonicalDecomp {
    DimVector mu;
    DimVector gamma;
    ProjDecomp presentation;  // R^can = (mu, mu - E^t mu + gamma)
};

/// alpha = mu - (E^t)^{-1} gamma with mu, gamma >= 0 of disjoint support.
/// Vertices are processed in canonical order: the first negative entry at v
/// is cleared by adding |a_v| copies of dim P(v).
inline CanonicalDecomp canonical_decomp(const Quiver& q, const DimVector& alpha)
{
    q.check_length(alpha);
    DimVector a = alpha, gamma(q.n());
    for (std::size_t v = 0; v < q.n(); ++v) {
        if (a[v] >= 0)
            continue;
        const auto c = -a[v];
        a += c * q.proj_vector(v);
        gamma[v] = checked_add(gamma[v], c);
    }
    auto g1 = a - q.Et_times(a) + gamma;
    return {a, gamma, {alpha, a, g1}};
}

/// Element of Hom_Q(P(source), P(target)). The block of a path p : u -> v
/// has shape target[u] x source[v]; blocks are indexed by global path id.
template <class F>
struct ProjMap {
    QuiverPtr quiver;
    F field;
    DimVector source;
    DimVector target;
    std::vector<FMatrix<F>> blocks;

    const FMatrix<F>& block(std::size_t path_id) const { return blocks[path_id]; }
    FMatrix<F>& block(std::size_t path_id) { return blocks[path_id]; }

    ProjDecomp decomp() const { return make_decomp(*quiver, target, source); }

    friend bool operator==(const ProjMap& a, const ProjMap& b)
    {
        return a.source == b.source && a.target == b.target && a.blocks == b.blocks;
    }
};

/// A presentation phi : P(gamma1) -> P(gamma0).
template <class F>
using Presentation = ProjMap<F>;

/// An automorphism of P(gamma).
template <class F>
using Automorphism = ProjMap<F>;

template <class F>
ProjMap<F> zero_map(QuiverPtr q, const F& f, const DimVector& source, const DimVector& target)
{
    q->check_length(source);
    q->check_length(target);
    if (!source.is_nonneg() || !target.is_nonneg())
        throw NegativeDimension(source.to_string() + " -> " + target.to_string());
    ProjMap<F> m{q, f, source, target, {}};
    for (const auto& p : q->all_paths())
        m.blocks.push_back(zeros(f, target[p.source], source[p.target]));
    return m;
}

template <class F>
ProjMap<F> identity_map(QuiverPtr q, const F& f, const DimVector& gamma)
{
    auto m = zero_map(q, f, gamma, gamma);
    for (std::size_t v = 0; v < q->n(); ++v)
        m.block(q->constant_path(v)) = identity(f, gamma[v]);
    return m;
}

template <class F>
Presentation<F> random_presentation(QuiverPtr q, const ProjDecomp& d, const F& f, std::uint64_t seed)
{
    auto m = zero_map(q, f, d.gamma1, d.gamma0);
    Rng rng(seed);
    for (auto& b : m.blocks)
        b = random_matrix(f, b.rows(), b.cols(), rng);
    return m;
}

/// Random element of Aut P(gamma): random path coefficients with the
/// constant-path blocks resampled until invertible.
template <class F>
Automorphism<F> random_aut(QuiverPtr q, const DimVector& gamma, const F& f, std::uint64_t seed)
{
    auto m = zero_map(q, f, gamma, gamma);
    Rng rng(seed);
    for (std::size_t id = 0; id < m.blocks.size(); ++id) {
        auto& b = m.blocks[id];
        const auto& p = q->path(id);
        do {
            b = random_matrix(f, b.rows(), b.cols(), rng);
        } while (p.length() == 0 && f.is_zero(det(f, b)));
    }
    return m;
}

/// a o b, where b : P(s) -> P(t) and a : P(t) -> P(r). A path p of a and a
/// path q of b combine to the path "p then q".
template <class F>
ProjMap<F> compose(const ProjMap<F>& a, const ProjMap<F>& b)
{
    if (!(a.source == b.target))
        throw ShapeMismatch("cannot compose: " + a.source.to_string() + " vs " + b.target.to_string());
    if (!(a.field == b.field))
        throw FieldMismatch(a.field.name() + " vs " + b.field.name());
    const auto& q = *a.quiver;
    const auto& f = a.field;
    auto c = zero_map(a.quiver, f, b.source, a.target);
    const auto np = q.all_paths().size();
    for (std::size_t p = 0; p < np; ++p) {
        if (a.blocks[p].empty())
            continue;
        for (std::size_t r = 0; r < np; ++r) {
            auto pr = q.concat(p, r);
            if (!pr || b.blocks[r].empty())
                continue;
            c.blocks[*pr] = add(f, c.blocks[*pr], mul(f, a.blocks[p], b.blocks[r]));
        }
    }
    return c;
}

/// (g0, g1) phi = g0 o phi o g1.
template <class F>
Presentation<F> apply_action(const Automorphism<F>& g0, const Presentation<F>& phi, const Automorphism<F>& g1)
{
    if (!(g0.source == phi.target) || !(g1.target == phi.source))
        throw ShapeMismatch("automorphisms do not match the presentation");
    return compose(compose(g0, phi), g1);
}

/// phi (+) 1_{P(gamma)}.
template <class F>
Presentation<F> stabilize(const Presentation<F>& phi, const DimVector& gamma)
{
    const auto& q = *phi.quiver;
    q.check_length(gamma);
    if (!gamma.is_nonneg())
        throw NegativeDimension(gamma.to_string());
    auto s = zero_map(phi.quiver, phi.field, phi.source + gamma, phi.target + gamma);
    for (std::size_t id = 0; id < s.blocks.size(); ++id)
        put_block(s.blocks[id], 0, 0, phi.blocks[id]);
    for (std::size_t v = 0; v < q.n(); ++v)
        put_block(s.block(q.constant_path(v)), phi.target[v], phi.source[v], identity(phi.field, gamma[v]));
    return s;
}

/// chi_sigma(g) = prod_v det(g_vv)^sigma_v.
template <class F>
typename F::Element character(const Automorphism<F>& g, const DimVector& sigma)
{
    const auto& f = g.field;
    auto r = f.one();
    for (std::size_t v = 0; v < g.quiver->n(); ++v) {
        if (sigma[v] < 0)
            throw NegativeDimension("character weight " + sigma.to_string());
        r = f.mul(r, f.pow(det(f, g.block(g.quiver->constant_path(v))), static_cast<std::uint64_t>(sigma[v])));
    }
    return r;
}

/// Matrix of Hom_Q(phi, V) : Hom(P(gamma0), V) -> Hom(P(gamma1), V). Block
/// (v, u) is the sum over paths p : u -> v of phi_p^t (x) V_p. Row index
/// off_row[v] + j * dim V_v + b, column index off_col[u] + i * dim V_u + c.
template <class F>
FMatrix<F> hom_matrix(const Presentation<F>& phi, const Representation<F>& v)
{
    if (!(phi.field == v.field))
        throw FieldMismatch(phi.field.name() + " vs " + v.field.name());
    if (phi.quiver != v.quiver && phi.quiver->vertex_names() != v.quiver->vertex_names())
        throw QuiverMismatch("presentation and representation live on different quivers");
    const auto& q = *phi.quiver;
    const auto& f = phi.field;
    const std::size_t n = q.n();
    std::vector<std::size_t> off_row(n + 1, 0), off_col(n + 1, 0);
    for (std::size_t x = 0; x < n; ++x) {
        off_row[x + 1] = off_row[x] + v.dim_at(x) * static_cast<std::size_t>(phi.source[x]);
        off_col[x + 1] = off_col[x] + v.dim_at(x) * static_cast<std::size_t>(phi.target[x]);
    }
    auto h = zeros(f, off_row[n], off_col[n]);
    if (h.rows() == 0 || h.cols() == 0)
        return h;
    for (std::size_t id = 0; id < q.all_paths().size(); ++id) {
        const auto& p = q.path(id);
        const auto& b = phi.block(id);
        if (b.empty() || v.dim_at(p.source) == 0 || v.dim_at(p.target) == 0)
            continue;
        auto k = kron(f, transpose(b), path_map(v, id));
        const std::size_t r0 = off_row[p.target], c0 = off_col[p.source];
        for (std::size_t i = 0; i < k.rows(); ++i)
            for (std::size_t j = 0; j < k.cols(); ++j)
                h(r0 + i, c0 + j) = f.add(h(r0 + i, c0 + j), k(i, j));
    }
    return h;
}

/// C_V(phi) = +-det Hom_Q(phi, V); requires <alpha, dim V> = 0. With
/// x = gamma0 * dim V and y = gamma1 * dim V taken entrywise, the sign is
/// (-1)^(sum_{v<w} x_v (x_w + y_w)), which makes the value independent of
/// stabilization in the vertex-major layout of hom_matrix.
template <class F>
typename F::Element cv_value(const Presentation<F>& phi, const Representation<F>& v)
{
    const auto alpha = phi.decomp().alpha;
    const auto e = phi.quiver->euler_form(alpha, v.dim);
    if (e != 0)
        throw NonSquareWeight("<" + alpha.to_string() + ", " + v.dim.to_string() + "> = " + std::to_string(e));
    auto h = hom_matrix(phi, v);
    if (h.rows() == 0)
        return phi.field.one();
    std::int64_t parity = 0, x_before = 0;
    for (std::size_t w = 0; w < phi.quiver->n(); ++w) {
        const auto d = static_cast<std::int64_t>(v.dim_at(w));
        parity += (x_before % 2) * ((phi.target[w] * d + phi.source[w] * d) % 2);
        x_before += phi.target[w] * d;
    }
    auto r = det(phi.field, h);
    return parity % 2 ? phi.field.neg(r) : r;
}

/// The weight of C_V on presentation spaces is dim V on both sides.
template <class F>
DimVector cv_weight(const Representation<F>& v)
{
    return v.dim;
}

/// Canonical projective presentation P(alpha - E^t alpha) -> P(alpha) of M.
/// The columns at v are grouped by the arrows a : u -> v in arrow order,
/// alpha_u columns each. The constant path at v carries M_a in group a, the
/// path along a carries -1.
template <class F>
Presentation<F> canonical_presentation(const Representation<F>& m)
{
    const auto& q = *m.quiver;
    const auto& f = m.field;
    const auto alpha = m.dim;
    DimVector g1(q.n());
    std::vector<std::size_t> group_start(q.arrows().size());
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        const auto ar = q.arrows()[a];
        group_start[a] = static_cast<std::size_t>(g1[ar.head]);
        g1[ar.head] += alpha[ar.tail];
    }
    auto phi = zero_map(m.quiver, f, g1, alpha);
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        const auto ar = q.arrows()[a];
        put_block(phi.block(q.constant_path(ar.head)), 0, group_start[a], m.mats[a]);
        put_block(phi.block(q.arrow_path(a)), 0, group_start[a],
                  scale(f, f.neg(f.one()), identity(f, alpha[ar.tail])));
    }
    return phi;
}

template <class F>
Presentation<F> zeta(const Representation<F>& m)
{
    return canonical_presentation(m);
}

namespace detail {

/// Matrix of phi at vertex x: P(gamma1)_x -> P(gamma0)_x in the bases
/// (v, j, path v -> x) and (u, i, path u -> x), vertex-major.
template <class F>
struct VertexBasis {
    std::vector<std::size_t> offset;  // offset[u] of the (u, *, *) block
    std::size_t size = 0;
};

template <class F>
VertexBasis<F> vertex_basis(const Quiver& q, const DimVector& gamma, std::size_t x)
{
    VertexBasis<F> b;
    b.offset.assign(q.n() + 1, 0);
    for (std::size_t u = 0; u < q.n(); ++u)
        b.offset[u + 1] = b.offset[u] + static_cast<std::size_t>(gamma[u]) * q.paths_between(u, x).size();
    b.size = b.offset[q.n()];
    return b;
}

} // namespace detail

/// P(gamma0) / im(phi) with the induced arrow maps.
template <class F>
Representation<F> cokernel(const Presentation<F>& phi)
{
    const auto& q = *phi.quiver;
    const auto& f = phi.field;
    const std::size_t n = q.n();
    std::vector<detail::VertexBasis<F>> b0, b1;
    for (std::size_t x = 0; x < n; ++x) {
        b0.push_back(detail::vertex_basis<F>(q, phi.target, x));
        b1.push_back(detail::vertex_basis<F>(q, phi.source, x));
    }
    auto idx = [&](const detail::VertexBasis<F>& b, std::size_t u, std::size_t i, std::size_t x, std::size_t path) {
        return b.offset[u] + i * q.paths_between(u, x).size() + q.local_index(path);
    };

    // Per vertex: T_x = [image basis | complement], and the complement part.
    std::vector<FMatrix<F>> t_inv, comp;
    DimVector dim(n);
    for (std::size_t x = 0; x < n; ++x) {
        auto phix = zeros(f, b0[x].size, b1[x].size);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t s : q.paths_between(v, x))
                for (std::size_t j = 0; j < static_cast<std::size_t>(phi.source[v]); ++j) {
                    const auto col = idx(b1[x], v, j, x, s);
                    for (std::size_t u = 0; u < n; ++u)
                        for (std::size_t p : q.paths_between(u, v)) {
                            const auto& blk = phi.block(p);
                            const auto ps = *q.concat(p, s);
                            for (std::size_t i = 0; i < blk.rows(); ++i)
                                if (!f.is_zero(blk(i, j))) {
                                    const auto row = idx(b0[x], u, i, x, ps);
                                    phix(row, col) = f.add(phix(row, col), blk(i, j));
                                }
                        }
                }
        auto img = column_basis(f, phix);
        auto ext = zeros(f, b0[x].size, img.cols() + b0[x].size);
        put_block(ext, 0, 0, img);
        put_block(ext, 0, img.cols(), identity(f, b0[x].size));
        auto ech = rref(f, ext);
        auto t = zeros(f, b0[x].size, b0[x].size);
        put_block(t, 0, 0, img);
        std::size_t k = img.cols();
        for (auto pc : ech.pivots)
            if (pc >= img.cols())
                t(pc - img.cols(), k++) = f.one();
        comp.push_back(get_block(t, 0, img.cols(), b0[x].size, b0[x].size - img.cols()));
        dim[x] = static_cast<std::int64_t>(b0[x].size - img.cols());
        t_inv.push_back(inverse(f, t));
    }

    std::vector<FMatrix<F>> mats;
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        const auto ar = q.arrows()[a];
        const std::size_t x = ar.tail, y = ar.head;
        auto shift = zeros(f, b0[y].size, b0[x].size);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t p : q.paths_between(u, x)) {
                const auto pa = *q.concat(p, q.arrow_path(a));
                for (std::size_t i = 0; i < static_cast<std::size_t>(phi.target[u]); ++i)
                    shift(idx(b0[y], u, i, y, pa), idx(b0[x], u, i, x, p)) = f.one();
            }
        auto full = mul(f, t_inv[y], mul(f, shift, comp[x]));
        const auto img_y = b0[y].size - static_cast<std::size_t>(dim[y]);
        mats.push_back(get_block(full, img_y, 0, static_cast<std::size_t>(dim[y]), comp[x].cols()));
    }
    return Representation<F>(phi.quiver, f, dim, std::move(mats));
}

/// Rank of phi as a linear map, summed over vertices.
template <class F>
std::size_t presentation_rank(const Presentation<F>& phi)
{
    auto c = cokernel(phi);
    const auto& q = *phi.quiver;
    return static_cast<std::size_t>(q.Et_inv_times(phi.target).total() - c.dim.total());
}

} // namespace vsi
