#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "dimvector.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "quiver.hpp"
#include "representation.hpp"

namespace vsi {

/// E + E^t positive definite, by exact leading principal minors.
inline bool is_dynkin(const Quiver& q)
{
    const auto& E = q.euler().E;
    RationalField qf;
    for (std::size_t k = 1; k <= q.n(); ++k) {
        FMatrix<RationalField> m(k, k, Rational(0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                m(i, j) = Rational(E(i, j) + E(j, i));
        if (det(qf, m) <= 0)
            return false;
    }
    return true;
}

/// Nonzero alpha >= 0 with tits form 1 and entries at most `bound`, ordered by
/// height and then lexicographically.
inline std::vector<DimVector> real_roots_bounded(const Quiver& q, std::int64_t bound)
{
    std::vector<DimVector> out;
    DimVector a(q.n());
    while (true) {
        std::size_t v = 0;
        while (v < q.n() && a[v] == bound)
            a[v++] = 0;
        if (v == q.n())
            break;
        ++a[v];
        if (q.tits_form(a) == 1)
            out.push_back(a);
    }
    std::sort(out.begin(), out.end(), [](const DimVector& x, const DimVector& y) {
        return x.total() != y.total() ? x.total() < y.total() : x < y;
    });
    return out;
}

inline std::vector<DimVector> positive_roots(const Quiver& q)
{
    if (!is_dynkin(q))
        throw NotDynkin("the quiver is not of Dynkin type");
    return real_roots_bounded(q, 6);
}

struct RootVertex {
    enum class Kind { Root, Shifted };
    Kind kind = Kind::Root;
    DimVector vector;  // beta, or dim P(v) for a shifted projective
    std::size_t vertex = 0;

    /// beta for a root, -dim P(v) for a shifted projective.
    DimVector lambda_vector() const { return kind == Kind::Root ? vector : -vector; }

    friend bool operator==(const RootVertex&, const RootVertex&) = default;
};

inline std::vector<RootVertex> vertices_from_roots(const Quiver& q, const std::vector<DimVector>& roots)
{
    std::vector<RootVertex> out;
    for (const auto& r : roots)
        out.push_back({RootVertex::Kind::Root, r, 0});
    for (std::size_t v = 0; v < q.n(); ++v)
        out.push_back({RootVertex::Kind::Shifted, q.proj_vector(v), v});
    return out;
}

inline std::vector<RootVertex> complex_vertices(const Quiver& q)
{
    return vertices_from_roots(q, positive_roots(q));
}

/// Source of ext values between dimension vectors. Randomized mode uses the
/// generic_ext oracle; exact mode fixes one Schur representation per vector
/// and computes Ext exactly.
template <class F>
class ExtOracle {
public:
    enum class Mode { Randomized, Exact };

    ExtOracle(QuiverPtr q, F f, std::uint64_t seed, Mode mode = Mode::Randomized, int trials = 3)
        : q_(std::move(q)), f_(std::move(f)), seed_(seed), mode_(mode), trials_(trials)
    {
    }

    Mode mode() const { return mode_; }

    std::size_t ext(const DimVector& a, const DimVector& b)
    {
        auto key = std::make_pair(a, b);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
        std::size_t e;
        if (mode_ == Mode::Randomized) {
            e = generic_ext(q_, a, b, f_, derive_seed(seed_, {0x6f72, cache_.size()}), trials_);
        } else {
            e = ext_dim(schur_rep(a), schur_rep(b));
        }
        cache_.emplace(key, e);
        return e;
    }

    const Representation<F>& schur_rep(const DimVector& a)
    {
        if (auto it = reps_.find(a); it != reps_.end())
            return it->second;
        for (std::uint64_t t = 0; t < 64; ++t) {
            auto m = random_rep(q_, a, f_, derive_seed(seed_, {0x7363, reps_.size(), t}));
            if (is_schur_sample(m))
                return reps_.emplace(a, std::move(m)).first->second;
        }
        throw InvariantViolation("no Schur representation found for " + a.to_string());
    }

private:
    QuiverPtr q_;
    F f_;
    std::uint64_t seed_;
    Mode mode_;
    int trials_;
    std::map<std::pair<DimVector, DimVector>, std::size_t> cache_;
    std::map<DimVector, Representation<F>> reps_;
};

template <class F>
bool compatible(const RootVertex& x, const RootVertex& y, ExtOracle<F>& oracle)
{
    using K = RootVertex::Kind;
    if (x.kind == K::Shifted && y.kind == K::Shifted)
        return true;
    if (x.kind == K::Shifted)
        return y.vector[x.vertex] == 0;
    if (y.kind == K::Shifted)
        return x.vector[y.vertex] == 0;
    return oracle.ext(x.vector, y.vector) == 0 && oracle.ext(y.vector, x.vector) == 0;
}

template <class F>
bool compatible(QuiverPtr q, const RootVertex& x, const RootVertex& y, const F& f, std::uint64_t seed, int trials = 3)
{
    ExtOracle<F> oracle(q, f, seed, ExtOracle<F>::Mode::Randomized, trials);
    return compatible(x, y, oracle);
}

struct TiltingComplex {
    QuiverPtr quiver;
    std::vector<RootVertex> vertices;
    std::vector<std::vector<std::size_t>> facets;  // sorted index sets, sorted list
    std::vector<std::vector<bool>> compat;
    bool exact_ext = false;

    std::size_t dimension() const { return quiver->n(); }

    std::optional<std::size_t> find_vertex(const RootVertex& v) const
    {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == v)
                return i;
        return std::nullopt;
    }

    /// True when the index set is contained in some facet.
    bool is_simplex(std::vector<std::size_t> s) const
    {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (const auto& f : facets)
            if (std::includes(f.begin(), f.end(), s.begin(), s.end()))
                return true;
        return false;
    }

    /// Codimension-one faces with the facets containing them.
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> ridges() const
    {
        std::map<std::vector<std::size_t>, std::vector<std::size_t>> out;
        for (std::size_t fi = 0; fi < facets.size(); ++fi) {
            const auto& f = facets[fi];
            for (std::size_t skip = 0; skip < f.size(); ++skip) {
                std::vector<std::size_t> r;
                for (std::size_t k = 0; k < f.size(); ++k)
                    if (k != skip)
                        r.push_back(f[k]);
                out[r].push_back(fi);
            }
        }
        return out;
    }
};

namespace detail {

/// Bron-Kerbosch with pivoting; candidates are visited in increasing order.
inline void bron_kerbosch(const std::vector<std::vector<bool>>& adj, std::vector<std::size_t>& r,
                          std::vector<std::size_t> p, std::vector<std::size_t> x,
                          std::vector<std::vector<std::size_t>>& out)
{
    if (p.empty() && x.empty()) {
        auto c = r;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
        return;
    }
    std::size_t pivot = 0, best = 0;
    bool have = false;
    for (const auto* set : {&p, &x})
        for (auto u : *set) {
            std::size_t cnt = 0;
            for (auto w : p)
                cnt += adj[u][w] ? 1 : 0;
            if (!have || cnt > best) {
                pivot = u;
                best = cnt;
                have = true;
            }
        }
    std::vector<std::size_t> todo;
    for (auto v : p)
        if (!adj[pivot][v])
            todo.push_back(v);
    for (auto v : todo) {
        std::vector<std::size_t> p2, x2;
        for (auto w : p)
            if (adj[v][w])
                p2.push_back(w);
        for (auto w : x)
            if (adj[v][w])
                x2.push_back(w);
        r.push_back(v);
        bron_kerbosch(adj, r, std::move(p2), std::move(x2), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

inline std::size_t rational_rank(const std::vector<DimVector>& vecs, std::size_t n)
{
    RationalField qf;
    FMatrix<RationalField> m(n, vecs.size(), Rational(0));
    for (std::size_t j = 0; j < vecs.size(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            m(i, j) = Rational(vecs[j][i]);
    return rank(qf, m);
}

} // namespace detail

inline std::vector<std::vector<std::size_t>> maximal_cliques(const std::vector<std::vector<bool>>& adj)
{
    std::vector<std::size_t> r, p(adj.size());
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    detail::bron_kerbosch(adj, r, p, {}, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// Compatibility clique complex on the given vertex set.
template <class F>
TiltingComplex clique_complex(QuiverPtr q, std::vector<RootVertex> vertices, ExtOracle<F>& oracle)
{
    TiltingComplex c{q, std::move(vertices), {}, {}, oracle.mode() == ExtOracle<F>::Mode::Exact};
    const auto nv = c.vertices.size();
    c.compat.assign(nv, std::vector<bool>(nv, false));
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = i + 1; j < nv; ++j)
            c.compat[i][j] = c.compat[j][i] = compatible(c.vertices[i], c.vertices[j], oracle);
    c.facets = maximal_cliques(c.compat);
    return c;
}

/// Facets of size n with linearly independent lambda vectors; the message
/// of the first violation otherwise.
inline std::optional<std::string> facet_violation(const TiltingComplex& c)
{
    const auto n = c.dimension();
    for (const auto& f : c.facets) {
        if (f.size() != n)
            return "maximal clique of size " + std::to_string(f.size()) + " (expected " + std::to_string(n) + ")";
        std::vector<DimVector> vecs;
        for (auto i : f)
            vecs.push_back(c.vertices[i].lambda_vector());
        if (detail::rational_rank(vecs, n) != n)
            return std::string("facet with linearly dependent vectors");
    }
    return std::nullopt;
}

/// The cluster tilting complex of a Dynkin quiver. Built with the randomized
/// ext oracle; an invariant violation triggers one rebuild with exact ext
/// values on cached Schur representations.
template <class F>
TiltingComplex build_complex(QuiverPtr q, const F& f, std::uint64_t seed, bool exact = false, int trials = 3)
{
    auto verts = complex_vertices(*q);
    using Mode = typename ExtOracle<F>::Mode;
    if (!exact) {
        ExtOracle<F> oracle(q, f, seed, Mode::Randomized, trials);
        auto c = clique_complex(q, verts, oracle);
        if (!facet_violation(c))
            return c;
    }
    ExtOracle<F> oracle(q, f, derive_seed(seed, {0x726562}), Mode::Exact, trials);
    auto c = clique_complex(q, verts, oracle);
    if (auto msg = facet_violation(c))
        throw InvariantViolation(*msg);
    return c;
}

/// Exploration complex for arbitrary acyclic quivers: real Schur roots with
/// entries at most `depth` plus the shifted projectives. No guarantees.
template <class F>
TiltingComplex truncated_complex(QuiverPtr q, const F& f, std::uint64_t seed, std::int64_t depth, int trials = 3)
{
    std::vector<DimVector> roots;
    for (const auto& r : real_roots_bounded(*q, depth))
        if (is_schur_root(q, r, f, derive_seed(seed, {0x7472}), trials))
            roots.push_back(r);
    ExtOracle<F> oracle(q, f, seed, ExtOracle<F>::Mode::Randomized, trials);
    return clique_complex(q, vertices_from_roots(*q, roots), oracle);
}

struct SpherePoint {
    std::vector<Rational> ray;  // sum t_j beta_j - sum t_i p(v_i)
    std::vector<double> coords;  // unit vector
};

inline std::vector<double> normalized(const std::vector<Rational>& ray)
{
    double norm = 0;
    std::vector<double> out;
    for (const auto& x : ray) {
        out.push_back(static_cast<double>(x));
        norm += out.back() * out.back();
    }
    norm = std::sqrt(norm);
    for (auto& x : out)
        x /= norm;
    return out;
}

/// lambda of a formal nonnegative combination of the vertices of a simplex.
inline SpherePoint lambda_point(const TiltingComplex& c, const std::map<std::size_t, Rational>& coeffs)
{
    std::vector<std::size_t> support;
    for (const auto& [i, t] : coeffs) {
        if (t < 0)
            throw ZeroCoefficients("negative coefficient on vertex " + std::to_string(i));
        if (i >= c.vertices.size())
            throw NotASimplex("unknown vertex " + std::to_string(i));
        if (t > 0)
            support.push_back(i);
    }
    if (support.empty())
        throw ZeroCoefficients("all coefficients are zero");
    if (!c.is_simplex(support))
        throw NotASimplex("support is not a face of the complex");
    const auto n = c.dimension();
    std::vector<Rational> ray(n, Rational(0));
    for (auto i : support) {
        const auto vec = c.vertices[i].lambda_vector();
        for (std::size_t k = 0; k < n; ++k)
            ray[k] += coeffs.at(i) * vec[k];
    }
    if (std::all_of(ray.begin(), ray.end(), [](const Rational& x) { return x == 0; }))
        throw InvariantViolation("lambda of a face vanished");
    return {ray, normalized(ray)};
}

/// Primitive integer vector on the same ray.
inline DimVector primitive(DimVector v)
{
    std::int64_t g = 0;
    for (auto x : v)
        g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1)
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] /= g;
    return v;
}

struct SphereReport {
    bool pure = false;
    bool ridge_regular = false;
    bool connected = false;
    bool euler_ok = false;
    bool lambda_injective = false;
    bool covering = false;
    std::int64_t euler_characteristic = 0;
    std::int64_t expected_euler = 0;
    std::vector<std::size_t> face_counts;  // face_counts[k] = number of k-faces
    std::size_t covering_points = 0;
    std::size_t covering_failures = 0;
    std::vector<std::string> messages;

    bool ok() const { return pure && ridge_regular && connected && euler_ok && lambda_injective && covering; }
};

struct SphereOptions {
    std::size_t covering_points = 200;
    std::int64_t covering_radius = 5;
};

/// Checks that the complex triangulates S^{n-1} through lambda.
template <class F>
SphereReport verify_sphere(const TiltingComplex& c, const F& f, std::uint64_t seed, SphereOptions opt = {})
{
    SphereReport rep;
    const auto n = c.dimension();
    const auto& q = c.quiver;

    rep.pure = !c.facets.empty() &&
               std::all_of(c.facets.begin(), c.facets.end(), [&](const auto& s) { return s.size() == n; });
    if (!rep.pure)
        rep.messages.push_back("not pure of dimension " + std::to_string(n - 1));

    const auto ridges = c.ridges();
    rep.ridge_regular = true;
    for (const auto& [r, fs] : ridges)
        if (fs.size() != 2) {
            rep.ridge_regular = false;
            rep.messages.push_back("a ridge lies in " + std::to_string(fs.size()) + " facets");
            break;
        }

    // Facet adjacency through shared ridges.
    std::vector<std::size_t> parent(c.facets.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& [r, fs] : ridges)
        for (std::size_t k = 1; k < fs.size(); ++k)
            parent[find(fs[k])] = find(fs[0]);
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < c.facets.size(); ++i)
        roots.insert(find(i));
    rep.connected = roots.size() == 1;
    if (!rep.connected)
        rep.messages.push_back("facet graph has " + std::to_string(roots.size()) + " components");

    std::set<std::vector<std::size_t>> faces;
    for (const auto& f : c.facets) {
        const auto k = f.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1)
                    s.push_back(f[i]);
            faces.insert(std::move(s));
        }
    }
    rep.face_counts.assign(n, 0);
    for (const auto& s : faces)
        if (s.size() <= n)
            ++rep.face_counts[s.size() - 1];
    rep.euler_characteristic = 0;
    for (std::size_t k = 0; k < rep.face_counts.size(); ++k)
        rep.euler_characteristic += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(rep.face_counts[k]);
    rep.expected_euler = 1 + ((n - 1) % 2 == 0 ? 1 : -1);
    rep.euler_ok = rep.euler_characteristic == rep.expected_euler;
    if (!rep.euler_ok)
        rep.messages.push_back("Euler characteristic " + std::to_string(rep.euler_characteristic) + ", expected " +
                               std::to_string(rep.expected_euler));

    std::set<DimVector> rays;
    for (const auto& v : c.vertices)
        rays.insert(primitive(v.lambda_vector()));
    rep.lambda_injective = rays.size() == c.vertices.size();
    if (!rep.lambda_injective)
        rep.messages.push_back("lambda identifies two vertices");

    // Every nonzero integer vector lies in the cone of exactly the simplex
    // given by its generic decomposition.
    Rng rng(derive_seed(seed, {0x636f76}));
    rep.covering_points = opt.covering_points;
    for (std::size_t t = 0; t < opt.covering_points; ++t) {
        DimVector x(n);
        do {
            for (std::size_t i = 0; i < n; ++i)
                x[i] = rng.uniform(-opt.covering_radius, opt.covering_radius);
        } while (x.is_zero());
        bool ok = true;
        try {
            auto gd = generic_decomposition(q, x, f, derive_seed(seed, {0x6764, t}));
            std::vector<std::size_t> support;
            for (const auto& p : gd.parts) {
                auto idx = c.find_vertex({RootVertex::Kind::Root, p, 0});
                if (!idx)
                    ok = false;
                else
                    support.push_back(*idx);
            }
            for (std::size_t v = 0; v < n; ++v)
                if (gd.gamma[v] > 0)
                    support.push_back(*c.find_vertex({RootVertex::Kind::Shifted, q->proj_vector(v), v}));
            ok = ok && c.is_simplex(support);
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) {
            ++rep.covering_failures;
            if (rep.covering_failures == 1)
                rep.messages.push_back("covering fails at " + x.to_string());
        }
    }
    rep.covering = rep.covering_failures == 0;
    return rep;
}

struct Wall {
    std::vector<std::size_t> ridge;
    std::vector<DimVector> labels;
};

/// Label of a ridge: the positive roots orthogonal (under the Euler form)
/// to every lambda vector of the ridge.
inline std::vector<Wall> wall_labels(const TiltingComplex& c)
{
    const auto& q = *c.quiver;
    const auto roots = positive_roots(q);
    std::vector<Wall> out;
    for (const auto& [r, fs] : c.ridges()) {
        Wall w{r, {}};
        for (const auto& b : roots) {
            bool orth = true;
            for (auto i : r)
                if (q.euler_form(c.vertices[i].lambda_vector(), b) != 0) {
                    orth = false;
                    break;
                }
            if (orth)
                w.labels.push_back(b);
        }
        if (w.labels.empty())
            throw EmptyLabel("ridge without a label");
        out.push_back(std::move(w));
    }
    return out;
}

/// x is a nonnegative combination of the given linearly independent vectors.
inline bool cone_contains(const std::vector<DimVector>& gens, const DimVector& x)
{
    RationalField qf;
    const auto n = x.size();
    FMatrix<RationalField> m(n, gens.size() + 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < gens.size(); ++j)
            m(i, j) = Rational(gens[j][i]);
        m(i, gens.size()) = Rational(x[i]);
    }
    auto ech = rref(qf, m);
    for (auto p : ech.pivots)
        if (p == gens.size())
            return false;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
        if (ech.reduced(r, gens.size()) < 0)
            return false;
    return true;
}

} // namespace vsi
