#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "dimvector.hpp"
#include "errors.hpp"
#include "presentation.hpp"
#include "quiver.hpp"
#include "random.hpp"
#include "representation.hpp"

namespace vsi {

/// alpha = sum(parts) - (E^t)^{-1} gamma. Parts are sorted.
struct GenericDecomposition {
    std::vector<DimVector> parts;
    DimVector gamma;

    friend bool operator==(const GenericDecomposition&, const GenericDecomposition&) = default;
};

struct DecompositionOptions {
    int max_resamples = 10;
    int trials = 3;
};

/// True when some sampled representation of dimension a has End = k.
template <class F>
bool is_schur_root(QuiverPtr q, const DimVector& a, const F& f, std::uint64_t seed, int trials = 3)
{
    q->check_length(a);
    if (a.is_zero())
        throw ZeroVector("Schur test of the zero vector");
    if (!a.is_nonneg())
        throw NegativeDimension(a.to_string());
    for (int t = 0; t < std::max(trials, 1); ++t)
        if (is_schur_sample(random_rep(q, a, f, derive_seed(seed, {0x736368, static_cast<std::uint64_t>(t)}))))
            return true;
    return false;
}

/// beta' is the dimension of a subrepresentation of a general representation
/// of dimension beta iff ext(beta', beta - beta') = 0.
template <class F>
bool subrep_test(QuiverPtr q, const DimVector& sub, const DimVector& b, const F& f, std::uint64_t seed,
                 int trials = 3)
{
    q->check_length(sub);
    q->check_length(b);
    if (!sub.is_nonneg() || !sub.leq(b))
        return false;
    if (sub.is_zero() || sub == b)
        return true;
    return generic_ext(q, sub, b - sub, f, seed, trials) == 0;
}

namespace detail {

/// Check the defining conditions of a generic decomposition. Ext values are
/// cached per ordered pair of distinct vectors.
template <class F>
bool validate_decomposition(QuiverPtr q, const DimVector& alpha, const GenericDecomposition& d, const F& f,
                            std::uint64_t seed, int trials)
{
    DimVector sum(q->n());
    for (const auto& p : d.parts) {
        if (!p.is_nonneg() || p.is_zero() || !p.disjoint_support(d.gamma))
            return false;
        sum += p;
    }
    if (!(sum - q->Et_inv_times(d.gamma) == alpha))
        return false;
    std::vector<DimVector> distinct = d.parts;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const auto& p : distinct)
        if (!is_schur_root(q, p, f, derive_seed(seed, {0x7363}), trials))
            return false;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        const auto mult = std::count(d.parts.begin(), d.parts.end(), distinct[i]);
        if (mult > 1 && generic_ext(q, distinct[i], distinct[i], f, derive_seed(seed, {0x6578, i}), trials) != 0)
            return false;
        for (std::size_t j = 0; j < distinct.size(); ++j)
            if (i != j && generic_ext(q, distinct[i], distinct[j], f, derive_seed(seed, {0x6578, i, j}), trials) != 0)
                return false;
    }
    return true;
}

} // namespace detail

/// Generic decomposition of a virtual dimension vector: take the canonical
/// decomposition (mu, gamma), decompose a random representation of
/// dimension mu, and validate; resample on failure.
template <class F>
GenericDecomposition generic_decomposition(QuiverPtr q, const DimVector& alpha, const F& f, std::uint64_t seed,
                                           DecompositionOptions opt = {})
{
    const auto cd = canonical_decomp(*q, alpha);
    for (int attempt = 0; attempt < opt.max_resamples; ++attempt) {
        const auto s = derive_seed(seed, {0x6764, static_cast<std::uint64_t>(attempt)});
        GenericDecomposition out{{}, cd.gamma};
        try {
            auto m = random_rep(q, cd.mu, f, s);
            bool ok = true;
            for (const auto& part : fitting_summands(m, derive_seed(s, {1}))) {
                const auto d = static_cast<std::int64_t>(part.degree);
                DimVector piece(q->n());
                for (std::size_t v = 0; v < q->n(); ++v) {
                    if (part.rep.dim[v] % d != 0)
                        ok = false;
                    piece[v] = part.rep.dim[v] / d;
                }
                for (std::int64_t k = 0; k < d; ++k)
                    out.parts.push_back(piece);
            }
            if (!ok)
                continue;
        } catch (const SplitFailure&) {
            continue;
        }
        std::sort(out.parts.begin(), out.parts.end());
        if (detail::validate_decomposition(q, alpha, out, f, derive_seed(s, {2}), opt.trials))
            return out;
    }
    throw DecompositionUnstable("validation failed on " + std::to_string(opt.max_resamples) +
                                " samples for " + alpha.to_string());
}

/// D(beta) = {alpha : <alpha, beta> = 0, <alpha, beta'> <= 0 for beta' -> beta},
/// stored through the vectors E beta and E beta'.
struct HalfSpaceSystem {
    DimVector beta;
    DimVector equality;
    std::vector<DimVector> inequalities;
    std::vector<DimVector> subdims;  // the beta' behind each inequality

    bool contains(const DimVector& a) const
    {
        if (dot(a, equality) != 0)
            return false;
        for (const auto& h : inequalities)
            if (dot(a, h) > 0)
                return false;
        return true;
    }
};

template <class F>
HalfSpaceSystem d_beta_halfspaces(QuiverPtr q, const DimVector& b, const F& f, std::uint64_t seed, int trials = 3)
{
    q->check_length(b);
    if (b.is_zero())
        throw ZeroVector("D(beta) of the zero vector");
    if (!b.is_nonneg())
        throw NegativeDimension(b.to_string());
    const auto& E = q->euler().E;
    HalfSpaceSystem h{b, E * b, {}, {}};
    DimVector sub(q->n());
    std::uint64_t counter = 0;
    while (true) {
        if (subrep_test(q, sub, b, f, derive_seed(seed, {0x7375, counter++}), trials)) {
            h.subdims.push_back(sub);
            h.inequalities.push_back(E * sub);
        }
        std::size_t v = 0;
        while (v < q->n() && sub[v] == b[v])
            sub[v++] = 0;
        if (v == q->n())
            break;
        ++sub[v];
    }
    return h;
}

template <class F>
bool d_membership(QuiverPtr q, const DimVector& a, const DimVector& b, const F& f, std::uint64_t seed, int trials = 3)
{
    q->check_length(a);
    return d_beta_halfspaces(q, b, f, seed, trials).contains(a);
}

/// Nonvanishing of C_V on R^min(a) for general V of dimension b, sampled
/// `trials` times.
template <class F>
bool supp_test_randomized(QuiverPtr q, const DimVector& a, const DimVector& b, const F& f, std::uint64_t seed,
                          int trials = 5)
{
    q->check_length(a);
    q->check_length(b);
    if (b.is_zero())
        throw ZeroVector("support test with the zero vector");
    if (q->euler_form(a, b) != 0)
        return false;
    const auto dec = minimal_decomp(*q, a);
    for (int t = 0; t < std::max(trials, 1); ++t) {
        const auto s = derive_seed(seed, {0x7370, static_cast<std::uint64_t>(t)});
        auto v = random_rep(q, b, f, derive_seed(s, {0}));
        auto phi = random_presentation(q, dec, f, derive_seed(s, {1}));
        if (!f.is_zero(cv_value(phi, v)))
            return true;
    }
    return false;
}

} // namespace vsi
