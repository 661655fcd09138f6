#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace vsi;
using namespace vsi::testing;

namespace {

const PrimeField fp;
const RationalField qq;

template <class F>
Representation<F> a2_rep(QuiverPtr q, const F& f, DimVector d, std::vector<std::int64_t> entries)
{
    auto m = zero_rep(q, f, d);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m.mats[0].rows(); ++i)
        for (std::size_t j = 0; j < m.mats[0].cols(); ++j)
            m.mats[0](i, j) = f.from_int(entries.at(k++));
    return m;
}

} // namespace

TEST(Field, PrimeArithmetic)
{
    PrimeField f(7);
    EXPECT_EQ(f.mul(3, 5), 1u);
    EXPECT_EQ(f.inv(3), 5u);
    EXPECT_EQ(f.from_int(-1), 6u);
    EXPECT_EQ(f.parse("-2"), 5u);
    EXPECT_THROW(f.inv(0), InternalError);
    EXPECT_THROW(PrimeField(8), ParseError);
}

TEST(Field, SpecParsing)
{
    EXPECT_EQ(FieldSpec::parse("q").to_string(), "q");
    EXPECT_EQ(FieldSpec::parse("fp:32003").to_string(), "fp:32003");
    EXPECT_THROW(FieldSpec::parse("fp:10"), ParseError);
    EXPECT_THROW(FieldSpec::parse("reals"), ParseError);
}

TEST(Matrix, DeterminantAgreesAcrossFields)
{
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        auto a = random_matrix(qq, 5, 5, rng);
        auto d = det(qq, a);
        // reduce the rational determinant mod p and compare with F_p elimination
        auto ap = zeros(fp, 5, 5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                ap(i, j) = fp.from_int(static_cast<std::int64_t>(numerator(a(i, j))));
        auto num = numerator(d);
        auto expect = static_cast<std::uint32_t>(detail::mod_floor(num, BigInt(fp.modulus())));
        EXPECT_EQ(det(fp, ap), expect);
    }
}

TEST(Matrix, KernelAndRank)
{
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        auto a = mul(fp, random_matrix(fp, 6, 3, rng), random_matrix(fp, 3, 7, rng));
        auto k = kernel(fp, a);
        EXPECT_EQ(rank(fp, a) + k.cols(), 7u);
        EXPECT_TRUE(is_zero_matrix(fp, mul(fp, a, k)));
    }
}

TEST(Poly, CharpolyMatchesDeterminant)
{
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        auto a = random_matrix(qq, 4, 4, rng);
        auto cp = charpoly(qq, a);
        ASSERT_EQ(cp.size(), 5u);
        for (int c = -3; c <= 3; ++c) {
            auto m = scale(qq, Rational(-1), a);
            for (std::size_t i = 0; i < 4; ++i)
                m(i, i) += c;
            EXPECT_EQ(poly_eval(qq, cp, Rational(c)), det(qq, m));
        }
    }
}

TEST(Poly, RationalRoots)
{
    // (2x - 3)(x + 5)(x^2 + 1)
    Poly<RationalField> p{Rational(-15), Rational(7), Rational(-13), Rational(7), Rational(2)};
    auto r = rational_roots(qq, p);
    std::sort(r.begin(), r.end());
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0], Rational(-5));
    EXPECT_EQ(r[1], Rational(3, 2));
}

TEST(RandomRep, ShapesAndDeterminism)
{
    auto q = example();
    auto m = random_rep(q, {1, 1, 1}, fp, 9);
    for (const auto& a : m.mats) {
        EXPECT_EQ(a.rows(), 1u);
        EXPECT_EQ(a.cols(), 1u);
    }
    EXPECT_EQ(random_rep(q, {2, 0, 3}, fp, 4).mats, random_rep(q, {2, 0, 3}, fp, 4).mats);
    EXPECT_EQ(random_rep(q, {2, 0, 3}, fp, 4).mats[1].rows(), 3u);
    EXPECT_THROW(random_rep(q, {1, -1, 0}, fp, 0), NegativeDimension);
}

TEST(RandomRep, RationalEntriesAreBounded)
{
    auto m = random_rep(a2(), {5, 5}, qq, 3);
    for (const auto& x : m.mats[0].data()) {
        EXPECT_EQ(denominator(x), 1);
        EXPECT_LE(abs(x), 10000);
    }
}

TEST(Hom, A2HandValues)
{
    auto q = a2();
    auto s1 = simple_rep(q, fp, 0), s2 = simple_rep(q, fp, 1);
    auto p1 = projective_rep(q, fp, 0);
    EXPECT_EQ(hom_space(s1, s2).dimension, 0u);
    EXPECT_EQ(hom_space(s2, p1).dimension, 1u);
    EXPECT_EQ(ext_dim(s1, s2), 1u);
    EXPECT_EQ(ext_dim(s2, s1), 0u);
    EXPECT_GE(hom_space(p1, p1).dimension, 1u);
}

TEST(Hom, BasisSatisfiesCommutativity)
{
    auto q = example();
    auto m = random_rep(q, {1, 2, 2}, fp, 1);
    auto n = direct_sum(m, random_rep(q, {0, 1, 1}, fp, 2));
    auto h = hom_space(m, n);
    EXPECT_GE(h.dimension, 1u);
    for (const auto& f : h.basis)
        for (std::size_t a = 0; a < q->arrows().size(); ++a) {
            auto ar = q->arrows()[a];
            EXPECT_EQ(mul(fp, f[ar.head], m.mats[a]), mul(fp, n.mats[a], f[ar.tail]));
        }
}

TEST(Hom, Mismatches)
{
    auto m = random_rep(a2(), {1, 1}, fp, 0);
    auto other = random_rep(a2(), {1, 1}, PrimeField(101), 0);
    EXPECT_THROW(hom_space(m, other), FieldMismatch);
    auto n = random_rep(a3(), {1, 1, 1}, fp, 0);
    EXPECT_THROW(hom_space(m, n), QuiverMismatch);
}

TEST(Hom, SemicontinuityDirection)
{
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        auto q = t % 2 ? example() : d4();
        auto a = random_vector(rng, q->n(), 0, 3);
        auto b = random_vector(rng, q->n(), 0, 3);
        auto m = random_rep(q, a, fp, rng.next());
        auto n = random_rep(q, b, fp, rng.next());
        const auto h = static_cast<std::int64_t>(hom_dim(m, n));
        const auto e = static_cast<std::int64_t>(ext_dim(m, n));
        const auto euler = q->euler_form(a, b);
        EXPECT_EQ(h - e, euler);
        EXPECT_GE(h, std::max<std::int64_t>(0, euler));
        EXPECT_GE(e, std::max<std::int64_t>(0, -euler));
    }
}

TEST(Ext, ProjectivesHaveNoExt)
{
    auto q = example();
    for (std::size_t v = 0; v < 3; ++v) {
        auto p = projective_rep(q, fp, v);
        EXPECT_EQ(ext_dim(p, random_rep(q, {2, 1, 3}, fp, v)), 0u);
    }
}

TEST(Generic, A2HandValues)
{
    auto q = a2();
    EXPECT_EQ(generic_hom(q, {0, 1}, {1, 1}, fp, 0), 1u);
    EXPECT_EQ(generic_hom(q, {1, 0}, {0, 1}, fp, 0), 0u);
    EXPECT_EQ(generic_hom(q, {2, 3}, {0, 0}, fp, 0), 0u);
    EXPECT_EQ(generic_ext(q, {1, 0}, {0, 1}, fp, 0), 1u);
    EXPECT_EQ(generic_ext(q, {1, 1}, {0, 1}, fp, 0), 0u);
    EXPECT_EQ(generic_ext(q, {1, 1}, {1, 1}, fp, 0), 0u);
    EXPECT_THROW(generic_hom(q, {-1, 0}, {0, 1}, fp, 0), NegativeDimension);
}

TEST(Schur, EndDimensions)
{
    auto q = a2();
    auto p1 = projective_rep(q, fp, 0);
    EXPECT_EQ(end_dim(p1), 1u);
    EXPECT_TRUE(is_schur_sample(p1));
    auto s2 = simple_rep(q, fp, 1);
    EXPECT_EQ(end_dim(direct_sum(s2, s2)), 4u);
    EXPECT_EQ(end_dim(zero_rep(q, fp, {0, 0})), 0u);
}

TEST(Fitting, A2ExplicitSum)
{
    auto q = a2();
    auto m = a2_rep(q, fp, {1, 2}, {1, 0});
    auto parts = fitting_decompose(m, 0);
    std::multiset<DimVector> dims;
    for (const auto& p : parts)
        dims.insert(p.dim);
    EXPECT_EQ(dims, (std::multiset<DimVector>{{1, 1}, {0, 1}}));
}

TEST(Fitting, IndecomposableAndZero)
{
    auto q = example();
    auto p = projective_rep(q, fp, 0);
    auto parts = fitting_decompose(p, 1);
    ASSERT_EQ(parts.size(), 1u);
    EXPECT_EQ(parts[0].dim, p.dim);
    EXPECT_TRUE(fitting_decompose(zero_rep(q, fp, {0, 0, 0}), 1).empty());
}

TEST(Fitting, SummandsAreIndecomposableAndSum)
{
    Rng rng(12);
    for (int t = 0; t < 30; ++t) {
        auto q = t % 3 == 0 ? example() : (t % 3 == 1 ? d4() : a3());
        auto a = random_vector(rng, q->n(), 0, 4);
        auto m = random_rep(q, a, fp, rng.next());
        DimVector sum(q->n());
        for (const auto& s : fitting_summands(m, rng.next())) {
            sum += s.rep.dim;
            // A summand that is local over F_p.
            auto again = fitting_summands(s.rep, rng.next());
            EXPECT_EQ(again.size(), 1u);
        }
        EXPECT_EQ(sum, a);
    }
}

TEST(Fitting, SeedIndependentDimensions)
{
    auto q = d4();
    auto m = random_rep(q, {4, 1, 2, 3}, fp, 77);
    std::multiset<DimVector> first;
    for (const auto& p : fitting_decompose(m, 0))
        first.insert(p.dim);
    for (std::uint64_t s = 1; s < 10; ++s) {
        std::multiset<DimVector> other;
        for (const auto& p : fitting_decompose(m, s))
            other.insert(p.dim);
        EXPECT_EQ(other, first);
    }
}

TEST(Fitting, ConjugatePencilsOverPrimeField)
{
    // Kronecker pencil (x, y) -> (x, y) with an irreducible characteristic
    // polynomial: indecomposable over F_p, splits in two over the closure.
    auto q = from_text("a -> b\na -> b\n");
    PrimeField f(7);
    auto m = zero_rep(q, f, {2, 2});
    m.mats[0] = identity(f, 2);
    m.mats[1] = zeros(f, 2, 2);
    m.mats[1](0, 1) = f.from_int(-1);  // x^2 + 1 has no root mod 7
    m.mats[1](1, 0) = 1;
    auto parts = fitting_summands(m, 0);
    ASSERT_EQ(parts.size(), 1u);
    EXPECT_EQ(parts[0].degree, 2u);
}

TEST(Fitting, RationalField)
{
    auto q = a2();
    auto m = direct_sum(random_rep(q, {1, 1}, qq, 1), direct_sum(simple_rep(q, qq, 0), simple_rep(q, qq, 1)));
    std::multiset<DimVector> dims;
    for (const auto& p : fitting_decompose(m, 3))
        dims.insert(p.dim);
    EXPECT_EQ(dims, (std::multiset<DimVector>{{1, 1}, {1, 0}, {0, 1}}));
}

TEST(Isomorphism, BaseChange)
{
    auto q = example();
    auto m = random_rep(q, {1, 2, 2}, fp, 5);
    Rng rng(6);
    auto g = random_group_element(*q, m.dim, fp, rng);
    EXPECT_TRUE(is_isomorphic(m, act(g, m), 1));
    // (1,2,2) is an imaginary root: two general points lie in different orbits.
    EXPECT_FALSE(is_isomorphic(m, random_rep(q, {1, 2, 2}, fp, 6), 1));
    // (2,2,3) is a real root with a dense orbit.
    EXPECT_TRUE(is_isomorphic(random_rep(q, {2, 2, 3}, fp, 1), random_rep(q, {2, 2, 3}, fp, 2), 1));
}
