#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

using namespace vsi;
using namespace vsi::testing;

namespace {

const PrimeField fp;

RootVertex root(DimVector v) { return {RootVertex::Kind::Root, std::move(v), 0}; }

RootVertex shifted(const Quiver& q, std::size_t v) { return {RootVertex::Kind::Shifted, q.proj_vector(v), v}; }

std::size_t index_of(const TiltingComplex& c, const RootVertex& v)
{
    auto i = c.find_vertex(v);
    if (!i)
        throw std::runtime_error("vertex missing");
    return *i;
}

/// Number of clusters of type D_n: (3n - 2)/n * binom(2n - 2, n - 1).
std::uint64_t d_type_clusters(std::uint64_t n)
{
    std::uint64_t b = 1;
    for (std::uint64_t k = 1; k <= n - 1; ++k)
        b = b * (n - 1 + k) / k;
    return (3 * n - 2) * b / n;
}

const Wall& wall_for(const std::vector<Wall>& walls, std::vector<std::size_t> ridge)
{
    std::sort(ridge.begin(), ridge.end());
    for (const auto& w : walls)
        if (w.ridge == ridge)
            return w;
    throw std::runtime_error("ridge missing");
}

} // namespace

TEST(Dynkin, Recognition)
{
    EXPECT_TRUE(is_dynkin(*a2()));
    EXPECT_TRUE(is_dynkin(*a3()));
    EXPECT_TRUE(is_dynkin(*a3_alt()));
    EXPECT_TRUE(is_dynkin(*d4()));
    EXPECT_TRUE(is_dynkin(*linear_a(1)));
    EXPECT_FALSE(is_dynkin(*example()));
    EXPECT_FALSE(is_dynkin(*sample("kronecker.txt")));
    // Affine D4: one more leg on the central vertex.
    EXPECT_FALSE(is_dynkin(*from_text("1 -> 0\n2 -> 0\n3 -> 0\n4 -> 0\n")));
    // E6 is still Dynkin.
    EXPECT_TRUE(is_dynkin(*from_text("1 -> 2\n2 -> 3\n3 -> 4\n4 -> 5\n6 -> 3\n")));
}

TEST(PositiveRoots, MatchReflectionClosure)
{
    EXPECT_EQ(positive_roots(*a2()), (std::vector<DimVector>{{0, 1}, {1, 0}, {1, 1}}));
    for (const auto& q : {a3(), a3_alt(), a4(), d4(), d4_alt()}) {
        auto roots = positive_roots(*q);
        auto oracle = reflection_closure_roots(*q);
        EXPECT_EQ(std::set<DimVector>(roots.begin(), roots.end()), oracle);
        EXPECT_EQ(roots.size(), oracle.size());
    }
    EXPECT_EQ(positive_roots(*a3()).size(), 6u);
    EXPECT_EQ(positive_roots(*d4()).size(), 12u);
    EXPECT_THROW(positive_roots(*example()), NotDynkin);
}

TEST(Vertices, Counts)
{
    EXPECT_EQ(complex_vertices(*a2()).size(), 5u);
    EXPECT_EQ(complex_vertices(*a3()).size(), 9u);
    EXPECT_EQ(complex_vertices(*linear_a(1)).size(), 2u);
}

TEST(Compatible, HandCases)
{
    auto q = a2();
    EXPECT_TRUE(compatible(q, shifted(*q, 0), shifted(*q, 1), fp, 0));
    EXPECT_TRUE(compatible(q, root({1, 0}), shifted(*q, 1), fp, 0));
    EXPECT_FALSE(compatible(q, root({1, 1}), shifted(*q, 0), fp, 0));
    EXPECT_FALSE(compatible(q, root({1, 0}), root({0, 1}), fp, 0));
    EXPECT_TRUE(compatible(q, root({1, 0}), root({1, 1}), fp, 0));
    EXPECT_TRUE(compatible(q, root({1, 1}), root({1, 1}), fp, 0));
}

TEST(BuildComplex, SmallCases)
{
    auto a = build_complex(a2(), fp, 1);
    EXPECT_EQ(a.vertices.size(), 5u);
    EXPECT_EQ(a.facets.size(), 5u);
    auto one = build_complex(linear_a(1), fp, 1);
    EXPECT_EQ(one.facets, (std::vector<std::vector<std::size_t>>{{0}, {1}}));
    auto c = build_complex(a3(), fp, 1);
    EXPECT_EQ(c.vertices.size(), 9u);
    EXPECT_EQ(c.facets.size(), 14u);
    EXPECT_EQ(c.ridges().size(), 21u);
    EXPECT_THROW(build_complex(example(), fp, 1), NotDynkin);
}

TEST(BuildComplex, CatalanCountsForTypeA)
{
    for (int n = 1; n <= 5; ++n) {
        auto c = build_complex(linear_a(n), fp, 2);
        EXPECT_EQ(c.facets.size(), polygon_triangulations(n + 3)) << "A" << n;
    }
    auto alt = build_complex(a4_alt(), fp, 2);
    EXPECT_EQ(alt.facets.size(), polygon_triangulations(7));
}

TEST(BuildComplex, TypeDCount)
{
    EXPECT_EQ(build_complex(d4(), fp, 3).facets.size(), d_type_clusters(4));
    EXPECT_EQ(build_complex(d4_alt(), fp, 3).facets.size(), d_type_clusters(4));
}

TEST(BuildComplex, ExactModeAgrees)
{
    for (const auto& q : {a3(), d4()}) {
        auto r = build_complex(q, fp, 4);
        auto e = build_complex(q, fp, 4, true);
        EXPECT_TRUE(e.exact_ext);
        EXPECT_EQ(r.facets, e.facets);
    }
}

TEST(BuildComplex, RationalField)
{
    auto c = build_complex(a3(), RationalField(), 5);
    EXPECT_EQ(c.facets.size(), 14u);
}

TEST(LambdaPoint, Examples)
{
    auto q = a2();
    auto c = build_complex(q, fp, 1);
    const auto r10 = index_of(c, root({1, 0})), r11 = index_of(c, root({1, 1}));
    const auto p1 = index_of(c, shifted(*q, 0)), p2 = index_of(c, shifted(*q, 1));
    auto pt = lambda_point(c, {{r11, Rational(1)}});
    EXPECT_NEAR(pt.coords[0], 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(pt.coords[1], 1 / std::sqrt(2.0), 1e-12);
    auto sp = lambda_point(c, {{p1, Rational(1)}});
    EXPECT_EQ(sp.ray, (std::vector<Rational>{-1, -1}));
    auto e = lambda_point(c, {{r10, Rational(1)}, {p2, Rational(1)}});
    EXPECT_EQ(e.ray, (std::vector<Rational>{1, -1}));
    // (1,1) has a nonzero entry at vertex 2, so it does not span a face with p(2)[1].
    EXPECT_THROW(lambda_point(c, {{r11, Rational(1)}, {p2, Rational(1)}}), NotASimplex);
    EXPECT_THROW(lambda_point(c, {{r10, Rational(0)}}), ZeroCoefficients);
    EXPECT_THROW(lambda_point(c, {{r10, Rational(-1)}}), ZeroCoefficients);
    EXPECT_THROW(lambda_point(c, {{99, Rational(1)}}), NotASimplex);
}

TEST(VerifySphere, DynkinCases)
{
    std::vector<std::pair<QuiverPtr, std::int64_t>> cases{{a2(), 0}, {a3(), 2}, {a3_alt(), 2}, {a4(), 0}, {d4(), 0}};
    for (const auto& [q, chi] : cases) {
        auto c = build_complex(q, fp, 6);
        auto rep = verify_sphere(c, fp, 6);
        EXPECT_TRUE(rep.ok()) << (rep.messages.empty() ? "" : rep.messages.front());
        EXPECT_EQ(rep.euler_characteristic, chi);
        EXPECT_EQ(rep.covering_points, 200u);
    }
}

TEST(VerifySphere, DetectsBrokenComplex)
{
    auto c = build_complex(a3(), fp, 7);
    c.facets.pop_back();
    auto rep = verify_sphere(c, fp, 7);
    EXPECT_FALSE(rep.ok());
    EXPECT_FALSE(rep.ridge_regular);
}

TEST(Walls, A2Labels)
{
    auto q = a2();
    auto c = build_complex(q, fp, 1);
    auto walls = wall_labels(c);
    EXPECT_EQ(walls.size(), 5u);
    EXPECT_EQ(wall_for(walls, {index_of(c, root({1, 1}))}).labels, (std::vector<DimVector>{{0, 1}}));
    EXPECT_EQ(wall_for(walls, {index_of(c, shifted(*q, 0))}).labels, (std::vector<DimVector>{{0, 1}}));
}

TEST(Walls, NonemptyOnDynkin)
{
    for (const auto& q : {a3(), a4(), d4()}) {
        auto c = build_complex(q, fp, 8);
        auto walls = wall_labels(c);
        EXPECT_EQ(walls.size(), c.ridges().size());
        for (const auto& w : walls)
            EXPECT_FALSE(w.labels.empty());
    }
}

TEST(ConeContains, Basics)
{
    EXPECT_TRUE(cone_contains({{1, 0}, {1, 1}}, {2, 1}));
    EXPECT_FALSE(cone_contains({{1, 0}, {1, 1}}, {0, 1}));
    EXPECT_TRUE(cone_contains({{1, 0, 0}}, {3, 0, 0}));
    EXPECT_FALSE(cone_contains({{1, 0, 0}}, {3, 1, 0}));
    EXPECT_TRUE(cone_contains({{1, 2, 0}, {0, 1, 1}}, {0, 0, 0}));
}

TEST(Truncate, NonDynkin)
{
    auto k = sample("kronecker.txt");
    auto c = truncated_complex(k, fp, 9, 3);
    for (const auto& v : c.vertices)
        if (v.kind == RootVertex::Kind::Root)
            EXPECT_NE(v.vector, (DimVector{1, 1}));
    EXPECT_TRUE(c.find_vertex(root({1, 2})).has_value());
    EXPECT_TRUE(c.find_vertex(root({2, 3})).has_value());
    EXPECT_FALSE(c.facets.empty());
    for (const auto& f : c.facets)
        EXPECT_LE(f.size(), 2u);
}

TEST(Export, ObjAndSvg)
{
    auto c3 = build_complex(a3(), fp, 1);
    auto obj = complex_obj(c3);
    EXPECT_EQ(std::count(obj.begin(), obj.end(), 'v'), 9);
    std::istringstream in(obj);
    std::string line;
    int faces = 0;
    while (std::getline(in, line))
        faces += line.rfind("f ", 0) == 0;
    EXPECT_EQ(faces, 14);
    auto c2 = build_complex(a2(), fp, 1);
    auto svg = complex_svg(c2);
    std::size_t lines = 0;
    for (std::size_t p = svg.find("<line"); p != std::string::npos; p = svg.find("<line", p + 1))
        ++lines;
    EXPECT_EQ(lines, 5u);
    EXPECT_THROW(complex_svg(c3), UnsupportedDimension);
    EXPECT_THROW(complex_obj(build_complex(d4(), fp, 1)), UnsupportedDimension);
}
