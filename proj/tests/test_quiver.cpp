#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace vsi;
using namespace vsi::testing;

TEST(LoadQuiver, ExampleQuiverHasCanonicalOrder)
{
    auto q = example();
    EXPECT_EQ(q->n(), 3u);
    EXPECT_EQ(q->vertex_names(), (std::vector<std::string>{"1", "2", "3"}));
    EXPECT_EQ(q->arrows().size(), 3u);
}

TEST(LoadQuiver, JsonAndLineFormatsAgree)
{
    auto j = sample("example.json");
    auto l = example();
    EXPECT_EQ(j->vertex_names(), l->vertex_names());
    EXPECT_EQ(j->euler().E, l->euler().E);
}

TEST(LoadQuiver, IntegerVertexIdsInJson)
{
    auto q = from_text(R"({"vertices": [1, 2], "arrows": [[1, 2]]})");
    EXPECT_EQ(q->vertex_names(), (std::vector<std::string>{"1", "2"}));
}

TEST(LoadQuiver, SingleVertex)
{
    auto q = from_text("x\n");
    EXPECT_EQ(q->n(), 1u);
    EXPECT_EQ(q->euler().E, IntMatrix::identity(1));
}

TEST(LoadQuiver, CommentsAndIsolatedVertices)
{
    auto q = from_text("# a quiver\na -> b\n\nc\n");
    EXPECT_EQ(q->n(), 3u);
    EXPECT_EQ(q->vertex_names(), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(LoadQuiver, CycleIsRejected)
{
    EXPECT_THROW(from_text("1 -> 2\n2 -> 1\n"), OrientedCycleError);
    EXPECT_THROW(from_text("a -> a\n"), OrientedCycleError);
}

TEST(LoadQuiver, MalformedInput)
{
    EXPECT_THROW(from_text("1 -> \n"), ParseError);
    EXPECT_THROW(from_text("{\"vertices\": [\"1\"], \"arrows\": [[\"1\", \"9\"]]}"), UnknownVertex);
    EXPECT_THROW(from_text("{\"vertices\": [\"1\", \"1\"], \"arrows\": []}"), ParseError);
    EXPECT_THROW(from_text("{not json"), ParseError);
}

TEST(LoadQuiver, TopologicalOrderBreaksTiesByInput)
{
    // c is listed first but has an incoming arrow from b.
    auto q = std::make_shared<const Quiver>(Quiver({"c", "a", "b"}, {{"b", "c"}}));
    EXPECT_EQ(q->vertex_names(), (std::vector<std::string>{"a", "b", "c"}));
    for (auto ar : q->arrows())
        EXPECT_LT(ar.tail, ar.head);
}

TEST(EulerMatrix, ExampleQuiver)
{
    auto q = example();
    const auto& e = q->euler();
    EXPECT_EQ(e.E, (IntMatrix{{1, -1, 0}, {0, 1, -2}, {0, 0, 1}}));
    EXPECT_EQ(e.E_inv, (IntMatrix{{1, 1, 2}, {0, 1, 2}, {0, 0, 1}}));
    EXPECT_EQ(e.Et_inv, (IntMatrix{{1, 0, 0}, {1, 1, 0}, {2, 2, 1}}));
}

TEST(EulerMatrix, A2AndNoArrows)
{
    EXPECT_EQ(a2()->euler().E, (IntMatrix{{1, -1}, {0, 1}}));
    auto q = std::make_shared<const Quiver>(Quiver({"a", "b", "c"}, {}));
    EXPECT_EQ(q->euler().E, IntMatrix::identity(3));
}

TEST(EulerMatrix, InvariantsOnRandomQuivers)
{
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        auto q = random_quiver(rng, static_cast<std::size_t>(rng.uniform(1, 5)));
        const auto& e = q->euler();
        const auto n = q->n();
        EXPECT_EQ(e.E * e.E_inv, IntMatrix::identity(n));
        EXPECT_EQ(e.E.transposed() * e.Et_inv, IntMatrix::identity(n));
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_EQ(e.E(i, i), 1);
            for (std::size_t j = 0; j < i; ++j)
                EXPECT_EQ(e.E(i, j), 0);
            for (std::size_t j = 0; j < n; ++j)
                EXPECT_GE(e.E_inv(i, j), 0);
        }
        // Entry rule: E(u,v) = -#arrows u -> v.
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) {
                std::int64_t count = 0;
                for (auto ar : q->arrows())
                    count += (ar.tail == u && ar.head == v) ? 1 : 0;
                EXPECT_EQ(e.E(u, v), -count);
            }
    }
}

TEST(EulerForm, HandValues)
{
    auto q = example();
    EXPECT_EQ(q->euler_form({1, 0, 0}, {0, 1, 2}), -1);
    EXPECT_EQ(q->euler_form({4, -2, 7}, {0, 0, 0}), 0);
    EXPECT_EQ(q->euler_form({1, 1, 2}, {0, 1, 2}), 0);
    EXPECT_THROW(q->euler_form({1, 0}, {0, 1, 2}), DimensionMismatch);
}

TEST(EulerForm, ProjectivePairsWithCoordinate)
{
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        auto q = random_quiver(rng, 4);
        auto b = random_vector(rng, 4, -5, 5);
        for (std::size_t v = 0; v < 4; ++v)
            EXPECT_EQ(q->euler_form(q->proj_vector(v), b), b[v]);
    }
}

TEST(ProjInj, ExampleColumns)
{
    auto q = example();
    EXPECT_EQ(q->proj_vector(0), (DimVector{1, 1, 2}));
    EXPECT_EQ(q->inj_vector(2), (DimVector{2, 2, 1}));
    EXPECT_EQ(q->proj_vector(1) - 2 * q->proj_vector(2), (DimVector{0, 1, 0}));
    EXPECT_THROW(q->proj_vector(3), UnknownVertex);
}

TEST(ProjInj, UsefulFactsOnRandomVectors)
{
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        auto q = random_quiver(rng, 4);
        auto g = random_vector(rng, 4, 0, 6);
        EXPECT_TRUE(q->Et_inv_times(g).is_nonneg());
        EXPECT_TRUE((g - q->Et_times(g)).is_nonneg());
    }
}

TEST(Tau, A2HandValue)
{
    auto q = a2();
    EXPECT_EQ(q->tau({1, 0}), (DimVector{0, 1}));
    EXPECT_EQ(q->tau({0, 0}), (DimVector{0, 0}));
}

TEST(Tau, InverseAndIsometry)
{
    Rng rng(23);
    for (int t = 0; t < 40; ++t) {
        auto q = random_quiver(rng, 3);
        auto a = random_vector(rng, 3, -6, 6);
        auto b = random_vector(rng, 3, -6, 6);
        EXPECT_EQ(q->tau_inverse(q->tau(a)), a);
        EXPECT_EQ(q->tau(q->tau_inverse(a)), a);
        EXPECT_EQ(q->euler_form(q->tau(a), q->tau(b)), q->euler_form(a, b));
    }
}

TEST(Tits, Values)
{
    EXPECT_EQ(a2()->tits_form({1, 1}), 1);
    EXPECT_EQ(a2()->tits_form({0, 0}), 0);
    // 1 + 1 + 1 - 1 - 2
    EXPECT_EQ(example()->tits_form({1, 1, 1}), 0);
}

TEST(Paths, ExampleCounts)
{
    auto q = example();
    EXPECT_EQ(q->paths_between(0, 2).size(), 2u);
    EXPECT_EQ(q->paths_between(2, 0).size(), 0u);
    for (std::size_t v = 0; v < 3; ++v) {
        const auto& p = q->paths_between(v, v);
        ASSERT_EQ(p.size(), 1u);
        EXPECT_EQ(q->path(p[0]).length(), 0u);
    }
    EXPECT_THROW(q->paths_between(0, 7), UnknownVertex);
}

TEST(Paths, CountsMatchInverseEuler)
{
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        auto q = random_quiver(rng, static_cast<std::size_t>(rng.uniform(2, 5)));
        for (std::size_t u = 0; u < q->n(); ++u)
            for (std::size_t v = 0; v < q->n(); ++v)
                EXPECT_EQ(static_cast<std::int64_t>(q->paths_between(u, v).size()), q->euler().E_inv(u, v));
    }
}

TEST(Paths, ConcatenationIsConsistent)
{
    auto q = example();
    for (std::size_t p = 0; p < q->all_paths().size(); ++p)
        for (std::size_t r = 0; r < q->all_paths().size(); ++r) {
            auto c = q->concat(p, r);
            const auto &pp = q->path(p), &rr = q->path(r);
            if (pp.target != rr.source) {
                EXPECT_FALSE(c.has_value());
                continue;
            }
            ASSERT_TRUE(c.has_value());
            const auto& cc = q->path(*c);
            EXPECT_EQ(cc.source, pp.source);
            EXPECT_EQ(cc.target, rr.target);
            auto arrows = pp.arrows;
            arrows.insert(arrows.end(), rr.arrows.begin(), rr.arrows.end());
            EXPECT_EQ(cc.arrows, arrows);
        }
}
