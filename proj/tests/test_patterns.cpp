#include "percograph/patterns.hpp"
#include "percograph/rng.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using namespace percograph;

namespace {

std::vector<std::pair<int, int>> edges_of(const SmallGraph& g)
{
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j < g.order; ++j)
        for (int i = 0; i < j; ++i)
            if (g.has_edge(i, j))
                out.emplace_back(i, j);
    return out;
}

SmallGraph random_graph(int k, Stream& rng, double density)
{
    std::vector<std::pair<int, int>> e;
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i)
            if (rng.uniform() < density)
                e.emplace_back(i, j);
    return SmallGraph::from_edges(k, e);
}

}  // namespace

TEST(CanonicalCode, FourVertexClasses)
{
    std::set<CanonicalCode> all, connected;
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
        const SmallGraph g{4, mask};
        all.insert(canonical_code(g));
        if (g.connected())
            connected.insert(canonical_code(g));
    }
    EXPECT_EQ(all.size(), 11u);
    EXPECT_EQ(connected.size(), 6u);
}

TEST(CanonicalCode, AgreesWithPermutationOracleOnFiveVertices)
{
    // all 1024 labelled graphs on 5 vertices fall into 34 classes
    std::map<CanonicalCode, SmallGraph> reps;
    for (std::uint32_t mask = 0; mask < 1024; ++mask) {
        const SmallGraph g{5, mask};
        const auto code = canonical_code(g);
        const auto it = reps.find(code);
        if (it == reps.end()) {
            for (const auto& [c, other] : reps)
                ASSERT_FALSE(oracle::isomorphic(5, edges_of(g), edges_of(other)));
            reps.emplace(code, g);
        } else {
            ASSERT_TRUE(oracle::isomorphic(5, edges_of(g), edges_of(it->second)));
        }
    }
    EXPECT_EQ(reps.size(), 34u);
}

TEST(CanonicalCode, RelabelingInvariance)
{
    Stream rng(2024, "canon", 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 2 + static_cast<int>(rng.below(7));
        const auto g = random_graph(k, rng, rng.uniform());
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto h = g.permuted(perm);
        ASSERT_EQ(h.edge_count(), g.edge_count());
        ASSERT_EQ(canonical_code(g), canonical_code(h)) << "k=" << k << " mask=" << g.mask;
    }
}

TEST(CanonicalCode, DistinguishesOrderAndRejectsLargeGraphs)
{
    EXPECT_NE(canonical_code(SmallGraph{3, 0}), canonical_code(SmallGraph{4, 0}));
    EXPECT_THROW(canonical_code(SmallGraph{9, 0}), std::invalid_argument);
}

TEST(PatternGraph, ParseLiteralAndAliases)
{
    const auto tri = PatternGraph::parse("3:01,02,12");
    EXPECT_EQ(tri.order(), 3);
    EXPECT_EQ(tri.size(), 3);
    EXPECT_TRUE(tri.is_clique());
    EXPECT_EQ(tri.code(), PatternGraph::parse("K3").code());
    EXPECT_EQ(PatternGraph::parse("P4").size(), 3);
    EXPECT_TRUE(PatternGraph::parse("P4").is_tree());
    EXPECT_EQ(PatternGraph::parse("C4").size(), 4);
    EXPECT_EQ(PatternGraph::parse("K2").order(), 2);
    EXPECT_EQ(PatternGraph::parse("K1").order(), 1);
    EXPECT_EQ(PatternGraph::parse("4:01,12,23").code(), PatternGraph::parse("P4").code());
}

TEST(PatternGraph, RejectsInvalidPatterns)
{
    EXPECT_THROW(PatternGraph::parse("4:01,23"), std::invalid_argument);   // disconnected
    EXPECT_THROW(PatternGraph::parse("3:01,05"), std::invalid_argument);   // out of range
    EXPECT_THROW(PatternGraph::parse("3:00,01,12"), std::invalid_argument);  // self-loop
    EXPECT_THROW(PatternGraph::parse("9:01"), std::invalid_argument);
    EXPECT_THROW(PatternGraph::parse("Q3"), std::invalid_argument);
}

TEST(PatternGraph, LabelledCopiesCountAutomorphisms)
{
    // k! / |Aut|
    EXPECT_EQ(PatternGraph::parse("K3").labelled_copies().size(), 1u);
    EXPECT_EQ(PatternGraph::parse("P3").labelled_copies().size(), 3u);
    EXPECT_EQ(PatternGraph::parse("C4").labelled_copies().size(), 3u);
    EXPECT_EQ(PatternGraph::parse("P4").labelled_copies().size(), 12u);
    EXPECT_EQ(PatternGraph::parse("4:01,02,03").labelled_copies().size(), 4u);
    EXPECT_EQ(PatternGraph::parse("P5").labelled_copies().size(), 60u);
}

TEST(PatternGraph, MatchesAgreesWithCanonicalCode)
{
    Stream rng(5, "match", 0);
    for (const char* lit : {"P3", "K3", "P4", "C4", "K4", "5:01,12,23,34,40", "6:01,02,03,04,05"}) {
        const auto pat = PatternGraph::parse(lit);
        const int k = pat.order();
        for (int t = 0; t < 300; ++t) {
            const auto g = random_graph(k, rng, 0.5);
            ASSERT_EQ(pat.matches(g.mask), canonical_code(g) == pat.code()) << lit;
        }
    }
}

TEST(StrictSupergraph, Examples)
{
    const auto p3 = PatternGraph::parse("P3");
    const auto k3 = PatternGraph::parse("K3");
    const SmallGraph tri{3, 0b111};
    const SmallGraph path{3, 0b011};
    EXPECT_TRUE(strict_supergraph_indicator(tri, p3));
    EXPECT_FALSE(strict_supergraph_indicator(tri, k3));
    EXPECT_FALSE(strict_supergraph_indicator(path, p3));
    EXPECT_THROW(strict_supergraph_indicator(SmallGraph{4, 0}, p3), std::invalid_argument);
}

TEST(StrictSupergraph, AgreesWithBruteForce)
{
    const auto c4 = PatternGraph::parse("C4");
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
        const SmallGraph host{4, mask};
        bool expected = false;
        for (const auto copy : c4.labelled_copies())
            expected |= (copy & mask) == copy && copy != mask;
        EXPECT_EQ(strict_supergraph_indicator(host, c4), expected);
    }
}
