#include "percograph/model.hpp"
#include "percograph/topology.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace percograph;

namespace {

Adjacency graph_of(std::size_t n, std::vector<Edge> edges)
{
    return Adjacency::from_edges(n, edges);
}

Adjacency octahedron()
{
    // all pairs except the three antipodal ones (0,1), (2,3), (4,5)
    std::vector<Edge> e;
    for (std::uint32_t i = 0; i < 6; ++i)
        for (std::uint32_t j = i + 1; j < 6; ++j)
            if (!(j == i + 1 && i % 2 == 0))
                e.push_back({i, j});
    return graph_of(6, e);
}

std::vector<std::vector<int>> dense_of(const SparseBinaryMatrix& m)
{
    std::vector<std::vector<int>> out(m.rows, std::vector<int>(m.cols(), 0));
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (auto r : m.columns[c])
            out[r][c] ^= 1;
    return out;
}

}  // namespace

TEST(Betti, FilledTriangle)
{
    const auto b = betti_numbers(build_flag_complex(graph_of(3, {{0, 1}, {0, 2}, {1, 2}}), 2), 1);
    EXPECT_EQ(b.betti, (std::vector<std::uint64_t>{1, 0}));
    EXPECT_EQ(b.face_counts, (std::vector<std::uint64_t>{3, 3, 1}));
}

TEST(Betti, HollowSquare)
{
    const auto b = betti_numbers(build_flag_complex(graph_of(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 2), 1);
    EXPECT_EQ(b.betti, (std::vector<std::uint64_t>{1, 1}));
}

TEST(Betti, Octahedron)
{
    const auto complex = build_flag_complex(octahedron(), 3);
    const auto b = betti_numbers(complex, 2);
    EXPECT_EQ(b.betti, (std::vector<std::uint64_t>{1, 0, 1}));
    EXPECT_EQ(b.face_counts, (std::vector<std::uint64_t>{6, 12, 8, 0}));
    EXPECT_EQ(euler_characteristic(complex), 2);
}

TEST(Betti, IsolatedVerticesAndEmpty)
{
    const auto b = betti_numbers(build_flag_complex(graph_of(4, {{0, 1}}), 1), 0);
    EXPECT_EQ(b.betti, (std::vector<std::uint64_t>{3}));
    const auto e = betti_numbers(build_flag_complex(graph_of(0, {}), 2), 1);
    EXPECT_EQ(e.betti, (std::vector<std::uint64_t>{0, 0}));
}

TEST(Betti, CapTooSmallRejected)
{
    const auto tri = build_flag_complex(graph_of(3, {{0, 1}, {0, 2}, {1, 2}}), 1);
    EXPECT_THROW(betti_numbers(tri, 1), std::invalid_argument);
    // a complete complex can report its top dimension
    const auto edge = build_flag_complex(graph_of(3, {{0, 1}}), 1);
    EXPECT_EQ(betti_numbers(edge, 1).betti, (std::vector<std::uint64_t>{2, 0}));
}

TEST(FlagComplex, SimplexLookupAndTruncation)
{
    const auto k4 = graph_of(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    const auto full = build_flag_complex(k4, 3);
    EXPECT_FALSE(full.truncated());
    EXPECT_EQ(full.face_counts(), (std::vector<std::uint64_t>{4, 6, 4, 1}));
    const std::uint32_t tri[] = {0, 2, 3};
    ASSERT_TRUE(full.index_of(2, tri).has_value());
    const auto s = full.simplex(2, *full.index_of(2, tri));
    EXPECT_EQ(std::vector<std::uint32_t>(s.begin(), s.end()), (std::vector<std::uint32_t>{0, 2, 3}));
    const auto cut = build_flag_complex(k4, 2);
    EXPECT_TRUE(cut.truncated());
    EXPECT_THROW(euler_characteristic(cut), std::logic_error);
}

TEST(BoundaryMatrix, RangeChecked)
{
    const auto complex = build_flag_complex(graph_of(3, {{0, 1}, {1, 2}}), 1);
    EXPECT_THROW(boundary_matrix(complex, 0), std::invalid_argument);
    EXPECT_THROW(boundary_matrix(complex, 2), std::invalid_argument);
    const auto d1 = boundary_matrix(complex, 1);
    EXPECT_EQ(d1.rows, 3u);
    EXPECT_EQ(d1.cols(), 2u);
}

TEST(Gf2Rank, MatchesDenseElimination)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto cloud = std::make_shared<const PointCloud>(
            sample_points(40, DensitySpec::uniform_cube(2), seed));
        const auto pg = percolate(build_geometric_graph(cloud, 0.3), 0.8, seed);
        const auto complex = build_flag_complex(kept_subgraph(pg), 3);
        for (int q = 1; q <= 3; ++q) {
            const auto m = boundary_matrix(complex, q);
            EXPECT_EQ(gf2_rank(m), oracle::dense_gf2_rank(dense_of(m))) << "q=" << q;
        }
    }
}

TEST(Gf2Product, BoundaryOfBoundaryIsZero)
{
    const auto complex = build_flag_complex(octahedron(), 3);
    const auto prod = gf2_product(boundary_matrix(complex, 1), boundary_matrix(complex, 2));
    for (const auto& col : prod.columns)
        EXPECT_TRUE(col.empty());
}
