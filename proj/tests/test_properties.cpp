#include "properties.hpp"

#include <gtest/gtest.h>

namespace {
constexpr std::uint64_t kMaster = 20240611;
}

TEST(Properties, MonotoneCoupling) { EXPECT_EQ(props::monotone_coupling(kMaster, 200), 0u); }
TEST(Properties, GridMatchesBruteForce) { EXPECT_EQ(props::grid_vs_brute_force(kMaster, 200), 0u); }
TEST(Properties, CountingMatchesExhaustive) { EXPECT_EQ(props::counting_vs_exhaustive(kMaster, 200), 0u); }
TEST(Properties, Beta0EqualsComponents) { EXPECT_EQ(props::betti0_equals_components(kMaster, 200), 0u); }
TEST(Properties, CanonicalCodeRelabeling) { EXPECT_EQ(props::canonical_relabeling(kMaster, 1000), 0u); }
TEST(Properties, BoundarySquaredAndEuler) { EXPECT_EQ(props::boundary_and_euler(kMaster, 100), 0u); }
TEST(Properties, RelabelInvariance) { EXPECT_EQ(props::relabel_invariance(kMaster, 100), 0u); }
TEST(Properties, RegionMonotoneAndLocal) { EXPECT_EQ(props::region_monotone_and_local(kMaster, 100), 0u); }
