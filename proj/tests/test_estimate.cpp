#include "percograph/estimate.hpp"
#include "percograph/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

using namespace percograph;

TEST(Accumulator, MatchesTwoPassFormulas)
{
    const double xs[] = {1.0, 4.0, 4.0, 7.0, 10.0, -2.0};
    Accumulator acc;
    double sum = 0.0;
    for (double x : xs) {
        acc.add(x);
        sum += x;
    }
    const double mean = sum / 6.0;
    double ss = 0.0;
    for (double x : xs)
        ss += (x - mean) * (x - mean);
    EXPECT_DOUBLE_EQ(acc.mean(), mean);
    EXPECT_NEAR(acc.variance(), ss / 5.0, 1e-12);
    EXPECT_NEAR(acc.stderr_of_mean(), std::sqrt(ss / 5.0 / 6.0), 1e-12);
}

TEST(Accumulator, MergeEqualsSequential)
{
    Accumulator all, left, right;
    Stream s(3, "acc", 0);
    for (int i = 0; i < 1000; ++i) {
        const double x = s.normal() * 3.0 + 1.0;
        all.add(x);
        (i < 377 ? left : right).add(x);
    }
    left.merge(right);
    EXPECT_EQ(left.count(), all.count());
    EXPECT_NEAR(left.mean(), all.mean(), 1e-12);
    EXPECT_NEAR(left.variance(), all.variance(), 1e-10);
}

TEST(AccumulateSamples, IndependentOfThreadCount)
{
    const auto run = [] {
        return accumulate_samples(50000, [](std::uint64_t i) {
            return Stream(17, "mc", i).uniform();
        });
    };
    setenv("PERCOGRAPH_THREADS", "1", 1);
    const auto one = run();
    setenv("PERCOGRAPH_THREADS", "4", 1);
    const auto four = run();
    unsetenv("PERCOGRAPH_THREADS");
    EXPECT_EQ(one.mean(), four.mean());
    EXPECT_EQ(one.variance(), four.variance());
}

TEST(ScaledEstimate, ScalesMeanAndError)
{
    Accumulator acc;
    acc.add(1.0);
    acc.add(3.0);
    const auto e = scaled_estimate(acc, 2.0, "t");
    EXPECT_DOUBLE_EQ(e.mean, 4.0);
    EXPECT_DOUBLE_EQ(e.std_error, 2.0 * acc.stderr_of_mean());
    EXPECT_EQ(e.samples, 2u);
    EXPECT_EQ(e.target, "t");
}
