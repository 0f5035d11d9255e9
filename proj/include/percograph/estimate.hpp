#pragma once

#include "percograph/parallel.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace percograph {

/// Result of a Monte Carlo estimator.
struct MonteCarloEstimate {
    double mean = 0.0;
    /// Sample standard deviation over sqrt(samples).
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::string target;
    /// Documented upper estimate of systematic bias (nested estimators only).
    double bias_bound = 0.0;
};

/// Streaming mean/variance (Welford), mergeable with Chan's update.
class Accumulator {
public:
    void add(double x);
    void merge(const Accumulator& other);

    std::uint64_t count() const { return count_; }
    double mean() const { return mean_; }
    /// Unbiased sample variance; 0 for fewer than two samples.
    double variance() const;
    double stderr_of_mean() const;

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Evaluates sample(i) for i in [0, samples) in fixed-size chunks (possibly in
/// parallel) and merges the chunk accumulators in index order, so the result
/// is bit-identical for any worker count.
Accumulator accumulate_samples(std::uint64_t samples,
                               const std::function<double(std::uint64_t)>& sample);

/// Multi-valued form of accumulate_samples: sample(i) returns N values that
/// are accumulated side by side (paired estimators share their draws).
template <std::size_t N, class Sample>
std::array<Accumulator, N> accumulate_paired(std::uint64_t samples, Sample&& sample)
{
    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<std::array<Accumulator, N>> parts(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(samples, begin + kChunk);
        for (std::uint64_t i = begin; i < end; ++i) {
            const std::array<double, N> values = sample(i);
            for (std::size_t v = 0; v < N; ++v)
                parts[c][v].add(values[v]);
        }
    });
    std::array<Accumulator, N> total;
    for (const auto& part : parts)
        for (std::size_t v = 0; v < N; ++v)
            total[v].merge(part[v]);
    return total;
}

/// Scales an accumulator by a constant weight into an estimate.
MonteCarloEstimate scaled_estimate(const Accumulator& acc, double weight, std::string target);

}  // namespace percograph
