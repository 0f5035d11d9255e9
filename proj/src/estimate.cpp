#include "percograph/estimate.hpp"

#include <cmath>
#include <vector>

namespace percograph {

void Accumulator::add(double x)
{
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

void Accumulator::merge(const Accumulator& other)
{
    if (other.count_ == 0)
        return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double delta = other.mean_ - mean_;
    const double total = na + nb;
    mean_ += delta * nb / total;
    m2_ += other.m2_ + delta * delta * na * nb / total;
    count_ += other.count_;
}

double Accumulator::variance() const
{
    return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double Accumulator::stderr_of_mean() const
{
    return count_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
}

Accumulator accumulate_samples(std::uint64_t samples,
                               const std::function<double(std::uint64_t)>& sample)
{
    return accumulate_paired<1>(samples, [&](std::uint64_t i) {
        return std::array<double, 1>{sample(i)};
    })[0];
}

MonteCarloEstimate scaled_estimate(const Accumulator& acc, double weight, std::string target)
{
    MonteCarloEstimate est;
    est.mean = weight * acc.mean();
    est.std_error = std::abs(weight) * acc.stderr_of_mean();
    est.samples = acc.count();
    est.target = std::move(target);
    return est;
}

}  // namespace percograph
