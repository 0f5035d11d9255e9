#include "percograph/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace percograph {

namespace {

double factorial(int k)
{
    double f = 1.0;
    for (int i = 2; i <= k; ++i)
        f *= i;
    return f;
}

double std_normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

std::pair<double, double> axis_bounds(const RegionSpec& region, int axis)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (region.kind == RegionSpec::Kind::All || static_cast<std::size_t>(axis) >= region.bounds.size())
        return {-inf, inf};
    return region.bounds[axis];
}

// Fills the k-1 displacement points of {0, x_1, ..., x_{k-1}} uniformly in
// [-half, half]^{d(k-1)}; the first point stays at the origin.
void sample_displacements(Stream& rng, std::vector<double>& config, int k, int dim, double half)
{
    config.assign(static_cast<std::size_t>(k * dim), 0.0);
    for (std::size_t i = static_cast<std::size_t>(dim); i < config.size(); ++i)
        config[i] = rng.uniform(-half, half);
}

struct UnionVolumeSampler {
    std::vector<double> lo, hi, probe;

    // Returns (box volume, hit fraction).
    std::pair<double, double> run(std::span<const double> centers, int dim, std::uint64_t samples,
                                  Stream& rng)
    {
        const auto d = static_cast<std::size_t>(dim);
        const std::size_t m = centers.size() / d;
        lo.assign(d, std::numeric_limits<double>::infinity());
        hi.assign(d, -std::numeric_limits<double>::infinity());
        for (std::size_t c = 0; c < m; ++c)
            for (std::size_t a = 0; a < d; ++a) {
                lo[a] = std::min(lo[a], centers[c * d + a] - 1.0);
                hi[a] = std::max(hi[a], centers[c * d + a] + 1.0);
            }
        double box = 1.0;
        for (std::size_t a = 0; a < d; ++a)
            box *= hi[a] - lo[a];
        if (d == 1) {
            // On the line the union of unit intervals is measured exactly.
            probe.assign(centers.begin(), centers.end());
            std::sort(probe.begin(), probe.end());
            double length = 0.0, reach = -std::numeric_limits<double>::infinity();
            for (const double c : probe) {
                length += (c + 1.0) - std::max(c - 1.0, reach);
                reach = c + 1.0;
            }
            return {box, length / box};
        }
        probe.resize(d);
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < samples; ++s) {
            for (std::size_t a = 0; a < d; ++a)
                probe[a] = rng.uniform(lo[a], hi[a]);
            for (std::size_t c = 0; c < m; ++c)
                if (squared_distance(probe, centers.subspan(c * d, d)) <= 1.0) {
                    ++hits;
                    break;
                }
        }
        return {box, samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0};
    }
};

}  // namespace

VariantSpec VariantSpec::percolated(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("percolated variant needs p in [0, 1]");
    return {Kind::Percolated, p};
}

VariantSpec VariantSpec::parse(std::string_view name, double p)
{
    if (name == "plain")
        return plain();
    if (name == "percolated")
        return percolated(p);
    if (name == "strict")
        return strict();
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

std::string VariantSpec::name() const
{
    switch (kind) {
    case Kind::Plain:
        return "plain";
    case Kind::Percolated:
        return "percolated";
    case Kind::Strict:
        return "strict";
    }
    return "?";
}

double unit_ball_volume(int dim)
{
    return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

double region_volume_in_cube(const RegionSpec& region, const DensitySpec& density)
{
    double vol = 1.0;
    for (int a = 0; a < density.dim; ++a) {
        const auto [lo, hi] = axis_bounds(region, a);
        vol *= std::max(0.0, std::min(hi, density.scale) - std::max(lo, 0.0));
    }
    return vol;
}

double region_probability(const RegionSpec& region, const DensitySpec& density)
{
    if (density.kind == DensityKind::UniformCube)
        return region_volume_in_cube(region, density) * std::pow(density.scale, -density.dim);
    double prob = 1.0;
    for (int a = 0; a < density.dim; ++a) {
        const auto [lo, hi] = axis_bounds(region, a);
        prob *= std_normal_cdf(hi / density.scale) - std_normal_cdf(lo / density.scale);
    }
    return prob;
}

double density_power_integral(const DensitySpec& density, const RegionSpec& region, int k)
{
    density.validate();
    if (density.kind == DensityKind::UniformCube)
        return region_volume_in_cube(region, density) * std::pow(density.scale, -density.dim * k);
    // Per axis: int_a^b (2 pi s^2)^{-k/2} exp(-k x^2 / 2 s^2) dx
    //         = (2 pi s^2)^{-(k-1)/2} k^{-1/2} [Phi(b sqrt(k)/s) - Phi(a sqrt(k)/s)].
    const double s = density.scale;
    const double axis_scale =
        std::pow(2.0 * std::numbers::pi * s * s, -0.5 * (k - 1)) / std::sqrt(static_cast<double>(k));
    double total = 1.0;
    for (int a = 0; a < density.dim; ++a) {
        const auto [lo, hi] = axis_bounds(region, a);
        const double root_k = std::sqrt(static_cast<double>(k));
        total *= axis_scale * (std_normal_cdf(hi * root_k / s) - std_normal_cdf(lo * root_k / s));
    }
    return total;
}

MonteCarloEstimate density_power_integral_mc(const DensitySpec& density, const RegionSpec& region,
                                             int k, std::uint64_t samples, std::uint64_t seed)
{
    density.validate();
    const auto d = static_cast<std::size_t>(density.dim);
    const auto acc = accumulate_samples(samples, [&](std::uint64_t i) {
        Stream rng(seed, "f-power", i);
        std::vector<double> x(d);
        density.sample(rng, x);
        return region.contains(x) ? std::pow(density.pdf(x), k - 1) : 0.0;
    });
    return scaled_estimate(acc, 1.0, "int_A f^" + std::to_string(k));
}

bool variant_indicator(const PatternGraph& gamma, std::uint32_t geometric_mask,
                       const VariantSpec& variant, Stream& rng)
{
    switch (variant.kind) {
    case VariantSpec::Kind::Plain:
        return gamma.matches(geometric_mask);
    case VariantSpec::Kind::Strict:
        return gamma.strictly_contained_in(geometric_mask);
    case VariantSpec::Kind::Percolated: {
        const int pairs = gamma.order() * (gamma.order() - 1) / 2;
        std::uint32_t kept = 0;
        for (int q = 0; q < pairs; ++q)
            if (rng.uniform() < variant.p)
                kept |= std::uint32_t{1} << q;
        return gamma.matches(geometric_mask & kept);
    }
    }
    return false;
}

MonteCarloEstimate estimate_mu(const PatternGraph& gamma, const DensitySpec& density,
                               const RegionSpec& region, const VariantSpec& variant,
                               std::uint64_t samples, std::uint64_t seed)
{
    const int k = gamma.order();
    if (k < 2)
        throw std::invalid_argument("mu needs a pattern of order >= 2");
    if (samples < 1)
        throw std::invalid_argument("mu needs at least one sample");
    const std::string target = "mu[" + variant.name() + "," + gamma.literal() + "]";
    const double f_integral = density_power_integral(density, region, k);
    if (f_integral == 0.0) {
        MonteCarloEstimate zero;
        zero.samples = samples;
        zero.target = target;
        return zero;
    }
    const int dim = density.dim;
    const double half = k - 1;
    const double cube_volume = std::pow(2.0 * half, dim * (k - 1));

    const auto acc = accumulate_samples(samples, [&](std::uint64_t i) {
        Stream rng(seed, "mu", i);
        std::vector<double> config;
        sample_displacements(rng, config, k, dim, half);
        const auto mask = static_cast<std::uint32_t>(proximity_mask(config, k, dim, 1.0));
        return variant_indicator(gamma, mask, variant, rng) ? 1.0 : 0.0;
    });
    return scaled_estimate(acc, f_integral * cube_volume / factorial(k), target);
}

MonteCarloEstimate union_ball_volume(std::span<const double> centers, int dim,
                                     std::uint64_t samples, std::uint64_t seed)
{
    if (dim < 1 || centers.empty() || centers.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("union_ball_volume needs a nonempty list of d-vectors");
    const auto acc = accumulate_samples(samples, [&](std::uint64_t i) {
        Stream rng(seed, "union", i);
        UnionVolumeSampler sampler;
        return sampler.run(centers, dim, 1, rng).second;
    });
    UnionVolumeSampler box_only;
    Stream unused(seed, "union-box", 0);
    const double box = box_only.run(centers, dim, 0, unused).first;
    return scaled_estimate(acc, box, "union_ball_volume");
}

MonteCarloEstimate estimate_p_gamma(double lambda, const PatternGraph& gamma, int dim,
                                    const VariantSpec& variant, std::uint64_t samples,
                                    std::uint64_t inner_samples, std::uint64_t seed)
{
    if (!(lambda >= 0.0))
        throw std::invalid_argument("lambda must be nonnegative");
    const int k = gamma.order();
    const std::string target = "p_gamma[" + variant.name() + "," + gamma.literal() + "]";
    if (k == 1) {
        MonteCarloEstimate exact;
        exact.mean = std::exp(-lambda * unit_ball_volume(dim));
        exact.samples = samples;
        exact.target = target;
        return exact;
    }
    if (inner_samples < 1)
        throw std::invalid_argument("p_gamma needs inner samples");
    const double half = k - 1;
    const double weight = std::pow(lambda, k - 1) / factorial(k - 1) *
                          std::pow(2.0 * half, dim * (k - 1));
    const double inner = static_cast<double>(inner_samples);

    const auto acc = accumulate_paired<2>(samples, [&](std::uint64_t i) {
        Stream rng(seed, "p_gamma", i);
        std::vector<double> config;
        sample_displacements(rng, config, k, dim, half);
        const auto mask = static_cast<std::uint32_t>(proximity_mask(config, k, dim, 1.0));
        if (!variant_indicator(gamma, mask, variant, rng))
            return std::array<double, 2>{0.0, 0.0};
        Stream inner_rng(seed, "p_gamma-inner", i);
        UnionVolumeSampler sampler;
        const auto [box, frac] = sampler.run(config, dim, inner_samples, inner_rng);
        // Var(V-hat) <= box^2 / (4 inner); exact on the line
        const double bias = dim == 1 ? 0.0 : lambda * lambda * box * box / (8.0 * inner);
        return std::array<double, 2>{std::exp(-lambda * box * frac), bias};
    });
    auto est = scaled_estimate(acc[0], weight, target);
    est.bias_bound = weight * acc[1].mean();
    return est;
}

MonteCarloEstimate estimate_component_limit(const PatternGraph& gamma, const DensitySpec& density,
                                            const RegionSpec& region, double rho,
                                            const VariantSpec& variant, std::uint64_t samples,
                                            std::uint64_t inner_samples, std::uint64_t seed)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("rho must be positive");
    const int k = gamma.order();
    const int dim = density.dim;
    const auto d = static_cast<std::size_t>(dim);
    const double half = k - 1;
    const double cube_volume = std::pow(2.0 * half, dim * (k - 1));
    const double theta = unit_ball_volume(dim);

    const auto acc = accumulate_paired<2>(samples, [&](std::uint64_t i) {
        Stream rng(seed, "component-limit", i);
        std::vector<double> x(d);
        density.sample(rng, x);
        if (!region.contains(x))
            return std::array<double, 2>{0.0, 0.0};
        const double lambda = rho * density.pdf(x);
        if (k == 1)
            return std::array<double, 2>{std::exp(-lambda * theta), 0.0};
        std::vector<double> config;
        sample_displacements(rng, config, k, dim, half);
        const auto mask = static_cast<std::uint32_t>(proximity_mask(config, k, dim, 1.0));
        if (!variant_indicator(gamma, mask, variant, rng))
            return std::array<double, 2>{0.0, 0.0};
        Stream inner_rng(seed, "component-limit-inner", i);
        UnionVolumeSampler sampler;
        const auto [box, frac] = sampler.run(config, dim, inner_samples, inner_rng);
        const double pref = std::pow(lambda, k - 1) / factorial(k - 1) * cube_volume;
        const double bias =
            dim == 1 ? 0.0 : lambda * lambda * box * box / (8.0 * static_cast<double>(inner_samples));
        return std::array<double, 2>{pref * std::exp(-lambda * box * frac), pref * bias};
    });
    auto est = scaled_estimate(acc[0], 1.0 / k,
                               "component_limit[" + variant.name() + "," + gamma.literal() + "]");
    est.bias_bound = acc[1].mean() / k;
    return est;
}

MonteCarloEstimate pair_connection_probability(const DensitySpec& density, double r,
                                               std::uint64_t samples, std::uint64_t seed)
{
    if (!(r > 0.0))
        throw std::invalid_argument("radius must be positive");
    density.validate();
    if (density.kind == DensityKind::UniformCube &&
        r >= density.scale * std::sqrt(static_cast<double>(density.dim))) {
        MonteCarloEstimate one;
        one.mean = 1.0;
        one.samples = samples;
        one.target = "pair_connection_probability";
        return one;
    }
    // Pr = theta r^d E[f(X + r U)], X ~ f, U uniform in the unit ball.
    const auto d = static_cast<std::size_t>(density.dim);
    const double weight = unit_ball_volume(density.dim) * std::pow(r, density.dim);
    const auto acc = accumulate_samples(samples, [&](std::uint64_t i) {
        Stream rng(seed, "pairprob", i);
        std::vector<double> x(d), u(d);
        density.sample(rng, x);
        double norm2 = 0.0;
        for (auto& c : u) {
            c = rng.normal();
            norm2 += c * c;
        }
        const double radius = r * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
        const double s = norm2 > 0.0 ? radius / std::sqrt(norm2) : 0.0;
        for (std::size_t j = 0; j < d; ++j)
            x[j] += s * u[j];
        return density.pdf(x);
    });
    return scaled_estimate(acc, weight, "pair_connection_probability");
}

OccurrenceEstimates estimate_kset_occurrence(const PatternGraph& gamma, const DensitySpec& density,
                                             double r, double p, std::uint64_t samples,
                                             std::uint64_t seed)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in [0, 1]");
    const int k = gamma.order();
    const int m = gamma.size();
    const int pairs = k * (k - 1) / 2;
    const double pm = std::pow(p, m);
    const double strict_factor = pm * std::pow(1.0 - p, pairs);
    const auto d = static_cast<std::size_t>(density.dim);
    const auto variant = VariantSpec::percolated(p);

    const auto acc = accumulate_paired<5>(samples, [&](std::uint64_t i) {
        Stream rng(seed, "kset", i);
        std::vector<double> pts(static_cast<std::size_t>(k) * d);
        for (int v = 0; v < k; ++v)
            density.sample(rng, std::span(pts).subspan(v * d, d));
        const auto mask = static_cast<std::uint32_t>(proximity_mask(pts, k, density.dim, r));
        const double plain = gamma.matches(mask);
        const double strict = gamma.strictly_contained_in(mask);
        const double perc = variant_indicator(gamma, mask, variant, rng);
        return std::array<double, 5>{plain, perc, strict, perc - pm * plain,
                                     perc - pm * plain - strict_factor * strict};
    });
    const std::string tag = "[" + gamma.literal() + "]";
    return {scaled_estimate(acc[0], 1.0, "plain" + tag),
            scaled_estimate(acc[1], 1.0, "percolated" + tag),
            scaled_estimate(acc[2], 1.0, "strict" + tag),
            scaled_estimate(acc[3], 1.0, "coupling_margin" + tag),
            scaled_estimate(acc[4], 1.0, "lower_bound_margin" + tag)};
}

}  // namespace percograph
