#pragma once

#include "percograph/counting.hpp"
#include "percograph/estimate.hpp"
#include "percograph/model.hpp"
#include "percograph/patterns.hpp"

#include <cstdint>
#include <span>
#include <string_view>

namespace percograph {

/// Which indicator the limit integrals use: h (plain geometric graph),
/// h-hat (percolated at p) or g (geometric graph strictly contains Gamma).
struct VariantSpec {
    enum class Kind { Plain, Percolated, Strict };
    Kind kind = Kind::Plain;
    double p = 1.0;

    static VariantSpec plain() { return {Kind::Plain, 1.0}; }
    static VariantSpec percolated(double p);
    static VariantSpec strict() { return {Kind::Strict, 1.0}; }
    static VariantSpec parse(std::string_view name, double p);
    std::string name() const;
};

/// Volume of the unit ball in R^d.
double unit_ball_volume(int dim);

/// Lebesgue measure of A intersected with the uniform cube's support.
double region_volume_in_cube(const RegionSpec& region, const DensitySpec& density);
/// Probability mass of A under the density (closed form).
double region_probability(const RegionSpec& region, const DensitySpec& density);

/// Exact integral over A of f(x)^k for the supported densities.
double density_power_integral(const DensitySpec& density, const RegionSpec& region, int k);
/// Sampling route for the same integral: x ~ f, averaging f(x)^(k-1) 1_A(x).
MonteCarloEstimate density_power_integral_mc(const DensitySpec& density, const RegionSpec& region,
                                             int k, std::uint64_t samples, std::uint64_t seed);

/// Indicator of the variant on a labelled k-point configuration whose
/// unit-radius proximity mask is `geometric_mask`. The percolated variant
/// draws one coin per vertex pair from `rng`, in pair-index order.
bool variant_indicator(const PatternGraph& gamma, std::uint32_t geometric_mask,
                       const VariantSpec& variant, Stream& rng);

/// mu_{Gamma,A} (and its percolated/strict analogues) at unit radius:
/// (1/k!) * int_A f^k * int h({0, x_1..x_{k-1}}) dx, with the displacement
/// integral sampled uniformly from [-(k-1), k-1]^{d(k-1)}.
MonteCarloEstimate estimate_mu(const PatternGraph& gamma, const DensitySpec& density,
                               const RegionSpec& region, const VariantSpec& variant,
                               std::uint64_t samples, std::uint64_t seed);

/// Hit-or-miss estimate of the volume of the union of unit balls centred at
/// the given row-major points.
MonteCarloEstimate union_ball_volume(std::span<const double> centers, int dim,
                                     std::uint64_t samples, std::uint64_t seed);

/// p_Gamma(lambda) and analogues. For k >= 2 each displacement sample carries
/// a nested union-ball estimate with `inner_samples` points; bias_bound
/// reports lambda^2 Var(V-hat)/2 summed into the estimate's scale.
MonteCarloEstimate estimate_p_gamma(double lambda, const PatternGraph& gamma, int dim,
                                    const VariantSpec& variant, std::uint64_t samples,
                                    std::uint64_t inner_samples, std::uint64_t seed);

/// k^{-1} int_A p_Gamma(rho f(x)) f(x) dx, sampled with x ~ f and one
/// displacement per outer sample.
MonteCarloEstimate estimate_component_limit(const PatternGraph& gamma, const DensitySpec& density,
                                            const RegionSpec& region, double rho,
                                            const VariantSpec& variant, std::uint64_t samples,
                                            std::uint64_t inner_samples, std::uint64_t seed);

/// Pr(|X - Y| <= r) for independent X, Y ~ f.
MonteCarloEstimate pair_connection_probability(const DensitySpec& density, double r,
                                               std::uint64_t samples, std::uint64_t seed);

/// Occurrence probabilities of Gamma on k i.i.d. points at radius r, all
/// estimated from the same configurations. The margins are per-sample
/// differences, so their standard errors account for the pairing.
struct OccurrenceEstimates {
    MonteCarloEstimate plain;       // Pr[G(X_k; r) ~= Gamma]
    MonteCarloEstimate percolated;  // Pr[G(X_k; p, r) ~= Gamma]
    MonteCarloEstimate strict;      // Pr[G(X_k; r) strictly contains Gamma]
    /// percolated - p^m plain
    MonteCarloEstimate coupling_margin;
    /// percolated - p^m plain - p^m (1-p)^C(k,2) strict
    MonteCarloEstimate lower_bound_margin;
};

OccurrenceEstimates estimate_kset_occurrence(const PatternGraph& gamma, const DensitySpec& density,
                                             double r, double p, std::uint64_t samples,
                                             std::uint64_t seed);

}  // namespace percograph
