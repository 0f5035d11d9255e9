#pragma once

#include "percograph/counting.hpp"
#include "percograph/estimate.hpp"
#include "percograph/model.hpp"
#include "percograph/patterns.hpp"

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace percograph {

/// e^{-lambda} lambda^j / j!, evaluated in log space.
double poisson_pmf(double lambda, std::uint64_t j);

/// Smallest J with sum_{j<=J} pmf(j) > 1 - 1e-12.
std::uint64_t poisson_truncation_point(double lambda);

/// Empirical law of a nonnegative integer count.
struct CountDistribution {
    std::vector<double> pmf;  // pmf[j] = Pr(count = j)
    std::uint64_t trials = 0;
    double mean = 0.0;

    static CountDistribution from_counts(std::span<const std::uint64_t> counts);
    double at(std::uint64_t j) const { return j < pmf.size() ? pmf[j] : 0.0; }
    double stderr_of_mean() const { return mean_stderr; }

    double mean_stderr = 0.0;
};

struct PoissonLaw {
    double lambda = 0.0;
};

using CountLaw = std::variant<CountDistribution, PoissonLaw>;

/// Half the L1 distance. Poisson laws are summed up to their truncation
/// point (or the other law's support, whichever is larger).
double tv_distance(const CountLaw& a, const CountLaw& b);

/// Inputs to the dependency-graph bound for G'_n written as a sum of
/// exchangeable indicators over k-subsets of n points.
struct SteinInputs {
    std::uint64_t n = 0;
    int k = 0;
    double p1 = 0.0;
    /// pij[h-1] for overlap h in 1..k-1.
    std::vector<double> pij;
    double lambda = 0.0;
    /// Monte Carlo standard errors of p1 and pij (zero when exact).
    double p1_stderr = 0.0;
    std::vector<double> pij_stderr;
};

/// Binomial coefficient as a double.
double binomial(std::uint64_t n, std::uint64_t k);

/// min(3, 1/lambda) (B1 + B2) with
/// B1 = C(n,k) sum_h C(k,h) C(n-k,k-h) pij(h) and
/// B2 = C(n,k) (C(n,k) - C(n-k,k)) p1^2. Zero when lambda = 0.
double stein_bound(const SteinInputs& inputs);

/// First-order propagation of the input standard errors through the bound
/// (prefactor held fixed).
double stein_bound_stderr(const SteinInputs& inputs);

/// p1 and pij(h) by importance sampling: the first point is drawn from f and
/// the others uniformly from the cube of half-side (t-1) r around it (t
/// points in total), weighted by their densities. Two overlapping k-sets
/// see the same coin on a shared vertex pair.
SteinInputs estimate_occurrence_probabilities(const PatternGraph& gamma, std::uint64_t n, double r,
                                              double p, const DensitySpec& density,
                                              std::uint64_t samples, std::uint64_t seed);

/// Parameters of one full model draw.
struct ModelConfig {
    std::size_t n = 0;
    double r = 0.0;
    double p = 1.0;
    DensitySpec density;
    PatternGraph pattern;
    RegionSpec region;
};

/// Induced-count of one independent model draw driven by trial_seed.
std::uint64_t simulate_induced_count(const ModelConfig& config, std::uint64_t trial_seed);

/// Runs `trials` independent draws (trial t uses derive_seed(seed, "trial", t)).
/// If raw is non-null it receives the per-trial counts.
CountDistribution empirical_count_distribution(const ModelConfig& config, std::uint64_t trials,
                                               std::uint64_t seed,
                                               std::vector<std::uint64_t>* raw = nullptr);

/// Expected half-L1 sampling noise of an empirical law of `trials` draws
/// around Po(lambda): 1/2 sum_j sqrt(pi_j (1 - pi_j) / trials).
double tv_sampling_noise(double lambda, std::uint64_t trials);

}  // namespace percograph
