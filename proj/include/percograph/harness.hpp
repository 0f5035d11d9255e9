#pragma once

#include "percograph/counting.hpp"
#include "percograph/model.hpp"
#include "percograph/patterns.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace percograph {

/// OLS fit of log(value) against log(n).
struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    std::vector<std::pair<double, double>> points;  // (log n, log value)
};

/// Needs at least three points with positive n and value.
ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> series);

enum class Normalization {
    Subgraph,         // n^k r^{d(k-1)}
    SubgraphPerEdge,  // n^k r^{d(k-1)} p^m
    Component,        // n p^m
    Betti,            // n^{2k+2} r^{d(2k+1)} p^{2k(k-1)}, k the Betti index
};

/// Per-n aggregate of an experiment.
struct SeriesPoint {
    std::size_t n = 0;
    double r = 0.0;
    double p = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
};

struct NormalizedPoint {
    std::size_t n = 0;
    double value = 0.0;
    double std_error = 0.0;
};

/// `order` is the pattern order (or the Betti index for Normalization::Betti),
/// `size` the pattern edge count.
double normalization_factor(Normalization kind, std::size_t n, double r, double p, int order,
                            int size, int dim);

/// Divides means and standard errors by the normalisation; throws
/// std::invalid_argument when a normalisation is zero.
std::vector<NormalizedPoint> normalized_count_series(std::span<const SeriesPoint> rows,
                                                     Normalization kind, int order, int size,
                                                     int dim);

/// r_n = c n^{-gamma} (or a fixed radius) and the percolation schedule.
struct RegimeSpec {
    enum class PRule { Constant, AlphaOverNSquared, Vanishing };

    double c = 1.0;
    double gamma = 0.5;
    std::optional<double> fixed_radius;
    PRule p_rule = PRule::Constant;
    double p = 1.0;
    double alpha = 1.0;
    /// Vanishing rule: p_n = alpha n^{-vanishing_exponent}, exponent > 2.
    double vanishing_exponent = 3.0;

    double radius(std::size_t n) const;
    double probability(std::size_t n) const;
    /// d log p_n / d log n.
    double probability_exponent() const;
    /// (1-p)^{exponent}, e^{-alpha/2} or 1 for the three schedules.
    double regime_factor(int exponent) const;
};

enum class ExperimentKind {
    SubgraphScaling,
    CliqueIdentity,
    ComponentScaling,
    PoissonApprox,
    BettiScaling,
    IntegralTable,
};

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::SubgraphScaling;
    std::string pattern = "K2";
    DensitySpec density;
    RegionSpec region;
    RegimeSpec regime;
    std::vector<std::size_t> n_grid = {250, 500, 1000, 2000, 4000};
    std::uint64_t trials = 100;
    std::uint64_t seed = 1;
    std::string output = "out";
    /// Betti index for betti-scaling.
    int kmax = 1;
    /// Monte Carlo sample counts for integral estimates and Stein inputs.
    std::uint64_t mc_samples = 200000;
    std::uint64_t inner_samples = 4096;
    std::uint64_t prob_samples = 200000;
    /// lambda for p_Gamma rows in integral-table (omitted when unset).
    std::optional<double> lambda;
    /// Standard errors allowed by every stochastic check.
    double sigma = 4.0;
    double slope_tolerance = 0.1;
    /// Max relative spread of the normalised series; no check when unset.
    std::optional<double> flatness_tolerance;

    static ExperimentConfig from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
    /// Rejects invalid configurations before any computation.
    void validate() const;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct ExperimentReport {
    std::string raw_csv;
    nlohmann::json summary;
    std::vector<SeriesPoint> series;
    std::optional<ScalingFit> fit;
    std::vector<CheckResult> checks;

    bool all_passed() const;
};

/// Runs the recipe without touching the filesystem.
ExperimentReport execute_experiment(const ExperimentConfig& config);

/// Validates, checks that <output>/raw.csv and <output>/summary.json are
/// writable, runs the recipe and writes both files.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace percograph
