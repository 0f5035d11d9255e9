#include "percograph/harness.hpp"

#include "percograph/estimate.hpp"
#include "percograph/graph_io.hpp"
#include "percograph/integrals.hpp"
#include "percograph/parallel.hpp"
#include "percograph/poisson.hpp"
#include "percograph/rng.hpp"
#include "percograph/topology.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace percograph {

using nlohmann::json;

double RegimeSpec::radius(std::size_t n) const
{
    if (fixed_radius)
        return *fixed_radius;
    return c * std::pow(static_cast<double>(n), -gamma);
}

double RegimeSpec::probability(std::size_t n) const
{
    const double nd = static_cast<double>(n);
    switch (p_rule) {
    case PRule::Constant:
        return p;
    case PRule::AlphaOverNSquared:
        return std::min(1.0, alpha / (nd * nd));
    case PRule::Vanishing:
        return std::min(1.0, alpha * std::pow(nd, -vanishing_exponent));
    }
    return p;
}

double RegimeSpec::probability_exponent() const
{
    switch (p_rule) {
    case PRule::Constant:
        return 0.0;
    case PRule::AlphaOverNSquared:
        return -2.0;
    case PRule::Vanishing:
        return -vanishing_exponent;
    }
    return 0.0;
}

double RegimeSpec::regime_factor(int exponent) const
{
    switch (p_rule) {
    case PRule::Constant:
        return std::pow(1.0 - p, exponent);
    case PRule::AlphaOverNSquared:
        return std::exp(-alpha / 2.0);
    case PRule::Vanishing:
        return 1.0;
    }
    return 1.0;
}

namespace {

constexpr std::pair<ExperimentKind, const char*> kKindNames[] = {
    {ExperimentKind::SubgraphScaling, "subgraph-scaling"},
    {ExperimentKind::CliqueIdentity, "clique-identity"},
    {ExperimentKind::ComponentScaling, "component-scaling"},
    {ExperimentKind::PoissonApprox, "poisson-approx"},
    {ExperimentKind::BettiScaling, "betti-scaling"},
    {ExperimentKind::IntegralTable, "integral-table"},
};

constexpr std::pair<RegimeSpec::PRule, const char*> kRuleNames[] = {
    {RegimeSpec::PRule::Constant, "constant"},
    {RegimeSpec::PRule::AlphaOverNSquared, "alpha-over-n2"},
    {RegimeSpec::PRule::Vanishing, "vanishing"},
};

std::string rule_name(RegimeSpec::PRule rule)
{
    for (const auto& [r, name] : kRuleNames)
        if (r == rule)
            return name;
    return "constant";
}

RegimeSpec::PRule parse_rule(const std::string& text)
{
    for (const auto& [r, name] : kRuleNames)
        if (text == name)
            return r;
    throw std::invalid_argument("unknown p_rule '" + text + "'");
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where)
{
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw std::invalid_argument("unknown key '" + key + "' in " + where);
}

json region_to_json(const RegionSpec& region)
{
    if (region.kind == RegionSpec::Kind::All)
        return "all";
    json out = json::array();
    for (const auto& [lo, hi] : region.bounds)
        out.push_back({lo, hi});
    return out;
}

RegionSpec region_from_json(const json& value)
{
    if (value.is_string())
        return RegionSpec::parse(value.get<std::string>());
    std::vector<std::pair<double, double>> bounds;
    for (const auto& pair : value) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("region entries must be [lower, upper]");
        bounds.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return RegionSpec::box(std::move(bounds));
}

std::uint64_t experiment_seed(const ExperimentConfig& cfg)
{
    return derive_seed(cfg.seed, to_string(cfg.experiment), 0);
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t n, std::uint64_t t)
{
    return derive_seed(derive_seed(experiment_seed(cfg), "n", n), "trial", t);
}

PercolatedGeometricGraph sample_trial(const ExperimentConfig& cfg, std::size_t n, double r,
                                      double p, std::uint64_t seed)
{
    auto cloud = std::make_shared<const PointCloud>(
        sample_points(n, cfg.density, derive_seed(seed, "points", 0)));
    return percolate(build_geometric_graph(std::move(cloud), r), p,
                     derive_seed(seed, "edges", 0));
}

struct Stat {
    double mean = 0.0;
    double std_error = 0.0;
};

template <class T>
Stat stat_of(const std::vector<T>& values)
{
    Accumulator acc;
    for (const auto v : values)
        acc.add(static_cast<double>(v));
    return {acc.mean(), acc.count() > 1 ? acc.stderr_of_mean() : 0.0};
}

json estimate_json(const MonteCarloEstimate& e)
{
    return {{"mean", e.mean},
            {"stderr", e.std_error},
            {"samples", e.samples},
            {"bias_bound", e.bias_bound}};
}

class Recorder {
public:
    explicit Recorder(ExperimentReport& report) : report_(report) {}

    void check(std::string name, bool passed, double value, double threshold,
               std::string detail = {})
    {
        report_.checks.push_back({std::move(name), passed, value, threshold, std::move(detail)});
    }

    /// value >= bound - sigma * se
    void lower(std::string name, double value, double bound, double se, double sigma,
               std::string detail = {})
    {
        const double threshold = bound - sigma * se;
        check(std::move(name), value >= threshold, value, threshold, std::move(detail));
    }

    /// |value - target| <= sigma * se
    void close(std::string name, double value, double target, double se, double sigma,
               std::string detail = {})
    {
        const double dev = std::abs(value - target);
        check(std::move(name), dev <= sigma * se, dev, sigma * se, std::move(detail));
    }

private:
    ExperimentReport& report_;
};

double combined(std::initializer_list<double> errors)
{
    double s = 0.0;
    for (const double e : errors)
        s += e * e;
    return std::sqrt(s);
}

/// Slope check against `expected`; records a failing check when no fit is possible.
void slope_check(ExperimentReport& report, const std::vector<SeriesPoint>& series,
                 double expected, double tolerance)
{
    Recorder rec(report);
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : series)
        pts.emplace_back(static_cast<double>(s.n), s.mean);
    try {
        const auto fit = fit_scaling_exponent(pts);
        report.fit = fit;
        report.summary["fit"] = {{"slope", fit.slope},
                                 {"intercept", fit.intercept},
                                 {"slope_stderr", fit.slope_stderr},
                                 {"expected_slope", expected}};
        const double dev = std::abs(fit.slope - expected);
        rec.check("scaling-slope", dev <= tolerance, fit.slope, expected,
                  "tolerance " + format_double(tolerance));
    } catch (const std::invalid_argument& e) {
        rec.check("scaling-slope", false, 0.0, expected, e.what());
    }
}

void flatness_check(ExperimentReport& report, const std::vector<NormalizedPoint>& norm,
                    std::optional<double> tolerance)
{
    if (!tolerance || norm.empty())
        return;
    double mean = 0.0;
    for (const auto& v : norm)
        mean += v.value;
    mean /= static_cast<double>(norm.size());
    double spread = 0.0;
    for (const auto& v : norm)
        spread = std::max(spread, mean > 0.0 ? std::abs(v.value - mean) / mean : INFINITY);
    Recorder(report).check("normalized-flatness", spread <= *tolerance, spread, *tolerance,
                           "max relative deviation from the series mean");
}

int binomial_int(int n, int k)
{
    return static_cast<int>(std::llround(binomial(static_cast<std::uint64_t>(n),
                                                  static_cast<std::uint64_t>(k))));
}

// ---------------------------------------------------------------------------

void run_subgraph_scaling(const ExperimentConfig& cfg, ExperimentReport& report)
{
    const auto pattern = PatternGraph::parse(cfg.pattern);
    const int k = pattern.order();
    const int m = pattern.size();
    const int d = cfg.density.dim;
    const bool exact_pair_oracle = k == 2 && cfg.region.kind == RegionSpec::Kind::All;
    std::ostringstream csv;
    csv << "n,trial,r,p,induced,component\n";
    json rows = json::array();
    std::vector<SeriesPoint> series;
    for (const std::size_t n : cfg.n_grid) {
        const double r = cfg.regime.radius(n);
        const double p = cfg.regime.probability(n);
        std::vector<CountReport> reps(cfg.trials);
        parallel_for(cfg.trials, [&](std::size_t t) {
            const auto seed = trial_seed(cfg, n, t);
            reps[t] = count_report(sample_trial(cfg, n, r, p, seed), pattern, cfg.region, seed);
        });
        std::vector<std::uint64_t> induced, comps;
        for (std::size_t t = 0; t < reps.size(); ++t) {
            induced.push_back(reps[t].induced_count);
            comps.push_back(reps[t].component_count);
            csv << n << ',' << t << ',' << format_double(r) << ',' << format_double(p) << ','
                << reps[t].induced_count << ',' << reps[t].component_count << '\n';
        }
        const auto si = stat_of(induced);
        const auto sc = stat_of(comps);
        series.push_back({n, r, p, si.mean, si.std_error});
        json row = {{"n", n},
                    {"r", r},
                    {"p", p},
                    {"mean_induced", si.mean},
                    {"stderr_induced", si.std_error},
                    {"mean_component", sc.mean},
                    {"stderr_component", sc.std_error}};
        const double nr = normalization_factor(Normalization::Subgraph, n, r, p, k, m, d);
        const double ne = normalization_factor(Normalization::SubgraphPerEdge, n, r, p, k, m, d);
        row["normalized"] = si.mean / nr;
        row["normalized_stderr"] = si.std_error / nr;
        row["normalized_per_edge"] = si.mean / ne;
        row["normalized_per_edge_stderr"] = si.std_error / ne;
        if (pattern.is_tree() && k >= 2) {
            const double theta = unit_ball_volume(d);
            const double degree = static_cast<double>(n) * theta * std::pow(r, d) * p;
            row["tree_normalized"] =
                si.mean / static_cast<double>(n) * std::pow(theta / degree, k - 1);
        }
        if (exact_pair_oracle) {
            const auto q = pair_connection_probability(
                cfg.density, r, cfg.prob_samples, derive_seed(experiment_seed(cfg), "pairprob", n));
            const double expected = binomial(n, 2) * p * q.mean;
            const double ratio = si.mean / expected;
            const double ratio_se = combined({si.std_error / expected, ratio * q.std_error / q.mean});
            row["pair_probability"] = q.mean;
            row["exact_ratio"] = ratio;
            row["exact_ratio_stderr"] = ratio_se;
            Recorder(report).close("exact-edge-expectation-n" + std::to_string(n), ratio, 1.0,
                                   ratio_se, cfg.sigma, "count / (C(n,2) p pairprob)");
        }
        rows.push_back(std::move(row));
    }
    report.series = series;
    report.summary["series"] = rows;

    const double gamma = cfg.regime.fixed_radius ? 0.0 : cfg.regime.gamma;
    slope_check(report, series, k - gamma * d * (k - 1) + m * cfg.regime.probability_exponent(),
                cfg.slope_tolerance);
    const auto per_edge =
        normalized_count_series(series, Normalization::SubgraphPerEdge, k, m, d);
    flatness_check(report, per_edge, cfg.flatness_tolerance);

    Recorder rec(report);
    const auto seed = experiment_seed(cfg);
    const auto& last = per_edge.back();
    const auto mu = estimate_mu(pattern, cfg.density, cfg.region, VariantSpec::plain(),
                                cfg.mc_samples, derive_seed(seed, "mu", 0));
    const auto mu_strict = estimate_mu(pattern, cfg.density, cfg.region, VariantSpec::strict(),
                                       cfg.mc_samples, derive_seed(seed, "mu-strict", 0));
    json limits = {{"mu", estimate_json(mu)}, {"mu_strict", estimate_json(mu_strict)}};
    const double factor = cfg.regime.regime_factor(binomial_int(k, 2));
    limits["regime_factor"] = factor;
    rec.lower("subgraph-lower-bound", last.value, mu.mean + factor * mu_strict.mean,
              combined({last.std_error, mu.std_error, factor * mu_strict.std_error}), cfg.sigma,
              "largest n, count / (n^k r^{d(k-1)} p^m)");

    if (cfg.regime.p_rule == RegimeSpec::PRule::Constant) {
        const auto mu_hat =
            estimate_mu(pattern, cfg.density, cfg.region, VariantSpec::percolated(cfg.regime.p),
                        cfg.mc_samples, derive_seed(seed, "mu-hat", 0));
        limits["mu_hat"] = estimate_json(mu_hat);
        const auto plain = normalized_count_series(series, Normalization::Subgraph, k, m, d);
        rec.close("mu-hat-consistency", plain.back().value, mu_hat.mean,
                  combined({plain.back().std_error, mu_hat.std_error}), cfg.sigma,
                  "largest n, count / (n^k r^{d(k-1)})");
    }
    report.summary["limits"] = limits;
    report.raw_csv = csv.str();
}

void run_clique_identity(const ExperimentConfig& cfg, ExperimentReport& report)
{
    const auto pattern = PatternGraph::parse(cfg.pattern);
    const int k = pattern.order();
    const int edges = binomial_int(k, 2);
    const auto seed = experiment_seed(cfg);
    std::ostringstream csv;
    csv << "n,draw,count\n";
    json rows = json::array();
    Recorder rec(report);
    for (const std::size_t n : cfg.n_grid) {
        const double r = cfg.regime.radius(n);
        const double p = cfg.regime.probability(n);
        auto cloud = std::make_shared<const PointCloud>(
            sample_points(n, cfg.density, derive_seed(seed, "cloud", n)));
        const auto graph = build_geometric_graph(cloud, r);
        const auto base_adj = graph.adjacency();
        const auto base = count_induced_subgraphs(base_adj, *cloud, pattern, cfg.region);
        std::vector<std::uint64_t> counts(cfg.trials);
        parallel_for(cfg.trials, [&](std::size_t t) {
            const auto pg =
                percolate(graph, p, derive_seed(derive_seed(seed, "n", n), "draw", t));
            counts[t] = count_induced_subgraphs(kept_subgraph(pg), *cloud, pattern, cfg.region);
        });
        for (std::size_t t = 0; t < counts.size(); ++t)
            csv << n << ',' << t << ',' << counts[t] << '\n';
        const auto s = stat_of(counts);
        const double expected = std::pow(p, edges) * static_cast<double>(base);
        report.series.push_back({n, r, p, s.mean, s.std_error});
        rows.push_back({{"n", n},
                        {"r", r},
                        {"p", p},
                        {"base_count", base},
                        {"expected", expected},
                        {"mean", s.mean},
                        {"stderr", s.std_error},
                        {"ratio", expected > 0.0 ? s.mean / expected : 0.0}});
        const std::string name = "clique-identity-n" + std::to_string(n);
        if (s.std_error > 0.0)
            rec.close(name, s.mean, expected, s.std_error, cfg.sigma);
        else
            rec.check(name, s.mean == expected, s.mean, expected, "zero variance");
    }
    report.summary["series"] = rows;
    report.raw_csv = csv.str();
}

void run_component_scaling(const ExperimentConfig& cfg, ExperimentReport& report)
{
    const auto pattern = PatternGraph::parse(cfg.pattern);
    const int k = pattern.order();
    const int m = pattern.size();
    const int d = cfg.density.dim;
    const int clique_edges = binomial_int(k, 2);
    std::ostringstream csv;
    csv << "n,trial,r,p,component,component_base\n";
    json rows = json::array();
    std::vector<SeriesPoint> series;
    std::vector<double> last_paired;
    for (const std::size_t n : cfg.n_grid) {
        const double r = cfg.regime.radius(n);
        const double p = cfg.regime.probability(n);
        std::vector<std::uint64_t> perc(cfg.trials), base(cfg.trials);
        parallel_for(cfg.trials, [&](std::size_t t) {
            const auto pg = sample_trial(cfg, n, r, p, trial_seed(cfg, n, t));
            const auto& cloud = pg.base().cloud();
            perc[t] = count_components(kept_subgraph(pg), cloud, pattern, cfg.region);
            base[t] = count_components(pg.base().adjacency(), cloud, pattern, cfg.region);
        });
        last_paired.clear();
        for (std::size_t t = 0; t < perc.size(); ++t) {
            csv << n << ',' << t << ',' << format_double(r) << ',' << format_double(p) << ','
                << perc[t] << ',' << base[t] << '\n';
            last_paired.push_back(static_cast<double>(perc[t]) -
                                  std::pow(p, clique_edges) * static_cast<double>(base[t]));
        }
        const auto sp = stat_of(perc);
        const auto sb = stat_of(base);
        series.push_back({n, r, p, sp.mean, sp.std_error});
        const double nd = static_cast<double>(n);
        const double norm = normalization_factor(Normalization::Component, n, r, p, k, m, d);
        rows.push_back({{"n", n},
                        {"r", r},
                        {"p", p},
                        {"mean_component", sp.mean},
                        {"stderr_component", sp.std_error},
                        {"mean_component_base", sb.mean},
                        {"stderr_component_base", sb.std_error},
                        {"per_vertex", sp.mean / nd},
                        {"per_vertex_base", sb.mean / nd},
                        {"normalized", sp.mean / norm},
                        {"normalized_stderr", sp.std_error / norm}});
    }
    report.series = series;
    report.summary["series"] = rows;
    slope_check(report, series, 1.0 + m * cfg.regime.probability_exponent(),
                cfg.slope_tolerance);

    Recorder rec(report);
    const auto seed = experiment_seed(cfg);
    const double rho = std::pow(cfg.regime.c, d);
    const auto limit = [&](const VariantSpec& v, const char* label) {
        return estimate_component_limit(pattern, cfg.density, cfg.region, rho, v, cfg.mc_samples,
                                        cfg.inner_samples, derive_seed(seed, label, 0));
    };
    const auto plain = limit(VariantSpec::plain(), "limit");
    const auto strict = limit(VariantSpec::strict(), "limit-strict");
    json limits = {{"rho", rho}, {"plain", estimate_json(plain)},
                   {"strict", estimate_json(strict)}};
    const SeriesPoint& last = series.back();
    const double nd = static_cast<double>(last.n);
    const double norm =
        normalization_factor(Normalization::Component, last.n, last.r, last.p, k, m, d);
    const double factor = cfg.regime.regime_factor(clique_edges - m);
    limits["regime_factor"] = factor;
    rec.lower("component-lower-bound", last.mean / norm, plain.mean + factor * strict.mean,
              combined({last.std_error / norm, plain.std_error, factor * strict.std_error}) +
                  (plain.bias_bound + factor * strict.bias_bound) / cfg.sigma,
              cfg.sigma, "largest n, components / (n p^m)");

    if (cfg.regime.p_rule == RegimeSpec::PRule::Constant) {
        const auto hat = limit(VariantSpec::percolated(cfg.regime.p), "limit-hat");
        limits["percolated"] = estimate_json(hat);
        const double per_vertex = last.mean / nd;
        limits["percolated_ratio"] = hat.mean > 0.0 ? per_vertex / hat.mean : 0.0;
        rec.lower("percolated-limit-lower-bound", per_vertex, hat.mean,
                  combined({last.std_error / nd, hat.std_error}) + hat.bias_bound / cfg.sigma,
                  cfg.sigma, "largest n, one-sided: components / n against the percolated limit");
        if (cfg.regime.p == 1.0 && cfg.flatness_tolerance) {
            const double rel = plain.mean > 0.0 ? std::abs(per_vertex / plain.mean - 1.0) : 1.0;
            rec.check("unpercolated-limit", rel <= *cfg.flatness_tolerance, rel,
                      *cfg.flatness_tolerance, "relative deviation of components / n");
        }
    }
    if (pattern.is_clique()) {
        const auto s = stat_of(last_paired);
        rec.lower("clique-component-bound", s.mean, 0.0, s.std_error, cfg.sigma,
                  "largest n, paired J' - p^C(k,2) J");
    }
    report.summary["limits"] = limits;
    report.raw_csv = csv.str();
}

void run_poisson_approx(const ExperimentConfig& cfg, ExperimentReport& report)
{
    const auto pattern = PatternGraph::parse(cfg.pattern);
    const int k = pattern.order();
    const int m = pattern.size();
    const int d = cfg.density.dim;
    const auto seed = experiment_seed(cfg);
    std::ostringstream csv;
    csv << "n,trial,count\n";
    json rows = json::array();
    Recorder rec(report);
    for (const std::size_t n : cfg.n_grid) {
        const double r = cfg.regime.radius(n);
        const double p = cfg.regime.probability(n);
        const ModelConfig model{n, r, p, cfg.density, pattern, cfg.region};
        std::vector<std::uint64_t> raw;
        const auto dist = empirical_count_distribution(model, cfg.trials,
                                                       derive_seed(seed, "n", n), &raw);
        for (std::size_t t = 0; t < raw.size(); ++t)
            csv << n << ',' << t << ',' << raw[t] << '\n';
        const auto inputs = estimate_occurrence_probabilities(
            pattern, n, r, p, cfg.density, cfg.prob_samples, derive_seed(seed, "stein", n));
        const double tv = tv_distance(dist, PoissonLaw{dist.mean});
        const double tv_lambda = tv_distance(dist, PoissonLaw{inputs.lambda});
        const double bound = stein_bound(inputs);
        const double bound_se = stein_bound_stderr(inputs);
        const double noise = tv_sampling_noise(inputs.lambda, cfg.trials);
        const double budget = noise + bound_se;
        const double nd = static_cast<double>(n);
        const double rd = std::pow(r, d);
        report.series.push_back({n, r, p, dist.mean, dist.mean_stderr});
        rows.push_back({{"n", n},
                        {"r", r},
                        {"p", p},
                        {"lambda", inputs.lambda},
                        {"empirical_mean", dist.mean},
                        {"empirical_mean_stderr", dist.mean_stderr},
                        {"empirical_tv", tv},
                        {"empirical_tv_vs_lambda", tv_lambda},
                        {"stein_bound", bound},
                        {"stein_bound_stderr", bound_se},
                        {"tv_sampling_noise", noise},
                        {"p1", inputs.p1},
                        {"p1_stderr", inputs.p1_stderr},
                        {"pij", inputs.pij},
                        {"pij_stderr", inputs.pij_stderr},
                        {"trials", cfg.trials},
                        {"normalization_a", nd * std::pow(p, 2 * m + 2 - k) * rd},
                        {"normalization_b", nd * std::pow(p, 2 * m - 2) * rd}});
        rec.check("tv-within-stein-bound-n" + std::to_string(n), tv <= bound + cfg.sigma * budget,
                  tv, bound + cfg.sigma * budget,
                  "budget = sampling noise + bound stderr = " + format_double(budget));
    }
    report.summary["series"] = rows;
    report.raw_csv = csv.str();
}

void run_betti_scaling(const ExperimentConfig& cfg, ExperimentReport& report)
{
    const int k = cfg.kmax;
    const int cap = k + 1;
    const int d = cfg.density.dim;
    std::ostringstream csv;
    csv << "n,trial";
    for (int q = 0; q <= cap; ++q)
        csv << ",f" << q;
    for (int q = 0; q <= k; ++q)
        csv << ",beta" << q;
    csv << '\n';
    json rows = json::array();
    std::vector<SeriesPoint> series;
    for (const std::size_t n : cfg.n_grid) {
        const double r = cfg.regime.radius(n);
        const double p = cfg.regime.probability(n);
        std::vector<BettiVector> results(cfg.trials);
        parallel_for(cfg.trials, [&](std::size_t t) {
            const auto pg = sample_trial(cfg, n, r, p, trial_seed(cfg, n, t));
            results[t] = betti_numbers(build_flag_complex(kept_subgraph(pg), cap), k);
        });
        std::vector<std::uint64_t> top;
        for (std::size_t t = 0; t < results.size(); ++t) {
            csv << n << ',' << t;
            for (const auto f : results[t].face_counts)
                csv << ',' << f;
            for (const auto b : results[t].betti)
                csv << ',' << b;
            csv << '\n';
            top.push_back(results[t].betti[static_cast<std::size_t>(k)]);
        }
        const auto s = stat_of(top);
        series.push_back({n, r, p, s.mean, s.std_error});
        const double norm = normalization_factor(Normalization::Betti, n, r, p, k, 0, d);
        rows.push_back({{"n", n},
                        {"r", r},
                        {"p", p},
                        {"mean_betti", s.mean},
                        {"stderr_betti", s.std_error},
                        {"normalized", s.mean / norm},
                        {"normalized_stderr", s.std_error / norm}});
    }
    report.series = series;
    report.summary["series"] = rows;
    slope_check(report, series,
                2 * k + 2 - cfg.regime.gamma * d * (2 * k + 1) +
                    2 * k * (k - 1) * cfg.regime.probability_exponent(),
                cfg.slope_tolerance);
    flatness_check(report, normalized_count_series(series, Normalization::Betti, k, 0, d),
                   cfg.flatness_tolerance);
    report.raw_csv = csv.str();
}

void run_integral_table(const ExperimentConfig& cfg, ExperimentReport& report)
{
    const auto pattern = PatternGraph::parse(cfg.pattern);
    const int m = pattern.size();
    const double p = cfg.regime.p;
    const auto seed = experiment_seed(cfg);
    std::ostringstream csv;
    csv << "target,variant,mean,stderr,samples,bias_bound\n";
    json rows = json::array();
    const auto emit = [&](const std::string& target, const VariantSpec& v,
                          const MonteCarloEstimate& e) {
        csv << target << ',' << v.name() << ',' << format_double(e.mean) << ','
            << format_double(e.std_error) << ',' << e.samples << ','
            << format_double(e.bias_bound) << '\n';
        json row = estimate_json(e);
        row["target"] = target;
        row["variant"] = v.name();
        rows.push_back(std::move(row));
    };
    const VariantSpec variants[] = {VariantSpec::plain(), VariantSpec::percolated(p),
                                    VariantSpec::strict()};
    std::vector<MonteCarloEstimate> mus;
    for (const auto& v : variants) {
        mus.push_back(estimate_mu(pattern, cfg.density, cfg.region, v, cfg.mc_samples,
                                  derive_seed(seed, "mu-" + v.name(), 0)));
        emit("mu", v, mus.back());
    }
    if (cfg.lambda) {
        for (const auto& v : variants)
            emit("p_gamma", v,
                 estimate_p_gamma(*cfg.lambda, pattern, cfg.density.dim, v, cfg.mc_samples,
                                  cfg.inner_samples, derive_seed(seed, "pgamma-" + v.name(), 0)));
    }
    Recorder rec(report);
    const double pm = std::pow(p, m);
    rec.lower("percolated-mu-lower-bound", mus[1].mean, pm * mus[0].mean,
              combined({mus[1].std_error, pm * mus[0].std_error}), cfg.sigma);
    if (pattern.is_clique())
        rec.check("clique-strict-mu-zero", mus[2].mean == 0.0, mus[2].mean, 0.0);
    report.summary["rows"] = rows;
    report.raw_csv = csv.str();
}

}  // namespace

std::string to_string(ExperimentKind kind)
{
    for (const auto& [k, name] : kKindNames)
        if (k == kind)
            return name;
    return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text)
{
    for (const auto& [k, name] : kKindNames)
        if (text == name)
            return k;
    throw std::invalid_argument("unknown experiment '" + std::string(text) + "'");
}

ExperimentConfig ExperimentConfig::from_json(const json& doc)
{
    if (!doc.is_object())
        throw std::invalid_argument("experiment config must be a JSON object");
    reject_unknown_keys(doc,
                        {"experiment", "pattern", "density", "region", "regime", "n_grid",
                         "trials", "seed", "output", "kmax", "samples", "inner_samples",
                         "prob_samples", "lambda", "tolerances"},
                        "config");
    ExperimentConfig cfg;
    if (!doc.contains("experiment"))
        throw std::invalid_argument("config needs an 'experiment'");
    cfg.experiment = parse_experiment_kind(doc.at("experiment").get<std::string>());
    cfg.pattern = doc.value("pattern", cfg.pattern);
    if (doc.contains("density")) {
        const auto& den = doc.at("density");
        reject_unknown_keys(den, {"kind", "dim", "scale"}, "density");
        cfg.density.kind = parse_density_kind(den.value("kind", std::string("uniform-cube")));
        cfg.density.dim = den.value("dim", 2);
        cfg.density.scale = den.value("scale", 1.0);
    }
    if (doc.contains("region"))
        cfg.region = region_from_json(doc.at("region"));
    if (doc.contains("regime")) {
        const auto& reg = doc.at("regime");
        reject_unknown_keys(reg, {"c", "gamma", "radius", "p_rule", "p", "alpha", "beta"},
                            "regime");
        auto& rg = cfg.regime;
        rg.c = reg.value("c", rg.c);
        rg.gamma = reg.value("gamma", rg.gamma);
        if (reg.contains("radius"))
            rg.fixed_radius = reg.at("radius").get<double>();
        rg.p_rule = parse_rule(reg.value("p_rule", std::string("constant")));
        rg.p = reg.value("p", rg.p);
        rg.alpha = reg.value("alpha", rg.alpha);
        rg.vanishing_exponent = reg.value("beta", rg.vanishing_exponent);
    }
    if (doc.contains("n_grid"))
        cfg.n_grid = doc.at("n_grid").get<std::vector<std::size_t>>();
    cfg.trials = doc.value("trials", cfg.trials);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.output = doc.value("output", cfg.output);
    cfg.kmax = doc.value("kmax", cfg.kmax);
    cfg.mc_samples = doc.value("samples", cfg.mc_samples);
    cfg.inner_samples = doc.value("inner_samples", cfg.inner_samples);
    cfg.prob_samples = doc.value("prob_samples", cfg.prob_samples);
    if (doc.contains("lambda"))
        cfg.lambda = doc.at("lambda").get<double>();
    if (doc.contains("tolerances")) {
        const auto& tol = doc.at("tolerances");
        reject_unknown_keys(tol, {"sigma", "slope", "flatness"}, "tolerances");
        cfg.sigma = tol.value("sigma", cfg.sigma);
        cfg.slope_tolerance = tol.value("slope", cfg.slope_tolerance);
        if (tol.contains("flatness"))
            cfg.flatness_tolerance = tol.at("flatness").get<double>();
    }
    return cfg;
}

json ExperimentConfig::to_json() const
{
    json regime_json = {{"c", regime.c},
                        {"gamma", regime.gamma},
                        {"p_rule", rule_name(regime.p_rule)},
                        {"p", regime.p},
                        {"alpha", regime.alpha},
                        {"beta", regime.vanishing_exponent}};
    if (regime.fixed_radius)
        regime_json["radius"] = *regime.fixed_radius;
    json tolerances = {{"sigma", sigma}, {"slope", slope_tolerance}};
    if (flatness_tolerance)
        tolerances["flatness"] = *flatness_tolerance;
    json out = {{"experiment", to_string(experiment)},
                {"pattern", pattern},
                {"density",
                 {{"kind", density.kind == DensityKind::UniformCube ? "uniform-cube"
                                                                    : "gaussian-isotropic"},
                  {"dim", density.dim},
                  {"scale", density.scale}}},
                {"region", region_to_json(region)},
                {"regime", regime_json},
                {"n_grid", n_grid},
                {"trials", trials},
                {"seed", seed},
                {"output", output},
                {"kmax", kmax},
                {"samples", mc_samples},
                {"inner_samples", inner_samples},
                {"prob_samples", prob_samples},
                {"tolerances", tolerances}};
    if (lambda)
        out["lambda"] = *lambda;
    return out;
}

void ExperimentConfig::validate() const
{
    density.validate();
    const auto gamma_pattern = PatternGraph::parse(pattern);
    if (region.kind == RegionSpec::Kind::AxisBox &&
        static_cast<int>(region.bounds.size()) > density.dim)
        throw std::invalid_argument("region has more bounds than the dimension");
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (!(sigma > 0.0) || !(slope_tolerance > 0.0))
        throw std::invalid_argument("tolerances must be positive");
    if (experiment != ExperimentKind::IntegralTable) {
        if (n_grid.empty())
            throw std::invalid_argument("n_grid must not be empty");
        for (std::size_t i = 0; i < n_grid.size(); ++i) {
            if (n_grid[i] == 0)
                throw std::invalid_argument("n_grid entries must be positive");
            if (i > 0 && n_grid[i] <= n_grid[i - 1])
                throw std::invalid_argument("n_grid must be strictly increasing");
        }
    }
    if (!(regime.p >= 0.0 && regime.p <= 1.0))
        throw std::invalid_argument("p must lie in [0, 1]");
    if (regime.fixed_radius ? !(*regime.fixed_radius > 0.0) : !(regime.c > 0.0))
        throw std::invalid_argument("radius scale must be positive");
    if (regime.p_rule == RegimeSpec::PRule::Vanishing && !(regime.vanishing_exponent > 2.0))
        throw std::invalid_argument("vanishing p_rule needs beta > 2");
    if (regime.p_rule != RegimeSpec::PRule::Constant && !(regime.alpha > 0.0))
        throw std::invalid_argument("alpha must be positive");

    const double critical = 1.0 / density.dim;
    const bool power_law = !regime.fixed_radius;
    switch (experiment) {
    case ExperimentKind::ComponentScaling:
        if (!power_law || std::abs(regime.gamma - critical) > 1e-12)
            throw std::invalid_argument("component-scaling needs gamma = 1/d (got gamma = " +
                                        format_double(regime.gamma) + ", d = " +
                                        std::to_string(density.dim) + ")");
        break;
    case ExperimentKind::BettiScaling:
        if (!power_law || !(regime.gamma > critical))
            throw std::invalid_argument("betti-scaling needs gamma > 1/d (got gamma = " +
                                        format_double(regime.gamma) + ", d = " +
                                        std::to_string(density.dim) + ")");
        if (kmax < 0 || kmax + 1 > 7)
            throw std::invalid_argument("kmax must lie in [0, 6]");
        break;
    case ExperimentKind::CliqueIdentity:
        if (!gamma_pattern.is_clique() || gamma_pattern.order() < 2)
            throw std::invalid_argument("clique-identity needs a clique pattern of order >= 2");
        break;
    case ExperimentKind::PoissonApprox:
        if (region.kind != RegionSpec::Kind::All)
            throw std::invalid_argument("poisson-approx counts over the whole support");
        for (const auto n : n_grid)
            if (n < static_cast<std::size_t>(2 * gamma_pattern.order() - 1))
                throw std::invalid_argument("poisson-approx needs n >= 2k - 1");
        break;
    case ExperimentKind::SubgraphScaling:
        if (gamma_pattern.order() < 2)
            throw std::invalid_argument("subgraph-scaling needs a pattern of order >= 2");
        break;
    case ExperimentKind::IntegralTable:
        if (mc_samples < 2)
            throw std::invalid_argument("samples must be at least 2");
        break;
    }
}

bool ExperimentReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ExperimentReport execute_experiment(const ExperimentConfig& config)
{
    config.validate();
    ExperimentReport report;
    report.summary["config"] = config.to_json();
    switch (config.experiment) {
    case ExperimentKind::SubgraphScaling:
        run_subgraph_scaling(config, report);
        break;
    case ExperimentKind::CliqueIdentity:
        run_clique_identity(config, report);
        break;
    case ExperimentKind::ComponentScaling:
        run_component_scaling(config, report);
        break;
    case ExperimentKind::PoissonApprox:
        run_poisson_approx(config, report);
        break;
    case ExperimentKind::BettiScaling:
        run_betti_scaling(config, report);
        break;
    case ExperimentKind::IntegralTable:
        run_integral_table(config, report);
        break;
    }
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"value", c.value},
                          {"threshold", c.threshold},
                          {"detail", c.detail}});
    report.summary["checks"] = checks;
    report.summary["all_passed"] = report.all_passed();
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config)
{
    config.validate();
    namespace fs = std::filesystem;
    const fs::path dir(config.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + config.output +
                                 "': " + ec.message());
    std::ofstream raw(dir / "raw.csv", std::ios::binary | std::ios::trunc);
    std::ofstream summary(dir / "summary.json", std::ios::binary | std::ios::trunc);
    if (!raw || !summary)
        throw std::runtime_error("output directory '" + config.output + "' is not writable");
    auto report = execute_experiment(config);
    raw << report.raw_csv;
    summary << report.summary.dump(2) << '\n';
    if (!raw || !summary)
        throw std::runtime_error("failed writing experiment output");
    return report;
}

}  // namespace percograph
