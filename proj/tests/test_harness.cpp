#include "percograph/harness.hpp"
#include "percograph/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace percograph;
using nlohmann::json;

namespace {

ExperimentConfig small_config(const std::string& kind)
{
    ExperimentConfig cfg;
    cfg.experiment = parse_experiment_kind(kind);
    cfg.density = DensitySpec::uniform_cube(2);
    cfg.n_grid = {100, 200, 400};
    cfg.trials = 10;
    cfg.seed = 3;
    cfg.mc_samples = 20000;
    cfg.inner_samples = 256;
    cfg.prob_samples = 20000;
    cfg.regime.c = 1.0;
    cfg.regime.gamma = 0.5;
    cfg.regime.p = 0.7;
    return cfg;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(FitScalingExponent, NoiselessPowerLaw)
{
    std::vector<std::pair<double, double>> s;
    for (double n : {100.0, 200.0, 400.0, 800.0, 1600.0})
        s.emplace_back(n, 7.0 * std::pow(n, 2.5));
    const auto fit = fit_scaling_exponent(s);
    EXPECT_NEAR(fit.slope, 2.5, 1e-12);
    EXPECT_NEAR(std::exp(fit.intercept), 7.0, 1e-9);
    EXPECT_NEAR(fit.slope_stderr, 0.0, 1e-10);
    EXPECT_EQ(fit.points.size(), 5u);
}

TEST(FitScalingExponent, NoisyQuadratic)
{
    Stream rng(4, "fit", 0);
    std::vector<std::pair<double, double>> s;
    for (double n = 100; n <= 10000; n *= 1.5)
        s.emplace_back(n, n * n * (1.0 + 0.01 * rng.normal()));
    EXPECT_NEAR(fit_scaling_exponent(s).slope, 2.0, 0.05);
}

TEST(FitScalingExponent, Rejections)
{
    const std::vector<std::pair<double, double>> two{{1.0, 1.0}, {2.0, 4.0}};
    EXPECT_THROW(fit_scaling_exponent(two), std::invalid_argument);
    const std::vector<std::pair<double, double>> neg{{1.0, 1.0}, {2.0, -4.0}, {3.0, 9.0}};
    EXPECT_THROW(fit_scaling_exponent(neg), std::invalid_argument);
}

TEST(NormalizedCountSeries, Normalisations)
{
    const SeriesPoint row{100, 0.1, 0.5, 10.0, 1.0};
    // subgraph, k = 3: n^3 r^{2*2}
    EXPECT_NEAR(normalization_factor(Normalization::Subgraph, 100, 0.1, 0.5, 3, 3, 2), 1e6 * 1e-4, 1e-9);
    // clique: per-edge normalisation uses p^m = p^C(k,2)
    EXPECT_NEAR(normalization_factor(Normalization::SubgraphPerEdge, 100, 0.1, 0.5, 3, 3, 2),
                100.0 * 0.125, 1e-9);
    EXPECT_NEAR(normalization_factor(Normalization::Component, 100, 0.1, 0.5, 2, 1, 2), 50.0, 1e-12);
    // betti at p = 1 reduces to n^{2k+2} r^{d(2k+1)}
    EXPECT_NEAR(normalization_factor(Normalization::Betti, 10, 0.5, 1.0, 1, 0, 2),
                1e4 * std::pow(0.5, 6), 1e-9);
    const std::vector<SeriesPoint> rows{row};
    const auto out = normalized_count_series(rows, Normalization::Component, 2, 1, 2);
    EXPECT_NEAR(out[0].value, 0.2, 1e-15);
    EXPECT_NEAR(out[0].std_error, 0.02, 1e-15);
    const std::vector<SeriesPoint> zero{{100, 0.1, 0.0, 1.0, 0.1}};
    EXPECT_THROW(normalized_count_series(zero, Normalization::Component, 2, 1, 2), std::invalid_argument);
}

TEST(RegimeSpec, Rules)
{
    RegimeSpec r;
    r.c = 2.0;
    r.gamma = 0.5;
    EXPECT_NEAR(r.radius(100), 0.2, 1e-15);
    r.p_rule = RegimeSpec::PRule::AlphaOverNSquared;
    r.alpha = 3.0;
    EXPECT_NEAR(r.probability(100), 3e-4, 1e-18);
    EXPECT_NEAR(r.regime_factor(3), std::exp(-1.5), 1e-15);
    r.p_rule = RegimeSpec::PRule::Constant;
    r.p = 0.4;
    EXPECT_NEAR(r.regime_factor(3), 0.216, 1e-15);
    r.p_rule = RegimeSpec::PRule::Vanishing;
    EXPECT_EQ(r.regime_factor(3), 1.0);
}

TEST(ExperimentConfig, JsonRoundTrip)
{
    const json doc = json::parse(R"({
        "experiment": "component-scaling", "pattern": "K3",
        "density": {"kind": "gaussian-isotropic", "dim": 3, "scale": 0.5},
        "region": [[0, 1], [-1, 1]],
        "regime": {"c": 1.5, "gamma": 0.3333333333333333, "p_rule": "alpha-over-n2", "alpha": 2},
        "n_grid": [10, 20, 40], "trials": 7, "seed": 99, "output": "x",
        "samples": 1234, "tolerances": {"sigma": 3, "slope": 0.2, "flatness": 0.15}})");
    const auto cfg = ExperimentConfig::from_json(doc);
    EXPECT_EQ(cfg.experiment, ExperimentKind::ComponentScaling);
    EXPECT_EQ(cfg.density.kind, DensityKind::GaussianIsotropic);
    EXPECT_EQ(cfg.region.bounds.size(), 2u);
    EXPECT_EQ(cfg.regime.p_rule, RegimeSpec::PRule::AlphaOverNSquared);
    EXPECT_EQ(cfg.mc_samples, 1234u);
    EXPECT_EQ(*cfg.flatness_tolerance, 0.15);
    const auto again = ExperimentConfig::from_json(cfg.to_json());
    EXPECT_EQ(again.to_json(), cfg.to_json());
}

TEST(ExperimentConfig, Rejections)
{
    EXPECT_THROW(ExperimentConfig::from_json(json::parse(R"({"experiment": "x"})")),
                 std::invalid_argument);
    EXPECT_THROW(ExperimentConfig::from_json(json::parse(R"({"experiment": "integral-table", "trails": 3})")),
                 std::invalid_argument);

    auto betti = small_config("betti-scaling");
    betti.regime.gamma = 0.5;  // = 1/d
    EXPECT_THROW(betti.validate(), std::invalid_argument);
    betti.regime.gamma = 0.6;
    EXPECT_NO_THROW(betti.validate());

    auto comp = small_config("component-scaling");
    comp.regime.gamma = 0.6;
    EXPECT_THROW(comp.validate(), std::invalid_argument);

    auto grid = small_config("subgraph-scaling");
    grid.n_grid = {100, 100, 200};
    EXPECT_THROW(grid.validate(), std::invalid_argument);
    grid.n_grid = {100, 200};
    grid.trials = 0;
    EXPECT_THROW(grid.validate(), std::invalid_argument);

    auto clique = small_config("clique-identity");
    clique.pattern = "P3";
    EXPECT_THROW(clique.validate(), std::invalid_argument);
}

TEST(RunExperiment, UnwritableOutputRejected)
{
    auto cfg = small_config("integral-table");
    cfg.output = "/proc/percograph-no-such-dir/out";
    EXPECT_THROW(run_experiment(cfg), std::runtime_error);
}

TEST(RunExperiment, WritesFilesAndIsDeterministic)
{
    const auto dir = std::filesystem::temp_directory_path() / "percograph_harness_test";
    std::filesystem::remove_all(dir);
    auto cfg = small_config("subgraph-scaling");
    cfg.pattern = "P3";
    cfg.output = (dir / "a").string();
    const auto first = run_experiment(cfg);
    cfg.output = (dir / "b").string();
    run_experiment(cfg);
    const auto raw_a = slurp(dir / "a" / "raw.csv");
    EXPECT_FALSE(raw_a.empty());
    EXPECT_EQ(raw_a, slurp(dir / "b" / "raw.csv"));
    EXPECT_EQ(raw_a, first.raw_csv);
    const auto summary = json::parse(slurp(dir / "a" / "summary.json"));
    EXPECT_EQ(summary.at("config").at("seed"), 3);
    EXPECT_EQ(summary.at("series").size(), 3u);
    EXPECT_TRUE(summary.at("series")[0].contains("tree_normalized"));
    EXPECT_EQ(summary.at("all_passed").get<bool>(), first.all_passed());
    std::filesystem::remove_all(dir);
}

TEST(ExecuteExperiment, EveryKindRuns)
{
    for (const char* kind : {"subgraph-scaling", "clique-identity", "component-scaling",
                             "poisson-approx", "betti-scaling", "integral-table"}) {
        auto cfg = small_config(kind);
        cfg.pattern = std::string(kind) == "component-scaling" ? "K1" : "K2";
        if (std::string(kind) == "betti-scaling") {
            cfg.regime.gamma = 0.6;
            cfg.kmax = 0;
        }
        if (std::string(kind) == "integral-table")
            cfg.lambda = 1.0;
        const auto report = execute_experiment(cfg);
        EXPECT_FALSE(report.raw_csv.empty()) << kind;
        EXPECT_FALSE(report.checks.empty()) << kind;
        EXPECT_TRUE(report.summary.contains("config")) << kind;
    }
}

TEST(ExecuteExperiment, CliqueIdentityRatios)
{
    auto cfg = small_config("clique-identity");
    cfg.pattern = "K3";
    cfg.n_grid = {300};
    cfg.regime.fixed_radius = 0.1;
    cfg.trials = 400;
    const auto report = execute_experiment(cfg);
    ASSERT_EQ(report.summary.at("series").size(), 1u);
    const auto& row = report.summary.at("series")[0];
    EXPECT_GT(row.at("base_count").get<double>(), 0.0);
    EXPECT_TRUE(report.all_passed());
}

TEST(ExecuteExperiment, ThreadCountDoesNotChangeOutput)
{
    auto cfg = small_config("betti-scaling");
    cfg.regime.gamma = 0.55;
    setenv("PERCOGRAPH_THREADS", "1", 1);
    const auto one = execute_experiment(cfg);
    setenv("PERCOGRAPH_THREADS", "3", 1);
    const auto three = execute_experiment(cfg);
    unsetenv("PERCOGRAPH_THREADS");
    EXPECT_EQ(one.raw_csv, three.raw_csv);
    EXPECT_EQ(one.summary.dump(), three.summary.dump());
}
