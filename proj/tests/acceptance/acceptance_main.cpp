// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Pass criterion numbers as arguments to run a subset.

#include "percograph/counting.hpp"
#include "percograph/graph_io.hpp"
#include "percograph/harness.hpp"
#include "percograph/integrals.hpp"
#include "percograph/poisson.hpp"
#include "percograph/rng.hpp"
#include "percograph/topology.hpp"

#include "oracles.hpp"
#include "properties.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace percograph;

namespace {

constexpr std::uint64_t kMaster = 20240611;
constexpr double kSigma = 4.0;

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string num(double x) { return fmt("%.6g", x); }

const CheckResult* find_check(const ExperimentReport& r, const std::string& name)
{
    for (const auto& c : r.checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

std::string describe(const CheckResult* c)
{
    if (!c)
        return "missing check";
    return c->name + " " + (c->passed ? "ok" : "FAILED") + " (value " + num(c->value) +
           ", threshold " + num(c->threshold) + ")";
}

// 1 ------------------------------------------------------------------------
Outcome exact_edge_expectation()
{
    const std::size_t n = 1000;
    const double r = 0.05, p = 0.4;
    const std::uint64_t trials = 500;
    const ModelConfig model{n, r, p, DensitySpec::uniform_cube(2), PatternGraph::parse("K2"),
                            RegionSpec::all()};
    const auto dist = empirical_count_distribution(model, trials, derive_seed(kMaster, "c1", 0));
    const double q = oracle::unit_square_pair_probability(r);
    const double expected = binomial(n, 2) * p * q;
    const double dev = std::abs(dist.mean - expected);
    return {dev <= kSigma * dist.mean_stderr,
            "mean " + num(dist.mean) + " vs C(n,2) p q = " + num(expected) + ", |dev| " + num(dev) +
                " <= 4 stderr " + num(kSigma * dist.mean_stderr)};
}

// 2 ------------------------------------------------------------------------
Outcome clique_identity()
{
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::CliqueIdentity;
    cfg.pattern = "K3";
    cfg.density = DensitySpec::uniform_cube(2);
    cfg.regime.fixed_radius = 0.06;
    cfg.regime.p = 0.5;
    cfg.n_grid = {800};
    cfg.trials = 2000;
    cfg.seed = derive_seed(kMaster, "c2", 0);
    const auto report = execute_experiment(cfg);
    const auto& row = report.summary.at("series")[0];
    const auto* check = find_check(report, "clique-identity-n800");
    return {check && check->passed,
            "base triangles " + num(row.at("base_count").get<double>()) + ", mean " +
                num(row.at("mean").get<double>()) + " vs p^3 base " +
                num(row.at("expected").get<double>()) + ", ratio " +
                num(row.at("ratio").get<double>()) + "; " + describe(check)};
}

// 3 ------------------------------------------------------------------------
Outcome mu_closed_forms()
{
    const auto k2 = PatternGraph::parse("K2");
    const auto line = estimate_mu(k2, DensitySpec::uniform_cube(1), RegionSpec::all(),
                                  VariantSpec::plain(), 1000000, derive_seed(kMaster, "c3", 1));
    const auto square = estimate_mu(k2, DensitySpec::uniform_cube(2), RegionSpec::all(),
                                    VariantSpec::plain(), 1000000, derive_seed(kMaster, "c3", 2));
    const auto pg = estimate_p_gamma(1.0, k2, 1, VariantSpec::plain(), 1000000, 4096,
                                     derive_seed(kMaster, "c3", 3));
    const double pg_truth = 2.0 * std::exp(-2.0) * (1.0 - std::exp(-1.0));
    const bool a = std::abs(line.mean - 1.0) <= kSigma * line.std_error;
    const bool b = std::abs(square.mean - std::numbers::pi / 2.0) <= kSigma * square.std_error;
    const bool c = std::abs(pg.mean - pg_truth) <= kSigma * pg.std_error + pg.bias_bound;
    return {a && b && c,
            "mu(K2,d=1) " + num(line.mean) + " +- " + num(line.std_error) + (a ? " ok" : " FAIL") +
                "; mu(K2,d=2) " + num(square.mean) + " +- " + num(square.std_error) +
                (b ? " ok" : " FAIL") + "; p_K2(1,d=1) " + num(pg.mean) + " +- " +
                num(pg.std_error) + " bias<=" + num(pg.bias_bound) + " vs " + num(pg_truth) +
                (c ? " ok" : " FAIL")};
}

// 4 ------------------------------------------------------------------------
Outcome subgraph_scaling()
{
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::SubgraphScaling;
    cfg.pattern = "K2";
    cfg.density = DensitySpec::uniform_cube(2);
    cfg.regime.c = 0.8;
    cfg.regime.gamma = 0.6;
    cfg.regime.p = 0.5;
    cfg.n_grid = {250, 500, 1000, 2000, 4000};
    cfg.trials = 200;
    cfg.seed = derive_seed(kMaster, "c4", 0);
    cfg.mc_samples = 1000000;
    cfg.slope_tolerance = 0.1;
    cfg.flatness_tolerance = 0.1;
    const auto report = execute_experiment(cfg);
    const auto* slope = find_check(report, "scaling-slope");
    const auto* flat = find_check(report, "normalized-flatness");
    const auto* mu = find_check(report, "mu-hat-consistency");
    const bool ok = slope && slope->passed && flat && flat->passed && mu && mu->passed;
    return {ok, "slope " + num(report.fit ? report.fit->slope : 0.0) + " (expected 0.8 +- 0.1); " +
                    describe(flat) + "; " + describe(mu)};
}

// 5 ------------------------------------------------------------------------
Outcome coupling_lower_bounds()
{
    bool ok = true;
    std::string detail;
    int idx = 0;
    for (const char* lit : {"P3", "P4", "K3"}) {
        for (double p : {0.3, 0.7}) {
            const auto occ = estimate_kset_occurrence(PatternGraph::parse(lit), DensitySpec::uniform_cube(2),
                                                      0.3, p, 100000, derive_seed(kMaster, "c5", idx++));
            const bool a = occ.coupling_margin.mean >= -kSigma * occ.coupling_margin.std_error;
            const bool b = occ.lower_bound_margin.mean >= -kSigma * occ.lower_bound_margin.std_error;
            ok = ok && a && b;
            detail += std::string(lit) + "@" + num(p) + ": perc " + num(occ.percolated.mean) +
                      ", margins " + num(occ.coupling_margin.mean) + "/" +
                      num(occ.lower_bound_margin.mean) + (a && b ? " ok; " : " FAIL; ");
        }
    }
    return {ok, detail};
}

// 6 ------------------------------------------------------------------------
Outcome poisson_approximation()
{
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::PoissonApprox;
    cfg.pattern = "K3";
    cfg.density = DensitySpec::uniform_cube(2);
    const double n = 600.0;
    cfg.regime.fixed_radius = std::pow(3.0 / (n * n * n), 0.25);
    cfg.regime.p = 0.6;
    cfg.n_grid = {600};
    cfg.trials = 5000;
    cfg.prob_samples = 1000000;
    cfg.sigma = 3.0;
    cfg.seed = derive_seed(kMaster, "c6", 0);
    const auto report = execute_experiment(cfg);
    const auto& row = report.summary.at("series")[0];
    const double tv = row.at("empirical_tv").get<double>();
    const auto* check = find_check(report, "tv-within-stein-bound-n600");
    const bool ok = check && check->passed && tv <= 0.15;
    return {ok, "lambda " + num(row.at("lambda").get<double>()) + ", empirical mean " +
                    num(row.at("empirical_mean").get<double>()) + ", TV " + num(tv) +
                    " (<= 0.15), stein bound " + num(row.at("stein_bound").get<double>()) +
                    ", budget noise " + num(row.at("tv_sampling_noise").get<double>()) +
                    " + bound stderr " + num(row.at("stein_bound_stderr").get<double>()) + "; " +
                    describe(check)};
}

// 7 ------------------------------------------------------------------------
Outcome betti_oracles()
{
    const auto betti_of = [](std::size_t n, std::vector<Edge> e, int kmax) {
        return betti_numbers(build_flag_complex(Adjacency::from_edges(n, e), kmax + 1), kmax).betti;
    };
    using V = std::vector<std::uint64_t>;
    const bool tri = betti_of(3, {{0, 1}, {0, 2}, {1, 2}}, 1) == V{1, 0};
    const bool c4 = betti_of(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 1) == V{1, 1};
    std::vector<Edge> oct;
    for (std::uint32_t i = 0; i < 6; ++i)
        for (std::uint32_t j = i + 1; j < 6; ++j)
            if (!(j == i + 1 && i % 2 == 0))
                oct.push_back({i, j});
    const bool octa = betti_of(6, oct, 2) == V{1, 0, 1};
    const auto random_failures = props::boundary_and_euler(kMaster, 100);
    return {tri && c4 && octa && random_failures == 0,
            std::string("triangle ") + (tri ? "ok" : "FAIL") + ", hollow C4 " + (c4 ? "ok" : "FAIL") +
                ", octahedron " + (octa ? "ok" : "FAIL") + ", random instances with violated "
                "boundary/Euler identities: " + std::to_string(random_failures) + "/100"};
}

// 8 ------------------------------------------------------------------------
Outcome betti_scaling()
{
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::BettiScaling;
    cfg.density = DensitySpec::uniform_cube(2);
    cfg.regime.c = 0.9;
    cfg.regime.gamma = 0.6;
    cfg.regime.p = 0.7;
    cfg.kmax = 1;
    cfg.n_grid = {1000, 2000, 4000, 8000};
    cfg.trials = 100;
    cfg.slope_tolerance = 0.15;
    cfg.seed = derive_seed(kMaster, "c8", 0);
    const auto perc = execute_experiment(cfg);
    const auto* slope = find_check(perc, "scaling-slope");

    // E[beta_1] at p = 1 is about 0.14 at n = 1000, so 100 trials leave a ~28%
    // standard error per point; the flatness run uses enough trials for the
    // 15% band to measure the normalisation rather than noise.
    cfg.regime.p = 1.0;
    cfg.trials = 20000;
    cfg.flatness_tolerance = 0.15;
    cfg.seed = derive_seed(kMaster, "c8", 1);
    const auto full = execute_experiment(cfg);
    const auto* flat = find_check(full, "normalized-flatness");

    std::string means;
    for (const auto& s : perc.series)
        means += num(s.mean) + " ";
    std::string norm;
    for (const auto& row : full.summary.at("series"))
        norm += num(row.at("normalized").get<double>()) + " ";
    return {slope && slope->passed && flat && flat->passed,
            "p=0.7 E[beta1] " + means + "slope " + num(perc.fit ? perc.fit->slope : 0.0) + " +- " +
                num(perc.fit ? perc.fit->slope_stderr : 0.0) + " (expected 0.4 +- 0.15); p=1 normalized " +
                norm + describe(flat)};
}

// 9 ------------------------------------------------------------------------
Outcome property_suites()
{
    const std::pair<const char*, std::size_t> results[] = {
        {"monotone coupling", props::monotone_coupling(kMaster, 200)},
        {"grid vs brute force", props::grid_vs_brute_force(kMaster, 200)},
        {"counting vs exhaustive", props::counting_vs_exhaustive(kMaster, 200)},
        {"beta0 = components", props::betti0_equals_components(kMaster, 200)},
        {"canonical relabeling", props::canonical_relabeling(kMaster, 1000)},
    };
    std::size_t total = 0;
    std::string detail;
    for (const auto& [name, failures] : results) {
        total += failures;
        detail += std::string(name) + " " + std::to_string(failures) + " failures; ";
    }
    return {total == 0, detail};
}

// 10 -----------------------------------------------------------------------
Outcome determinism()
{
    namespace fs = std::filesystem;
    const auto root = fs::temp_directory_path() / "percograph_acceptance_determinism";
    fs::remove_all(root);
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    bool ok = true;
    std::string detail;
    const char* kinds[] = {"subgraph-scaling", "component-scaling", "poisson-approx", "betti-scaling"};
    for (const char* kind : kinds) {
        ExperimentConfig cfg;
        cfg.experiment = parse_experiment_kind(kind);
        cfg.pattern = std::string(kind) == "component-scaling" ? "K2" : "K3";
        cfg.density = DensitySpec::uniform_cube(2);
        cfg.regime.c = 1.0;
        cfg.regime.gamma = std::string(kind) == "betti-scaling" ? 0.55 : 0.5;
        cfg.regime.p = 0.6;
        cfg.n_grid = {200, 400, 800};
        cfg.trials = 20;
        cfg.mc_samples = 20000;
        cfg.inner_samples = 256;
        cfg.prob_samples = 20000;
        cfg.seed = derive_seed(kMaster, "c10", 0);
        cfg.output = (root / kind / "a").string();
        setenv("PERCOGRAPH_THREADS", "1", 1);
        run_experiment(cfg);
        cfg.output = (root / kind / "b").string();
        setenv("PERCOGRAPH_THREADS", "4", 1);
        run_experiment(cfg);
        unsetenv("PERCOGRAPH_THREADS");
        const auto a = slurp(root / kind / "a" / "raw.csv");
        const auto b = slurp(root / kind / "b" / "raw.csv");
        const bool same = !a.empty() && a == b;
        ok = ok && same;
        detail += std::string(kind) + (same ? " identical (" + std::to_string(a.size()) + " bytes); "
                                            : " DIFFERENT; ");
    }
    fs::remove_all(root);
    return {ok, detail};
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"exact edge expectation", exact_edge_expectation},
        {"clique conditional identity", clique_identity},
        {"mu closed forms", mu_closed_forms},
        {"subgraph scaling", subgraph_scaling},
        {"coupling and lower bounds", coupling_lower_bounds},
        {"poisson approximation", poisson_approximation},
        {"betti correctness oracles", betti_oracles},
        {"betti scaling", betti_scaling},
        {"property suites", property_suites},
        {"determinism", determinism},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id))
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s [%.1fs] %s\n", out.passed ? "PASS" : "FAIL", id,
                    criteria[i].first.c_str(), secs, out.detail.c_str());
        std::fflush(stdout);
        failures += !out.passed;
    }
    return failures == 0 ? 0 : 1;
}
