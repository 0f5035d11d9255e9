// percograph: command-line front end for the percolated geometric graph toolkit.

#include "percograph/counting.hpp"
#include "percograph/graph_io.hpp"
#include "percograph/harness.hpp"
#include "percograph/integrals.hpp"
#include "percograph/model.hpp"
#include "percograph/patterns.hpp"
#include "percograph/poisson.hpp"
#include "percograph/rng.hpp"
#include "percograph/topology.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace pg = percograph;

namespace {

struct ModelOptions {
    std::size_t n = 1000;
    double r = 0.05;
    double p = 1.0;
    int d = 2;
    std::string density = "uniform-cube";
    double scale = 1.0;
    std::uint64_t seed = 1;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--n", n, "number of points");
        cmd->add_option("--r", r, "connection radius")->check(CLI::PositiveNumber);
        cmd->add_option("--p", p, "edge retention probability")->check(CLI::Range(0.0, 1.0));
        attach_density(cmd);
        cmd->add_option("--seed", seed, "master seed");
    }

    void attach_density(CLI::App* cmd)
    {
        cmd->add_option("--d", d, "dimension")->check(CLI::PositiveNumber);
        cmd->add_option("--density", density, "uniform-cube | gaussian-isotropic");
        cmd->add_option("--scale", scale, "cube side or gaussian standard deviation");
    }

    pg::DensitySpec spec() const
    {
        pg::DensitySpec out{pg::parse_density_kind(density), d, scale};
        out.validate();
        return out;
    }
};

pg::PercolatedGeometricGraph sample_trial(const ModelOptions& opt, std::uint64_t trial_seed)
{
    auto cloud = std::make_shared<const pg::PointCloud>(
        pg::sample_points(opt.n, opt.spec(), pg::derive_seed(trial_seed, "points", 0)));
    return pg::percolate(pg::build_geometric_graph(std::move(cloud), opt.r), opt.p,
                         pg::derive_seed(trial_seed, "edges", 0));
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t)
{
    return pg::derive_seed(seed, "trial", t);
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ','))
        out.push_back(std::stod(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Simulation and verification toolkit for percolated random geometric graphs"};
    app.require_subcommand(1);

    // generate
    ModelOptions gen_opt;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "sample a percolated geometric graph");
    gen_opt.attach(gen);
    gen->add_option("--output,-o", gen_out, "output file (default stdout)");

    // count
    ModelOptions count_opt;
    std::string count_pattern = "K2", count_region = "all";
    std::uint64_t count_trials = 1;
    auto* count = app.add_subcommand("count", "count induced subgraphs and components");
    count_opt.attach(count);
    count->add_option("--pattern", count_pattern, "k:edgelist or alias (K3, P4, C4, ...)");
    count->add_option("--region", count_region, "x0,x1[,y0,y1,...] or all");
    count->add_option("--trials", count_trials)->check(CLI::PositiveNumber);

    // estimate
    ModelOptions est_opt;
    std::string est_target = "mu", est_variant = "plain", est_pattern = "K2",
                est_region = "all", est_centers;
    double est_lambda = 1.0;
    std::uint64_t est_samples = 1000000, est_inner = 4096;
    auto* est = app.add_subcommand("estimate", "Monte Carlo limit integrals");
    est->add_option("--target", est_target, "mu | pgamma | volume | pairprob")
        ->check(CLI::IsMember({"mu", "pgamma", "volume", "pairprob"}));
    est->add_option("--variant", est_variant, "plain | percolated | strict")
        ->check(CLI::IsMember({"plain", "percolated", "strict"}));
    est->add_option("--pattern", est_pattern);
    est->add_option("--lambda", est_lambda)->check(CLI::NonNegativeNumber);
    est->add_option("--samples", est_samples)->check(CLI::PositiveNumber);
    est->add_option("--inner-samples", est_inner)->check(CLI::PositiveNumber);
    est->add_option("--region", est_region);
    est->add_option("--centers", est_centers, "flattened ball centres for --target volume");
    est->add_option("--p", est_opt.p, "retention probability for the percolated variant");
    est->add_option("--r", est_opt.r, "radius for --target pairprob");
    est->add_option("--seed", est_opt.seed);
    est_opt.attach_density(est);

    // poisson
    ModelOptions poi_opt;
    std::string poi_pattern = "K3";
    std::uint64_t poi_trials = 1000, poi_prob_samples = 200000;
    auto* poi = app.add_subcommand("poisson", "empirical TV distance against the Stein bound");
    poi_opt.attach(poi);
    poi->add_option("--pattern", poi_pattern);
    poi->add_option("--trials", poi_trials)->check(CLI::PositiveNumber);
    poi->add_option("--prob-samples", poi_prob_samples)->check(CLI::PositiveNumber);

    // betti
    ModelOptions bet_opt;
    int bet_kmax = 1;
    std::uint64_t bet_trials = 1;
    auto* bet = app.add_subcommand("betti", "Betti numbers of the percolated flag complex");
    bet_opt.attach(bet);
    bet->add_option("--kmax", bet_kmax)->check(CLI::Range(0, 6));
    bet->add_option("--trials", bet_trials)->check(CLI::PositiveNumber);

    // experiment
    std::string exp_config, exp_output;
    auto* exp = app.add_subcommand("experiment", "run a configured experiment");
    exp->add_option("--config", exp_config, "JSON experiment config")->required();
    exp->add_option("--output", exp_output, "override the config's output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const auto graph = sample_trial(gen_opt, gen_opt.seed);
            if (gen_out.empty()) {
                pg::write_graph_text(std::cout, graph);
            } else {
                std::ofstream out(gen_out);
                if (!out)
                    throw std::runtime_error("cannot open '" + gen_out + "'");
                pg::write_graph_text(out, graph);
            }
        } else if (*count) {
            const auto pattern = pg::PatternGraph::parse(count_pattern);
            const auto region = pg::RegionSpec::parse(count_region);
            std::cout << "trial,induced,component\n";
            for (std::uint64_t t = 0; t < count_trials; ++t) {
                const auto seed = trial_seed(count_opt.seed, t);
                const auto rep =
                    pg::count_report(sample_trial(count_opt, seed), pattern, region, seed);
                std::cout << t << ',' << rep.induced_count << ',' << rep.component_count << '\n';
            }
        } else if (*est) {
            const auto density = est_opt.spec();
            pg::MonteCarloEstimate result;
            if (est_target == "volume") {
                const auto centers = parse_list(est_centers);
                result = pg::union_ball_volume(centers, density.dim, est_samples, est_opt.seed);
            } else if (est_target == "pairprob") {
                result = pg::pair_connection_probability(density, est_opt.r, est_samples,
                                                         est_opt.seed);
            } else {
                const auto pattern = pg::PatternGraph::parse(est_pattern);
                const auto variant = pg::VariantSpec::parse(est_variant, est_opt.p);
                if (est_target == "mu")
                    result = pg::estimate_mu(pattern, density, pg::RegionSpec::parse(est_region),
                                             variant, est_samples, est_opt.seed);
                else
                    result = pg::estimate_p_gamma(est_lambda, pattern, density.dim, variant,
                                                  est_samples, est_inner, est_opt.seed);
            }
            std::cout << "target,mean,stderr,samples\n"
                      << est_target << ',' << pg::format_double(result.mean) << ','
                      << pg::format_double(result.std_error) << ',' << result.samples << '\n';
        } else if (*poi) {
            const auto pattern = pg::PatternGraph::parse(poi_pattern);
            const pg::ModelConfig model{poi_opt.n, poi_opt.r, poi_opt.p, poi_opt.spec(), pattern,
                                        pg::RegionSpec::all()};
            const auto dist = pg::empirical_count_distribution(model, poi_trials, poi_opt.seed);
            const auto inputs = pg::estimate_occurrence_probabilities(
                pattern, poi_opt.n, poi_opt.r, poi_opt.p, model.density, poi_prob_samples,
                pg::derive_seed(poi_opt.seed, "stein", 0));
            const int k = pattern.order();
            const int m = pattern.size();
            const double nd = static_cast<double>(poi_opt.n);
            const double rd = std::pow(poi_opt.r, poi_opt.d);
            const nlohmann::json report = {
                {"lambda", inputs.lambda},
                {"empirical_mean", dist.mean},
                {"empirical_tv", pg::tv_distance(dist, pg::PoissonLaw{dist.mean})},
                {"empirical_tv_vs_lambda", pg::tv_distance(dist, pg::PoissonLaw{inputs.lambda})},
                {"stein_bound", pg::stein_bound(inputs)},
                {"stein_bound_stderr", pg::stein_bound_stderr(inputs)},
                {"tv_sampling_noise", pg::tv_sampling_noise(inputs.lambda, poi_trials)},
                {"p1", inputs.p1},
                {"pij", inputs.pij},
                {"trials", poi_trials},
                {"normalization_a", nd * std::pow(poi_opt.p, 2 * m + 2 - k) * rd},
                {"normalization_b", nd * std::pow(poi_opt.p, 2 * m - 2) * rd}};
            std::cout << report.dump(2) << '\n';
        } else if (*bet) {
            const int cap = bet_kmax + 1;
            std::cout << "trial";
            for (int q = 0; q <= cap; ++q)
                std::cout << ",f" << q;
            for (int q = 0; q <= bet_kmax; ++q)
                std::cout << ",beta" << q;
            std::cout << '\n';
            for (std::uint64_t t = 0; t < bet_trials; ++t) {
                const auto graph = sample_trial(bet_opt, trial_seed(bet_opt.seed, t));
                const auto bv = pg::betti_numbers(
                    pg::build_flag_complex(pg::kept_subgraph(graph), cap), bet_kmax);
                std::cout << t;
                for (const auto f : bv.face_counts)
                    std::cout << ',' << f;
                for (const auto b : bv.betti)
                    std::cout << ',' << b;
                std::cout << '\n';
            }
        } else if (*exp) {
            std::ifstream in(exp_config);
            if (!in)
                throw std::runtime_error("cannot open config '" + exp_config + "'");
            auto config = pg::ExperimentConfig::from_json(nlohmann::json::parse(in));
            if (!exp_output.empty())
                config.output = exp_output;
            const auto report = pg::run_experiment(config);
            for (const auto& c : report.checks)
                std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << "  value "
                          << pg::format_double(c.value) << "  threshold "
                          << pg::format_double(c.threshold) << '\n';
            return report.all_passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
