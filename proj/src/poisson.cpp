#include "percograph/poisson.hpp"

#include "percograph/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace percograph {

double poisson_pmf(double lambda, std::uint64_t j)
{
    if (!(lambda >= 0.0))
        throw std::invalid_argument("Poisson parameter must be nonnegative");
    if (lambda == 0.0)
        return j == 0 ? 1.0 : 0.0;
    const double jd = static_cast<double>(j);
    return std::exp(-lambda + jd * std::log(lambda) - std::lgamma(jd + 1.0));
}

std::uint64_t poisson_truncation_point(double lambda)
{
    double cumulative = 0.0;
    for (std::uint64_t j = 0;; ++j) {
        cumulative += poisson_pmf(lambda, j);
        if (cumulative > 1.0 - 1e-12)
            return j;
        // far past the mode with nothing left to add: rounding has stalled
        if (static_cast<double>(j) > lambda + 50.0 * std::sqrt(lambda + 1.0) + 100.0)
            return j;
    }
}

CountDistribution CountDistribution::from_counts(std::span<const std::uint64_t> counts)
{
    if (counts.empty())
        throw std::invalid_argument("empirical distribution needs at least one trial");
    CountDistribution dist;
    dist.trials = counts.size();
    const std::uint64_t top = *std::max_element(counts.begin(), counts.end());
    std::vector<std::uint64_t> freq(top + 1, 0);
    Accumulator acc;
    for (auto c : counts) {
        ++freq[c];
        acc.add(static_cast<double>(c));
    }
    dist.pmf.resize(freq.size());
    const double t = static_cast<double>(counts.size());
    for (std::size_t j = 0; j < freq.size(); ++j)
        dist.pmf[j] = static_cast<double>(freq[j]) / t;
    dist.mean = acc.mean();
    dist.mean_stderr = acc.stderr_of_mean();
    return dist;
}

namespace {

std::uint64_t support_end(const CountLaw& law)
{
    if (const auto* d = std::get_if<CountDistribution>(&law))
        return d->pmf.empty() ? 0 : d->pmf.size() - 1;
    return poisson_truncation_point(std::get<PoissonLaw>(law).lambda);
}

double mass(const CountLaw& law, std::uint64_t j)
{
    if (const auto* d = std::get_if<CountDistribution>(&law))
        return d->at(j);
    return poisson_pmf(std::get<PoissonLaw>(law).lambda, j);
}

}  // namespace

double tv_distance(const CountLaw& a, const CountLaw& b)
{
    const std::uint64_t end = std::max(support_end(a), support_end(b));
    double l1 = 0.0;
    for (std::uint64_t j = 0; j <= end; ++j)
        l1 += std::abs(mass(a, j) - mass(b, j));
    return std::min(1.0, 0.5 * l1);
}

double binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0.0;
    k = std::min(k, n - k);
    long double out = 1.0L;
    for (std::uint64_t i = 1; i <= k; ++i)
        out = out * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    return static_cast<double>(out);
}

namespace {

struct BoundTerms {
    double prefactor = 0.0;
    double sets = 0.0;           // C(n,k)
    double neighbourhood = 0.0;  // |N_i| = C(n,k) - C(n-k,k)
    std::vector<double> overlap_pairs;  // C(k,h) C(n-k,k-h)
};

BoundTerms bound_terms(const SteinInputs& in)
{
    if (in.k < 1 || static_cast<std::size_t>(in.k - 1) != in.pij.size())
        throw std::invalid_argument("stein inputs need one pij per overlap h in 1..k-1");
    BoundTerms t;
    t.prefactor = std::min(3.0, 1.0 / in.lambda);
    t.sets = binomial(in.n, static_cast<std::uint64_t>(in.k));
    t.neighbourhood = t.sets - binomial(in.n - std::min<std::uint64_t>(in.n, in.k), in.k);
    for (int h = 1; h < in.k; ++h)
        t.overlap_pairs.push_back(binomial(in.k, h) *
                                  binomial(in.n - std::min<std::uint64_t>(in.n, in.k), in.k - h));
    return t;
}

}  // namespace

double stein_bound(const SteinInputs& in)
{
    if (!(in.lambda >= 0.0))
        throw std::invalid_argument("stein bound needs lambda >= 0");
    if (in.lambda == 0.0)
        return 0.0;
    const auto t = bound_terms(in);
    double b1 = 0.0;
    for (std::size_t h = 0; h < in.pij.size(); ++h)
        b1 += t.overlap_pairs[h] * in.pij[h];
    b1 *= t.sets;
    const double b2 = t.sets * t.neighbourhood * in.p1 * in.p1;
    return t.prefactor * (b1 + b2);
}

double stein_bound_stderr(const SteinInputs& in)
{
    if (in.lambda == 0.0)
        return 0.0;
    const auto t = bound_terms(in);
    double var = 0.0;
    for (std::size_t h = 0; h < in.pij_stderr.size() && h < t.overlap_pairs.size(); ++h) {
        const double term = t.sets * t.overlap_pairs[h] * in.pij_stderr[h];
        var += term * term;
    }
    const double p1_term = t.sets * t.neighbourhood * 2.0 * in.p1 * in.p1_stderr;
    var += p1_term * p1_term;
    return t.prefactor * std::sqrt(var);
}

SteinInputs estimate_occurrence_probabilities(const PatternGraph& gamma, std::uint64_t n, double r,
                                              double p, const DensitySpec& density,
                                              std::uint64_t samples, std::uint64_t seed)
{
    const int k = gamma.order();
    if (k < 2)
        throw std::invalid_argument("occurrence probabilities need a pattern of order >= 2");
    if (n < static_cast<std::uint64_t>(2 * k - 1))
        throw std::invalid_argument("need n >= 2k - 1 points for every overlap");
    if (!(r > 0.0))
        throw std::invalid_argument("radius must be positive");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in [0, 1]");
    density.validate();
    const int dim = density.dim;
    const auto d = static_cast<std::size_t>(dim);

    // Probability that the t points indexed by `total` satisfy: every index
    // set in `sets` induces a copy of gamma in the percolated graph.
    auto estimate = [&](int total, const std::vector<std::vector<int>>& sets,
                        std::string_view label) {
        const double half = (total - 1) * r;
        const double cube = std::pow(2.0 * half, dim);
        const auto acc = accumulate_samples(samples, [&](std::uint64_t i) {
            Stream rng(seed, label, i);
            std::vector<double> pts(static_cast<std::size_t>(total) * d);
            density.sample(rng, std::span(pts).first(d));
            double weight = 1.0;
            for (int v = 1; v < total; ++v) {
                for (std::size_t a = 0; a < d; ++a)
                    pts[v * d + a] = pts[a] + rng.uniform(-half, half);
                weight *= density.pdf(std::span(pts).subspan(v * d, d)) * cube;
                if (weight == 0.0)
                    return 0.0;
            }
            const std::uint64_t sample_seed = derive_seed(seed, label, i);
            std::vector<double> sub(static_cast<std::size_t>(k) * d);
            for (const auto& set : sets) {
                for (int j = 0; j < k; ++j)
                    std::copy_n(pts.begin() + set[j] * dim, dim, sub.begin() + j * dim);
                std::uint32_t mask = static_cast<std::uint32_t>(proximity_mask(sub, k, dim, r));
                for (int b = 1; b < k; ++b)
                    for (int a = 0; a < b; ++a) {
                        const auto bit = std::uint32_t{1} << pair_index(a, b);
                        if ((mask & bit) &&
                            !(Stream(sample_seed, "edge", pair_index(set[a], set[b])).uniform() < p))
                            mask &= ~bit;
                    }
                if (!gamma.matches(mask))
                    return 0.0;
            }
            return weight;
        });
        return std::pair{acc.mean(), acc.stderr_of_mean()};
    };

    SteinInputs in;
    in.n = n;
    in.k = k;
    std::vector<int> first(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
        first[j] = j;
    std::tie(in.p1, in.p1_stderr) = estimate(k, {first}, "p1");
    for (int h = 1; h < k; ++h) {
        std::vector<int> second;
        for (int j = 0; j < h; ++j)
            second.push_back(j);
        for (int j = 0; j < k - h; ++j)
            second.push_back(k + j);
        const auto [mean, se] = estimate(2 * k - h, {first, second}, "pij-" + std::to_string(h));
        in.pij.push_back(mean);
        in.pij_stderr.push_back(se);
    }
    in.lambda = binomial(n, k) * in.p1;
    return in;
}

std::uint64_t simulate_induced_count(const ModelConfig& config, std::uint64_t trial_seed)
{
    auto cloud = sample_points(config.n, config.density, derive_seed(trial_seed, "points", 0));
    const auto graph = build_geometric_graph(std::move(cloud), config.r);
    const auto perc = percolate(graph, config.p, derive_seed(trial_seed, "edges", 0));
    return count_induced_subgraphs(kept_subgraph(perc), graph.cloud(), config.pattern,
                                   config.region);
}

CountDistribution empirical_count_distribution(const ModelConfig& config, std::uint64_t trials,
                                               std::uint64_t seed, std::vector<std::uint64_t>* raw)
{
    if (trials < 1)
        throw std::invalid_argument("need at least one trial");
    std::vector<std::uint64_t> counts(trials);
    parallel_for(trials, [&](std::size_t t) {
        counts[t] = simulate_induced_count(config, derive_seed(seed, "trial", t));
    });
    auto dist = CountDistribution::from_counts(counts);
    if (raw)
        *raw = std::move(counts);
    return dist;
}

double tv_sampling_noise(double lambda, std::uint64_t trials)
{
    const std::uint64_t end = poisson_truncation_point(lambda);
    double s = 0.0;
    for (std::uint64_t j = 0; j <= end; ++j) {
        const double pj = poisson_pmf(lambda, j);
        s += std::sqrt(pj * (1.0 - pj) / static_cast<double>(trials));
    }
    return 0.5 * s;
}

}  // namespace percograph
