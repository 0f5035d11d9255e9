#include "percograph/harness.hpp"

#include <cmath>
#include <stdexcept>

namespace percograph {

ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> series)
{
    if (series.size() < 3)
        throw std::invalid_argument("scaling fit needs at least 3 points, got " +
                                    std::to_string(series.size()));
    ScalingFit fit;
    for (const auto& [n, value] : series) {
        if (!(n > 0.0) || !(value > 0.0))
            throw std::invalid_argument("scaling fit needs positive n and values");
        fit.points.emplace_back(std::log(n), std::log(value));
    }
    const double count = static_cast<double>(fit.points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : fit.points) {
        mx += x;
        my += y;
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : fit.points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("scaling fit needs at least two distinct n");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (const auto& [x, y] : fit.points) {
        const double e = y - fit.intercept - fit.slope * x;
        rss += e * e;
    }
    fit.slope_stderr = std::sqrt(rss / (count - 2.0) / sxx);
    return fit;
}

double normalization_factor(Normalization kind, std::size_t n, double r, double p, int order,
                            int size, int dim)
{
    const double nd = static_cast<double>(n);
    switch (kind) {
    case Normalization::Subgraph:
        return std::pow(nd, order) * std::pow(r, dim * (order - 1));
    case Normalization::SubgraphPerEdge:
        return std::pow(nd, order) * std::pow(r, dim * (order - 1)) * std::pow(p, size);
    case Normalization::Component:
        return nd * std::pow(p, size);
    case Normalization::Betti:
        return std::pow(nd, 2 * order + 2) * std::pow(r, dim * (2 * order + 1)) *
               std::pow(p, 2 * order * (order - 1));
    }
    return 0.0;
}

std::vector<NormalizedPoint> normalized_count_series(std::span<const SeriesPoint> rows,
                                                     Normalization kind, int order, int size,
                                                     int dim)
{
    std::vector<NormalizedPoint> out;
    for (const auto& row : rows) {
        const double norm = normalization_factor(kind, row.n, row.r, row.p, order, size, dim);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw std::invalid_argument("zero normalisation at n = " + std::to_string(row.n));
        out.push_back({row.n, row.mean / norm, row.std_error / norm});
    }
    return out;
}

}  // namespace percograph
