#pragma once

#include "percograph/rng.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace percograph {

enum class DensityKind { UniformCube, GaussianIsotropic };

/// Sampling density f on R^d. `scale` is the cube side length for
/// UniformCube (support [0, scale]^d) and the per-axis standard deviation
/// for GaussianIsotropic (centred at the origin).
struct DensitySpec {
    DensityKind kind = DensityKind::UniformCube;
    int dim = 2;
    double scale = 1.0;

    static DensitySpec uniform_cube(int dim, double side = 1.0);
    static DensitySpec gaussian(int dim, double sigma = 1.0);

    /// Throws std::invalid_argument on dim < 1 or non-positive scale.
    void validate() const;

    double pdf(std::span<const double> x) const;
    bool in_support(std::span<const double> x) const;
    /// Upper bound of pdf.
    double max_pdf() const;
    void sample(Stream& rng, std::span<double> out) const;
    std::string name() const;
};

DensityKind parse_density_kind(std::string_view text);

/// n points in R^d stored row-major.
class PointCloud {
public:
    PointCloud(DensitySpec density, std::uint64_t seed, std::vector<double> coordinates);

    int dim() const { return density_.dim; }
    std::size_t size() const { return coords_.size() / static_cast<std::size_t>(density_.dim); }
    std::span<const double> point(std::size_t i) const
    {
        return {coords_.data() + i * static_cast<std::size_t>(density_.dim),
                static_cast<std::size_t>(density_.dim)};
    }
    const std::vector<double>& coordinates() const { return coords_; }
    const DensitySpec& density() const { return density_; }
    std::uint64_t seed() const { return seed_; }

private:
    DensitySpec density_;
    std::uint64_t seed_;
    std::vector<double> coords_;
};

/// Undirected edge with u < v.
struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    auto operator<=>(const Edge&) const = default;
};

/// Canonical index of the unordered pair {i, j}: max*(max-1)/2 + min.
/// Independent of n, so it doubles as the bit position of the pair in
/// small-graph edge masks.
constexpr std::uint64_t pair_index(std::uint64_t i, std::uint64_t j)
{
    if (i > j) {
        const auto t = i;
        i = j;
        j = t;
    }
    return j * (j - 1) / 2 + i;
}

double squared_distance(std::span<const double> a, std::span<const double> b);

/// Edge mask (bit pair_index(i, j)) of the pairs among k row-major points in
/// R^dim at distance <= radius. k <= 11.
std::uint64_t proximity_mask(std::span<const double> points, int k, int dim, double radius);

/// Adjacency in compressed sparse row form with sorted neighbour lists.
class Adjacency {
public:
    Adjacency() = default;
    static Adjacency from_edges(std::size_t vertex_count, std::span<const Edge> edges);

    std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return neighbours_.size() / 2; }
    std::size_t degree(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }
    std::span<const std::uint32_t> neighbours(std::size_t v) const
    {
        return {neighbours_.data() + offsets_[v], degree(v)};
    }
    bool has_edge(std::uint32_t a, std::uint32_t b) const;
    std::vector<Edge> edges() const;

private:
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> neighbours_;
};

/// G(X_n; r): all pairs at Euclidean distance <= r.
class GeometricGraph {
public:
    GeometricGraph(std::shared_ptr<const PointCloud> cloud, double radius,
                   std::vector<Edge> edges);

    const PointCloud& cloud() const { return *cloud_; }
    const std::shared_ptr<const PointCloud>& cloud_ptr() const { return cloud_; }
    double radius() const { return radius_; }
    const std::vector<Edge>& edges() const { return *edges_; }
    std::size_t vertex_count() const { return cloud_->size(); }
    Adjacency adjacency() const;

private:
    std::shared_ptr<const PointCloud> cloud_;
    double radius_;
    std::shared_ptr<const std::vector<Edge>> edges_;
};

/// G(X_n; p, r): each base edge carries a uniform level and is kept iff
/// level < p. Graphs sharing levels are nested in p.
class PercolatedGeometricGraph {
public:
    /// levels[i] belongs to base.edges()[i].
    PercolatedGeometricGraph(GeometricGraph base, std::vector<double> levels, double p);

    const GeometricGraph& base() const { return base_; }
    double p() const { return p_; }
    const std::vector<double>& levels() const { return *levels_; }
    const std::vector<Edge>& kept_edges() const { return kept_; }
    /// Same base and levels thresholded at a different probability.
    PercolatedGeometricGraph at_probability(double p) const;

private:
    PercolatedGeometricGraph(GeometricGraph base, std::shared_ptr<const std::vector<double>> levels,
                             double p);

    GeometricGraph base_;
    std::shared_ptr<const std::vector<double>> levels_;
    double p_;
    std::vector<Edge> kept_;
};

PointCloud sample_points(std::size_t n, const DensitySpec& density, std::uint64_t seed);

/// Fixed-radius neighbour search on a uniform grid of cell side r.
GeometricGraph build_geometric_graph(std::shared_ptr<const PointCloud> cloud, double r);
GeometricGraph build_geometric_graph(PointCloud cloud, double r);

/// Level of every edge drawn from substream(seed, "edge", pair_index(u, v)).
PercolatedGeometricGraph percolate(const GeometricGraph& graph, double p, std::uint64_t seed);

Adjacency kept_subgraph(const PercolatedGeometricGraph& graph);

}  // namespace percograph
