#include "percograph/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace percograph {

DensitySpec DensitySpec::uniform_cube(int dim, double side)
{
    DensitySpec d{DensityKind::UniformCube, dim, side};
    d.validate();
    return d;
}

DensitySpec DensitySpec::gaussian(int dim, double sigma)
{
    DensitySpec d{DensityKind::GaussianIsotropic, dim, sigma};
    d.validate();
    return d;
}

void DensitySpec::validate() const
{
    if (dim < 1)
        throw std::invalid_argument("density dimension must be >= 1, got " + std::to_string(dim));
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("density parameter must be positive and finite, got " +
                                    std::to_string(scale));
}

double DensitySpec::pdf(std::span<const double> x) const
{
    switch (kind) {
    case DensityKind::UniformCube:
        return in_support(x) ? std::pow(scale, -dim) : 0.0;
    case DensityKind::GaussianIsotropic: {
        double r2 = 0.0;
        for (double c : x)
            r2 += c * c;
        const double var = scale * scale;
        return std::pow(2.0 * std::numbers::pi * var, -0.5 * dim) * std::exp(-0.5 * r2 / var);
    }
    }
    return 0.0;
}

bool DensitySpec::in_support(std::span<const double> x) const
{
    if (kind == DensityKind::GaussianIsotropic)
        return true;
    return std::all_of(x.begin(), x.end(), [&](double c) { return c >= 0.0 && c <= scale; });
}

double DensitySpec::max_pdf() const
{
    if (kind == DensityKind::UniformCube)
        return std::pow(scale, -dim);
    return std::pow(2.0 * std::numbers::pi * scale * scale, -0.5 * dim);
}

void DensitySpec::sample(Stream& rng, std::span<double> out) const
{
    for (double& c : out)
        c = kind == DensityKind::UniformCube ? scale * rng.uniform() : scale * rng.normal();
}

std::string DensitySpec::name() const
{
    return kind == DensityKind::UniformCube ? "uniform-cube" : "gaussian-isotropic";
}

DensityKind parse_density_kind(std::string_view text)
{
    if (text == "uniform-cube" || text == "uniform")
        return DensityKind::UniformCube;
    if (text == "gaussian-isotropic" || text == "gaussian")
        return DensityKind::GaussianIsotropic;
    throw std::invalid_argument("unknown density kind: " + std::string(text));
}

PointCloud::PointCloud(DensitySpec density, std::uint64_t seed, std::vector<double> coordinates)
    : density_(density), seed_(seed), coords_(std::move(coordinates))
{
    density_.validate();
    if (coords_.size() % static_cast<std::size_t>(density_.dim) != 0)
        throw std::invalid_argument("coordinate count is not a multiple of the dimension");
}

double squared_distance(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

std::uint64_t proximity_mask(std::span<const double> points, int k, int dim, double radius)
{
    const double r2 = radius * radius;
    const auto d = static_cast<std::size_t>(dim);
    std::uint64_t mask = 0;
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i)
            if (squared_distance(points.subspan(i * d, d), points.subspan(j * d, d)) <= r2)
                mask |= std::uint64_t{1} << pair_index(i, j);
    return mask;
}

Adjacency Adjacency::from_edges(std::size_t vertex_count, std::span<const Edge> edges)
{
    Adjacency adj;
    adj.offsets_.assign(vertex_count + 1, 0);
    for (const Edge& e : edges) {
        if (e.u == e.v || e.u >= vertex_count || e.v >= vertex_count)
            throw std::invalid_argument("edge endpoint out of range or self-loop");
        ++adj.offsets_[e.u + 1];
        ++adj.offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < vertex_count; ++v)
        adj.offsets_[v + 1] += adj.offsets_[v];
    adj.neighbours_.resize(adj.offsets_.back());
    std::vector<std::size_t> fill(adj.offsets_.begin(), adj.offsets_.end() - 1);
    for (const Edge& e : edges) {
        adj.neighbours_[fill[e.u]++] = e.v;
        adj.neighbours_[fill[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
        auto first = adj.neighbours_.begin() + static_cast<std::ptrdiff_t>(adj.offsets_[v]);
        auto last = adj.neighbours_.begin() + static_cast<std::ptrdiff_t>(adj.offsets_[v + 1]);
        std::sort(first, last);
        if (std::adjacent_find(first, last) != last)
            throw std::invalid_argument("duplicate edge");
    }
    return adj;
}

bool Adjacency::has_edge(std::uint32_t a, std::uint32_t b) const
{
    // search the shorter list
    if (degree(a) > degree(b))
        std::swap(a, b);
    const auto nb = neighbours(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Adjacency::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::uint32_t u = 0; u < size(); ++u)
        for (std::uint32_t v : neighbours(u))
            if (u < v)
                out.push_back({u, v});
    return out;
}

GeometricGraph::GeometricGraph(std::shared_ptr<const PointCloud> cloud, double radius,
                               std::vector<Edge> edges)
    : cloud_(std::move(cloud)), radius_(radius),
      edges_(std::make_shared<const std::vector<Edge>>(std::move(edges)))
{
}

Adjacency GeometricGraph::adjacency() const
{
    return Adjacency::from_edges(vertex_count(), edges());
}

PercolatedGeometricGraph::PercolatedGeometricGraph(GeometricGraph base, std::vector<double> levels,
                                                   double p)
    : PercolatedGeometricGraph(std::move(base),
                               std::make_shared<const std::vector<double>>(std::move(levels)), p)
{
}

PercolatedGeometricGraph::PercolatedGeometricGraph(GeometricGraph base,
                                                   std::shared_ptr<const std::vector<double>> levels,
                                                   double p)
    : base_(std::move(base)), levels_(std::move(levels)), p_(p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("percolation probability must lie in [0, 1]");
    const auto& edges = base_.edges();
    if (levels_->size() != edges.size())
        throw std::invalid_argument("one level per base edge required");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const double u = (*levels_)[i];
        if (!(u >= 0.0 && u < 1.0))
            throw std::invalid_argument("edge levels must lie in [0, 1)");
        if (u < p)
            kept_.push_back(edges[i]);
    }
}

PercolatedGeometricGraph PercolatedGeometricGraph::at_probability(double p) const
{
    return PercolatedGeometricGraph(base_, levels_, p);
}

PointCloud sample_points(std::size_t n, const DensitySpec& density, std::uint64_t seed)
{
    density.validate();
    const auto d = static_cast<std::size_t>(density.dim);
    std::vector<double> coords(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        Stream rng(seed, "point", i);
        density.sample(rng, std::span(coords).subspan(i * d, d));
    }
    return PointCloud(density, seed, std::move(coords));
}

namespace {

struct CellHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const
    {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t c : key) {
            h ^= static_cast<std::uint64_t>(c) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

GeometricGraph build_geometric_graph(std::shared_ptr<const PointCloud> cloud, double r)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("radius must be positive and finite");
    const PointCloud& pc = *cloud;
    const std::size_t n = pc.size();
    const int dim = pc.dim();
    const double r2 = r * r;

    std::vector<double> lo(static_cast<std::size_t>(dim), 0.0);
    if (n > 0)
        for (int a = 0; a < dim; ++a) {
            double m = pc.point(0)[a];
            for (std::size_t i = 1; i < n; ++i)
                m = std::min(m, pc.point(i)[a]);
            lo[a] = m;
        }

    std::vector<std::vector<std::int64_t>> cell_of(n);
    std::unordered_map<std::vector<std::int64_t>, std::vector<std::uint32_t>, CellHash> cells;
    cells.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& key = cell_of[i];
        key.resize(static_cast<std::size_t>(dim));
        for (int a = 0; a < dim; ++a)
            key[a] = static_cast<std::int64_t>(std::floor((pc.point(i)[a] - lo[a]) / r));
        cells[key].push_back(static_cast<std::uint32_t>(i));
    }

    std::size_t offsets = 1;
    for (int a = 0; a < dim; ++a)
        offsets *= 3;

    std::vector<Edge> edges;
    std::vector<std::int64_t> probe(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t o = 0; o < offsets; ++o) {
            std::size_t code = o;
            for (int a = 0; a < dim; ++a) {
                probe[a] = cell_of[i][a] + static_cast<std::int64_t>(code % 3) - 1;
                code /= 3;
            }
            const auto it = cells.find(probe);
            if (it == cells.end())
                continue;
            for (std::uint32_t j : it->second)
                if (j > i && squared_distance(pc.point(i), pc.point(j)) <= r2)
                    edges.push_back({static_cast<std::uint32_t>(i), j});
        }
    }
    std::sort(edges.begin(), edges.end());
    return GeometricGraph(std::move(cloud), r, std::move(edges));
}

GeometricGraph build_geometric_graph(PointCloud cloud, double r)
{
    return build_geometric_graph(std::make_shared<const PointCloud>(std::move(cloud)), r);
}

PercolatedGeometricGraph percolate(const GeometricGraph& graph, double p, std::uint64_t seed)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("percolation probability must lie in [0, 1]");
    const auto& edges = graph.edges();
    std::vector<double> levels(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
        levels[i] = Stream(seed, "edge", pair_index(edges[i].u, edges[i].v)).uniform();
    return PercolatedGeometricGraph(graph, std::move(levels), p);
}

Adjacency kept_subgraph(const PercolatedGeometricGraph& graph)
{
    return Adjacency::from_edges(graph.base().vertex_count(), graph.kept_edges());
}

}  // namespace percograph
