#pragma once

#include "percograph/model.hpp"
#include "percograph/patterns.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace percograph {

/// Region A for the left-most-point restriction. An axis box constrains the
/// first bounds.size() coordinates to closed intervals; remaining axes are
/// unconstrained.
struct RegionSpec {
    enum class Kind { All, AxisBox };
    Kind kind = Kind::All;
    std::vector<std::pair<double, double>> bounds;

    static RegionSpec all() { return {}; }
    /// Throws std::invalid_argument if some lower bound exceeds its upper bound.
    static RegionSpec box(std::vector<std::pair<double, double>> bounds);
    /// Parses `x0,x1[,y0,y1,...]`; "all" or an empty string gives all of space.
    static RegionSpec parse(std::string_view text);

    bool contains(std::span<const double> x) const;
};

/// Minimal first coordinate, ties broken lexicographically over all
/// coordinates. Throws std::invalid_argument for an empty list.
std::vector<double> leftmost_point(std::span<const std::vector<double>> points);
/// Same rule applied to cloud points selected by index.
std::uint32_t leftmost_vertex(const PointCloud& cloud, std::span<const std::uint32_t> vertices);

/// Visits every vertex set of size k inducing a connected subgraph, exactly
/// once, by exclusive-neighbourhood expansion from its minimum-index root.
/// The span handed to `visit` is in discovery order, not sorted. 1 <= k <= 8.
void enumerate_connected_k_sets(const Adjacency& graph, int k,
                                const std::function<void(std::span<const std::uint32_t>)>& visit);

/// Edge mask of the subgraph induced on `vertices`, labelled by position.
std::uint32_t induced_mask(const Adjacency& graph, std::span<const std::uint32_t> vertices);

/// Visits every induced copy of the pattern whose left-most point is in
/// the region.
void for_each_induced_occurrence(const Adjacency& graph, const PointCloud& cloud,
                                 const PatternGraph& pattern, const RegionSpec& region,
                                 const std::function<void(std::span<const std::uint32_t>)>& visit);

/// G'_{n,A}: number of k-sets inducing a copy of the pattern with left-most
/// point in A. Requires pattern.order() >= 2.
std::uint64_t count_induced_subgraphs(const Adjacency& graph, const PointCloud& cloud,
                                      const PatternGraph& pattern, const RegionSpec& region);

/// J'_{n,A}: connected components isomorphic to the pattern (isolated
/// vertices for k = 1) with left-most point in A.
std::uint64_t count_components(const Adjacency& graph, const PointCloud& cloud,
                               const PatternGraph& pattern, const RegionSpec& region);

/// Canonical code -> number of connected induced k-sets of that type.
std::map<CanonicalCode, std::uint64_t> classify_all_k_subgraphs(const Adjacency& graph, int k);

/// Connected-component label per vertex (labels are the component's minimum
/// vertex index).
std::vector<std::uint32_t> component_labels(const Adjacency& graph);

struct CountReport {
    std::string pattern;
    RegionSpec region;
    std::uint64_t induced_count = 0;
    std::uint64_t component_count = 0;
    std::size_t n = 0;
    double r = 0.0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

/// Both counts for one percolated graph. For k = 1 the induced count is the
/// number of vertices in the region.
CountReport count_report(const PercolatedGeometricGraph& graph, const PatternGraph& pattern,
                         const RegionSpec& region, std::uint64_t seed);

/// a + b, throwing std::overflow_error on wraparound.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

}  // namespace percograph
