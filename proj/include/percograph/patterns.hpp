#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace percograph {

/// Largest pattern order; keeps permutation canonicalisation exact.
inline constexpr int kMaxPatternOrder = 8;

/// Labelled graph on at most 8 vertices. Bit pair_index(i, j) of `mask` is
/// set iff {i, j} is an edge.
struct SmallGraph {
    int order = 0;
    std::uint32_t mask = 0;

    static SmallGraph from_edges(int order, std::span<const std::pair<int, int>> edges);

    bool has_edge(int i, int j) const;
    int edge_count() const;
    int degree(int v) const;
    bool connected() const;
    /// Relabels vertex v as perm[v].
    SmallGraph permuted(std::span<const int> perm) const;
};

/// Isomorphism-invariant fingerprint: order in the high word, and in the low
/// word the lexicographically least adjacency bit-string (pair-index order,
/// first pair most significant) over all relabellings.
using CanonicalCode = std::uint64_t;

CanonicalCode canonical_code(const SmallGraph& graph);
bool is_isomorphic(const SmallGraph& a, const SmallGraph& b);

/// Connected target graph with precomputed labelled-copy lookup.
class PatternGraph {
public:
    /// Throws std::invalid_argument for out-of-range indices, self-loops,
    /// order outside [1, 8] or a disconnected graph.
    static PatternGraph from_edge_list(int k, std::span<const std::pair<int, int>> edges);
    /// Accepts `k:edgelist` literals such as `3:01,02,12` and the aliases
    /// Kk (clique), Pk (path), Ck (cycle) and Sk (star on k vertices).
    static PatternGraph parse(std::string_view literal);

    int order() const { return data_->graph.order; }
    int size() const { return data_->graph.edge_count(); }
    const SmallGraph& graph() const { return data_->graph; }
    CanonicalCode code() const { return data_->code; }
    bool is_clique() const { return size() == order() * (order() - 1) / 2; }
    bool is_tree() const { return size() == order() - 1; }
    /// `k:edgelist` form.
    std::string literal() const;

    /// True iff the labelled graph with this edge mask on order() vertices is
    /// isomorphic to the pattern.
    bool matches(std::uint32_t host_mask) const;
    /// True iff some labelled copy of the pattern is a proper edge subset of
    /// host_mask (same vertex set).
    bool strictly_contained_in(std::uint32_t host_mask) const;
    /// Every distinct labelled copy of the pattern, sorted.
    const std::vector<std::uint32_t>& labelled_copies() const { return data_->copies; }

private:
    struct Data {
        SmallGraph graph;
        CanonicalCode code = 0;
        std::vector<std::uint32_t> copies;
        std::vector<std::uint8_t> dense_lookup;
    };
    explicit PatternGraph(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    std::shared_ptr<const Data> data_;
};

/// g_Gamma on a labelled host: host order must equal gamma.order().
bool strict_supergraph_indicator(const SmallGraph& host, const PatternGraph& gamma);

}  // namespace percograph
