#include "percograph/counting.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace percograph {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("64-bit count overflow");
    return out;
}

RegionSpec RegionSpec::box(std::vector<std::pair<double, double>> bounds)
{
    for (const auto& [lo, hi] : bounds)
        if (!(lo <= hi))
            throw std::invalid_argument("region lower bound exceeds upper bound");
    RegionSpec r;
    r.kind = Kind::AxisBox;
    r.bounds = std::move(bounds);
    return r;
}

RegionSpec RegionSpec::parse(std::string_view text)
{
    if (text.empty() || text == "all")
        return all();
    std::vector<double> values;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string tok(text.substr(0, comma));
        try {
            std::size_t used = 0;
            values.push_back(std::stod(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad region bound '" + tok + "'");
        }
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    if (values.size() % 2 != 0)
        throw std::invalid_argument("region needs lower,upper pairs");
    std::vector<std::pair<double, double>> bounds;
    for (std::size_t i = 0; i < values.size(); i += 2)
        bounds.emplace_back(values[i], values[i + 1]);
    return box(std::move(bounds));
}

bool RegionSpec::contains(std::span<const double> x) const
{
    if (kind == Kind::All)
        return true;
    const std::size_t axes = std::min(bounds.size(), x.size());
    for (std::size_t a = 0; a < axes; ++a)
        if (x[a] < bounds[a].first || x[a] > bounds[a].second)
            return false;
    return true;
}

std::vector<double> leftmost_point(std::span<const std::vector<double>> points)
{
    if (points.empty())
        throw std::invalid_argument("leftmost_point of an empty set");
    return *std::min_element(points.begin(), points.end());
}

std::uint32_t leftmost_vertex(const PointCloud& cloud, std::span<const std::uint32_t> vertices)
{
    if (vertices.empty())
        throw std::invalid_argument("leftmost_vertex of an empty set");
    std::uint32_t best = vertices[0];
    for (std::uint32_t v : vertices.subspan(1)) {
        const auto a = cloud.point(v);
        const auto b = cloud.point(best);
        if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()))
            best = v;
    }
    return best;
}

namespace {

class ConnectedSetEnumerator {
public:
    ConnectedSetEnumerator(const Adjacency& g, int k,
                           const std::function<void(std::span<const std::uint32_t>)>& visit)
        : g_(g), k_(k), visit_(visit), cover_(g.size(), 0)
    {
    }

    void run()
    {
        for (std::uint32_t root = 0; root < g_.size(); ++root) {
            root_ = root;
            std::vector<std::uint32_t> ext;
            for (std::uint32_t u : g_.neighbours(root))
                if (u > root)
                    ext.push_back(u);
            push(root);
            extend(std::move(ext));
            pop(root);
        }
    }

private:
    // cover_[u] counts members of the current set whose closed neighbourhood
    // contains u.
    void push(std::uint32_t w)
    {
        sub_.push_back(w);
        ++cover_[w];
        for (std::uint32_t u : g_.neighbours(w))
            ++cover_[u];
    }

    void pop(std::uint32_t w)
    {
        sub_.pop_back();
        --cover_[w];
        for (std::uint32_t u : g_.neighbours(w))
            --cover_[u];
    }

    void extend(std::vector<std::uint32_t> ext)
    {
        if (static_cast<int>(sub_.size()) == k_) {
            visit_(sub_);
            return;
        }
        while (!ext.empty()) {
            const std::uint32_t w = ext.back();
            ext.pop_back();
            std::vector<std::uint32_t> next = ext;
            for (std::uint32_t u : g_.neighbours(w))
                if (u > root_ && cover_[u] == 0)
                    next.push_back(u);
            push(w);
            extend(std::move(next));
            pop(w);
        }
    }

    const Adjacency& g_;
    int k_;
    const std::function<void(std::span<const std::uint32_t>)>& visit_;
    std::vector<std::uint32_t> cover_;
    std::vector<std::uint32_t> sub_;
    std::uint32_t root_ = 0;
};

}  // namespace

void enumerate_connected_k_sets(const Adjacency& graph, int k,
                                const std::function<void(std::span<const std::uint32_t>)>& visit)
{
    if (k < 1 || k > kMaxPatternOrder)
        throw std::invalid_argument("connected set size must lie in [1, 8]");
    ConnectedSetEnumerator(graph, k, visit).run();
}

std::uint32_t induced_mask(const Adjacency& graph, std::span<const std::uint32_t> vertices)
{
    std::uint32_t mask = 0;
    for (std::size_t j = 1; j < vertices.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (graph.has_edge(vertices[i], vertices[j]))
                mask |= std::uint32_t{1} << pair_index(i, j);
    return mask;
}

void for_each_induced_occurrence(const Adjacency& graph, const PointCloud& cloud,
                                 const PatternGraph& pattern, const RegionSpec& region,
                                 const std::function<void(std::span<const std::uint32_t>)>& visit)
{
    if (pattern.order() < 2)
        throw std::invalid_argument("induced counting needs a pattern of order >= 2");
    if (static_cast<std::size_t>(pattern.order()) > graph.size())
        return;
    // Gamma is connected, so every induced copy is a connected k-set of the
    // kept graph.
    enumerate_connected_k_sets(graph, pattern.order(), [&](std::span<const std::uint32_t> set) {
        if (!pattern.matches(induced_mask(graph, set)))
            return;
        if (region.kind == RegionSpec::Kind::AxisBox &&
            !region.contains(cloud.point(leftmost_vertex(cloud, set))))
            return;
        visit(set);
    });
}

std::uint64_t count_induced_subgraphs(const Adjacency& graph, const PointCloud& cloud,
                                      const PatternGraph& pattern, const RegionSpec& region)
{
    std::uint64_t count = 0;
    for_each_induced_occurrence(graph, cloud, pattern, region,
                                [&](std::span<const std::uint32_t>) { count = checked_add(count, 1); });
    return count;
}

std::vector<std::uint32_t> component_labels(const Adjacency& graph)
{
    const auto n = static_cast<std::uint32_t>(graph.size());
    std::vector<std::uint32_t> label(n, n);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (label[s] != n)
            continue;
        label[s] = s;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t u : graph.neighbours(v))
                if (label[u] == n) {
                    label[u] = s;
                    stack.push_back(u);
                }
        }
    }
    return label;
}

std::uint64_t count_components(const Adjacency& graph, const PointCloud& cloud,
                               const PatternGraph& pattern, const RegionSpec& region)
{
    const auto k = static_cast<std::size_t>(pattern.order());
    const auto labels = component_labels(graph);
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> members;
    std::vector<std::size_t> sizes(graph.size(), 0);
    for (std::uint32_t v = 0; v < labels.size(); ++v)
        ++sizes[labels[v]];
    for (std::uint32_t v = 0; v < labels.size(); ++v)
        if (sizes[labels[v]] == k)
            members[labels[v]].push_back(v);

    std::uint64_t count = 0;
    for (std::uint32_t root = 0; root < sizes.size(); ++root) {
        if (sizes[root] != k || labels[root] != root)
            continue;
        const auto& set = members[root];
        if (!pattern.matches(induced_mask(graph, set)))
            continue;
        if (!region.contains(cloud.point(leftmost_vertex(cloud, set))))
            continue;
        count = checked_add(count, 1);
    }
    return count;
}

std::map<CanonicalCode, std::uint64_t> classify_all_k_subgraphs(const Adjacency& graph, int k)
{
    if (k < 2 || k > kMaxPatternOrder)
        throw std::invalid_argument("classification order must lie in [2, 8]");
    std::unordered_map<std::uint32_t, CanonicalCode> code_of_mask;
    std::map<CanonicalCode, std::uint64_t> counts;
    enumerate_connected_k_sets(graph, k, [&](std::span<const std::uint32_t> set) {
        const std::uint32_t mask = induced_mask(graph, set);
        auto it = code_of_mask.find(mask);
        if (it == code_of_mask.end())
            it = code_of_mask.emplace(mask, canonical_code(SmallGraph{k, mask})).first;
        auto& slot = counts[it->second];
        slot = checked_add(slot, 1);
    });
    return counts;
}

CountReport count_report(const PercolatedGeometricGraph& graph, const PatternGraph& pattern,
                         const RegionSpec& region, std::uint64_t seed)
{
    const auto adj = kept_subgraph(graph);
    const auto& cloud = graph.base().cloud();
    CountReport rep;
    rep.pattern = pattern.literal();
    rep.region = region;
    rep.n = cloud.size();
    rep.r = graph.base().radius();
    rep.p = graph.p();
    rep.seed = seed;
    if (pattern.order() == 1) {
        for (std::size_t v = 0; v < cloud.size(); ++v)
            rep.induced_count += region.contains(cloud.point(v));
    } else {
        rep.induced_count = count_induced_subgraphs(adj, cloud, pattern, region);
    }
    rep.component_count = count_components(adj, cloud, pattern, region);
    return rep;
}

}  // namespace percograph
