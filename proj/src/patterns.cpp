#include "percograph/patterns.hpp"

#include "percograph/model.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace percograph {

namespace {

constexpr int kCodeBits = kMaxPatternOrder * (kMaxPatternOrder - 1) / 2;

constexpr std::uint32_t pair_bit(int i, int j)
{
    return std::uint32_t{1} << pair_index(static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(j));
}

void check_order(int order)
{
    if (order < 0 || order > kMaxPatternOrder)
        throw std::invalid_argument("graph order " + std::to_string(order) +
                                    " exceeds the supported maximum of 8");
}

// Depth-first labelling search. Vertices are placed at positions in order;
// position `pos` only accepts vertices whose degree equals the pos-th entry
// of the descending degree sequence. The adjacency string is built with pair
// index q at bit (kCodeBits - 1 - q), so positions fix a prefix and branches
// whose prefix exceeds the best found so far are cut.
struct Canonicaliser {
    const SmallGraph& g;
    std::array<int, kMaxPatternOrder> degree{};
    std::array<int, kMaxPatternOrder> target{};
    std::array<int, kMaxPatternOrder> placed{};  // vertex at position
    std::uint32_t used = 0;
    std::uint32_t best = ~std::uint32_t{0};

    explicit Canonicaliser(const SmallGraph& graph) : g(graph)
    {
        for (int v = 0; v < g.order; ++v)
            degree[v] = g.degree(v);
        std::copy_n(degree.begin(), g.order, target.begin());
        std::sort(target.begin(), target.begin() + g.order, std::greater<>());
    }

    void search(int pos, std::uint32_t bits)
    {
        if (pos == g.order) {
            best = std::min(best, bits);
            return;
        }
        const int fixed = (pos + 1) * pos / 2;
        for (int v = 0; v < g.order; ++v) {
            if ((used >> v) & 1u || degree[v] != target[pos])
                continue;
            std::uint32_t next = bits;
            for (int q = 0; q < pos; ++q)
                if (g.has_edge(placed[q], v))
                    next |= std::uint32_t{1} << (kCodeBits - 1 - pair_index(q, pos));
            const int shift = kCodeBits - fixed;
            if (best != ~std::uint32_t{0} && (next >> shift) > (best >> shift))
                continue;
            placed[pos] = v;
            used |= 1u << v;
            search(pos + 1, next);
            used &= ~(1u << v);
        }
    }
};

}  // namespace

SmallGraph SmallGraph::from_edges(int order, std::span<const std::pair<int, int>> edges)
{
    check_order(order);
    SmallGraph g{order, 0};
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= order || b >= order)
            throw std::invalid_argument("edge index out of range for order " +
                                        std::to_string(order));
        if (a == b)
            throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
        g.mask |= pair_bit(a, b);
    }
    return g;
}

bool SmallGraph::has_edge(int i, int j) const
{
    return i != j && (mask & pair_bit(i, j)) != 0;
}

int SmallGraph::edge_count() const
{
    return std::popcount(mask);
}

int SmallGraph::degree(int v) const
{
    int d = 0;
    for (int u = 0; u < order; ++u)
        d += has_edge(u, v);
    return d;
}

bool SmallGraph::connected() const
{
    if (order <= 1)
        return true;
    std::uint32_t seen = 1u, frontier = 1u;
    while (frontier) {
        std::uint32_t next = 0;
        for (int v = 0; v < order; ++v)
            if ((frontier >> v) & 1u)
                for (int u = 0; u < order; ++u)
                    if (!((seen >> u) & 1u) && has_edge(u, v))
                        next |= 1u << u;
        seen |= next;
        frontier = next;
    }
    return seen == (1u << order) - 1u;
}

SmallGraph SmallGraph::permuted(std::span<const int> perm) const
{
    SmallGraph out{order, 0};
    for (int j = 1; j < order; ++j)
        for (int i = 0; i < j; ++i)
            if (has_edge(i, j))
                out.mask |= pair_bit(perm[i], perm[j]);
    return out;
}

CanonicalCode canonical_code(const SmallGraph& graph)
{
    check_order(graph.order);
    Canonicaliser c(graph);
    c.search(0, 0);
    if (graph.order == 0)
        c.best = 0;
    return (static_cast<std::uint64_t>(graph.order) << 32) | c.best;
}

bool is_isomorphic(const SmallGraph& a, const SmallGraph& b)
{
    if (a.order != b.order || a.edge_count() != b.edge_count())
        return false;
    return canonical_code(a) == canonical_code(b);
}

PatternGraph PatternGraph::from_edge_list(int k, std::span<const std::pair<int, int>> edges)
{
    if (k < 1 || k > kMaxPatternOrder)
        throw std::invalid_argument("pattern order must lie in [1, 8], got " + std::to_string(k));
    auto data = std::make_shared<Data>();
    data->graph = SmallGraph::from_edges(k, edges);
    if (!data->graph.connected())
        throw std::invalid_argument("pattern graph is disconnected");
    data->code = canonical_code(data->graph);

    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        data->copies.push_back(data->graph.permuted(perm).mask);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(data->copies.begin(), data->copies.end());
    data->copies.erase(std::unique(data->copies.begin(), data->copies.end()), data->copies.end());

    if (k <= 6) {
        data->dense_lookup.assign(std::size_t{1} << (k * (k - 1) / 2), 0);
        for (std::uint32_t m : data->copies)
            data->dense_lookup[m] = 1;
    }
    return PatternGraph(std::move(data));
}

PatternGraph PatternGraph::parse(std::string_view text)
{
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("bad pattern literal '" + std::string(text) + "': " + why);
    };
    if (text.empty())
        throw bad("empty");

    if (std::isalpha(static_cast<unsigned char>(text[0]))) {
        const char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
        int k = 0;
        for (char c : text.substr(1)) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw bad("alias order must be a number");
            k = k * 10 + (c - '0');
            if (k > kMaxPatternOrder)
                throw bad("order exceeds 8");
        }
        std::vector<std::pair<int, int>> edges;
        switch (kind) {
        case 'K':
            for (int j = 1; j < k; ++j)
                for (int i = 0; i < j; ++i)
                    edges.emplace_back(i, j);
            break;
        case 'P':
            for (int i = 0; i + 1 < k; ++i)
                edges.emplace_back(i, i + 1);
            break;
        case 'C':
            if (k < 3)
                throw bad("cycles need at least 3 vertices");
            for (int i = 0; i < k; ++i)
                edges.emplace_back(i, (i + 1) % k);
            break;
        case 'S':
            for (int i = 1; i < k; ++i)
                edges.emplace_back(0, i);
            break;
        default:
            throw bad("unknown alias");
        }
        return from_edge_list(k, edges);
    }

    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw bad("expected k:edgelist");
    int k = 0;
    for (char c : text.substr(0, colon)) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw bad("order must be a number");
        k = k * 10 + (c - '0');
        if (k > kMaxPatternOrder)
            throw bad("order exceeds 8");
    }
    std::vector<std::pair<int, int>> edges;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view tok = rest.substr(0, comma);
        if (tok.size() != 2 || !std::isdigit(static_cast<unsigned char>(tok[0])) ||
            !std::isdigit(static_cast<unsigned char>(tok[1])))
            throw bad("edges are two-digit vertex pairs such as 01");
        edges.emplace_back(tok[0] - '0', tok[1] - '0');
        if (comma == std::string_view::npos)
            break;
        rest = rest.substr(comma + 1);
    }
    return from_edge_list(k, edges);
}

std::string PatternGraph::literal() const
{
    std::string out = std::to_string(order()) + ":";
    bool first = true;
    for (int j = 1; j < order(); ++j)
        for (int i = 0; i < j; ++i)
            if (graph().has_edge(i, j)) {
                if (!first)
                    out += ',';
                out += static_cast<char>('0' + i);
                out += static_cast<char>('0' + j);
                first = false;
            }
    return out;
}

bool PatternGraph::matches(std::uint32_t host_mask) const
{
    if (!data_->dense_lookup.empty())
        return host_mask < data_->dense_lookup.size() && data_->dense_lookup[host_mask] != 0;
    return std::binary_search(data_->copies.begin(), data_->copies.end(), host_mask);
}

bool PatternGraph::strictly_contained_in(std::uint32_t host_mask) const
{
    if (std::popcount(host_mask) <= size())
        return false;
    return std::any_of(data_->copies.begin(), data_->copies.end(),
                       [&](std::uint32_t m) { return (m & ~host_mask) == 0; });
}

bool strict_supergraph_indicator(const SmallGraph& host, const PatternGraph& gamma)
{
    if (host.order != gamma.order())
        throw std::invalid_argument("host order " + std::to_string(host.order) +
                                    " differs from pattern order " +
                                    std::to_string(gamma.order()));
    return gamma.strictly_contained_in(host.mask);
}

}  // namespace percograph
