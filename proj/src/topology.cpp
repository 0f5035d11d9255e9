#include "percograph/topology.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>

namespace percograph {

FlagComplex::FlagComplex(std::size_t vertex_count, int cap,
                         std::vector<std::vector<std::uint32_t>> flat, bool truncated)
    : vertex_count_(vertex_count), cap_(cap), flat_(std::move(flat)), truncated_(truncated)
{
    flat_.resize(static_cast<std::size_t>(cap_) + 1);
}

std::size_t FlagComplex::count(int q) const
{
    if (q < 0 || q > cap_)
        return 0;
    return flat_[q].size() / static_cast<std::size_t>(q + 1);
}

std::span<const std::uint32_t> FlagComplex::simplex(int q, std::size_t i) const
{
    const auto width = static_cast<std::size_t>(q + 1);
    return std::span(flat_[q]).subspan(i * width, width);
}

std::optional<std::size_t> FlagComplex::index_of(int q, std::span<const std::uint32_t> tuple) const
{
    if (q < 0 || q > cap_ || tuple.size() != static_cast<std::size_t>(q + 1))
        return std::nullopt;
    std::size_t lo = 0, hi = count(q);
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto s = simplex(q, mid);
        if (std::lexicographical_compare(s.begin(), s.end(), tuple.begin(), tuple.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < count(q) && std::ranges::equal(simplex(q, lo), tuple))
        return lo;
    return std::nullopt;
}

std::vector<std::uint64_t> FlagComplex::face_counts() const
{
    std::vector<std::uint64_t> f;
    for (int q = 0; q <= cap_; ++q)
        f.push_back(count(q));
    return f;
}

namespace {

struct Expander {
    const Adjacency& g;
    int cap;
    std::vector<std::vector<std::uint32_t>>& flat;
    std::vector<std::uint32_t> clique;
    bool truncated = false;

    // Emits `clique` and recurses into candidates (common neighbours of the
    // clique with index above its last vertex), in increasing order, which
    // yields lexicographic order within every dimension.
    void grow(const std::vector<std::uint32_t>& candidates)
    {
        const int q = static_cast<int>(clique.size()) - 1;
        flat[q].insert(flat[q].end(), clique.begin(), clique.end());
        if (q == cap) {
            truncated = truncated || !candidates.empty();
            return;
        }
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const std::uint32_t v = candidates[c];
            std::vector<std::uint32_t> next;
            const auto nb = g.neighbours(v);
            std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(c) + 1,
                                  candidates.end(), nb.begin(), nb.end(), std::back_inserter(next));
            clique.push_back(v);
            grow(next);
            clique.pop_back();
        }
    }
};

}  // namespace

FlagComplex build_flag_complex(const Adjacency& graph, int cap)
{
    if (cap < 0)
        throw std::invalid_argument("flag complex cap must be >= 0");
    std::vector<std::vector<std::uint32_t>> flat(static_cast<std::size_t>(cap) + 1);
    Expander ex{graph, cap, flat, {}, false};
    for (std::uint32_t v = 0; v < graph.size(); ++v) {
        const auto nb = graph.neighbours(v);
        std::vector<std::uint32_t> higher(std::upper_bound(nb.begin(), nb.end(), v), nb.end());
        ex.clique = {v};
        ex.grow(higher);
    }
    return FlagComplex(graph.size(), cap, std::move(flat), ex.truncated);
}

SparseBinaryMatrix boundary_matrix(const FlagComplex& complex, int q)
{
    if (q < 1 || q > complex.cap())
        throw std::invalid_argument("boundary dimension " + std::to_string(q) +
                                    " outside [1, cap=" + std::to_string(complex.cap()) + "]");
    SparseBinaryMatrix m;
    m.rows = complex.count(q - 1);
    m.columns.resize(complex.count(q));
    std::vector<std::uint32_t> facet(static_cast<std::size_t>(q));
    for (std::size_t i = 0; i < complex.count(q); ++i) {
        const auto s = complex.simplex(q, i);
        auto& col = m.columns[i];
        for (int drop = 0; drop <= q; ++drop) {
            std::size_t w = 0;
            for (int j = 0; j <= q; ++j)
                if (j != drop)
                    facet[w++] = s[j];
            const auto row = complex.index_of(q - 1, facet);
            if (!row)
                throw std::logic_error("flag complex is not closed under faces");
            col.push_back(static_cast<std::uint32_t>(*row));
        }
        std::sort(col.begin(), col.end());
    }
    return m;
}

namespace {

void xor_into(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& source,
              std::vector<std::uint32_t>& scratch)
{
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

}  // namespace

std::size_t gf2_rank(SparseBinaryMatrix matrix)
{
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pivot_of_low(matrix.rows, none);
    std::vector<std::uint32_t> scratch;
    std::size_t rank = 0;
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        auto& col = matrix.columns[j];
        while (!col.empty() && pivot_of_low[col.back()] != none)
            xor_into(col, matrix.columns[pivot_of_low[col.back()]], scratch);
        if (!col.empty()) {
            pivot_of_low[col.back()] = j;
            ++rank;
        }
    }
    return rank;
}

SparseBinaryMatrix gf2_product(const SparseBinaryMatrix& a, const SparseBinaryMatrix& b)
{
    if (a.cols() != b.rows)
        throw std::invalid_argument("gf2_product: inner dimensions differ");
    SparseBinaryMatrix out;
    out.rows = a.rows;
    out.columns.resize(b.cols());
    std::vector<std::uint32_t> scratch;
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::uint32_t k : b.columns[j])
            xor_into(out.columns[j], a.columns[k], scratch);
    return out;
}

BettiVector betti_numbers(const FlagComplex& complex, int kmax)
{
    if (kmax < 0)
        throw std::invalid_argument("kmax must be >= 0");
    // A complete complex has no simplices above its cap, so beta_cap needs
    // no higher boundary.
    const bool complete = !complex.truncated() && complex.cap() == kmax;
    if (complex.cap() < kmax + 1 && !complete)
        throw std::invalid_argument("betti numbers up to dimension " + std::to_string(kmax) +
                                    " need a complex built with cap >= " +
                                    std::to_string(kmax + 1) + " (got " +
                                    std::to_string(complex.cap()) + ")");
    std::vector<std::uint64_t> ranks(static_cast<std::size_t>(kmax) + 2, 0);
    for (int q = 1; q <= std::min(kmax + 1, complex.cap()); ++q)
        ranks[q] = gf2_rank(boundary_matrix(complex, q));
    BettiVector out;
    out.face_counts = complex.face_counts();
    for (int q = 0; q <= kmax; ++q)
        out.betti.push_back(out.face_counts[q] - ranks[q] - ranks[q + 1]);
    return out;
}

std::int64_t euler_characteristic(const FlagComplex& complex)
{
    if (complex.truncated())
        throw std::invalid_argument("euler characteristic needs the full clique complex "
                                    "(rebuild with cap >= clique number - 1)");
    std::int64_t chi = 0;
    for (int q = 0; q <= complex.cap(); ++q)
        chi += (q % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(complex.count(q));
    return chi;
}

}  // namespace percograph
