#pragma once

#include "percograph/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace percograph {

/// Clique (flag) complex of a graph up to a dimension cap. Simplices of each
/// dimension are stored as sorted vertex tuples in lexicographic order.
class FlagComplex {
public:
    FlagComplex(std::size_t vertex_count, int cap, std::vector<std::vector<std::uint32_t>> flat,
                bool truncated);

    std::size_t vertex_count() const { return vertex_count_; }
    int cap() const { return cap_; }
    /// True if some clique has more than cap + 1 vertices.
    bool truncated() const { return truncated_; }
    std::size_t count(int q) const;
    std::span<const std::uint32_t> simplex(int q, std::size_t i) const;
    /// Position of a sorted tuple among the q-simplices.
    std::optional<std::size_t> index_of(int q, std::span<const std::uint32_t> tuple) const;
    /// f_0 .. f_cap.
    std::vector<std::uint64_t> face_counts() const;

private:
    std::size_t vertex_count_;
    int cap_;
    std::vector<std::vector<std::uint32_t>> flat_;
    bool truncated_;
};

/// Ordered expansion: each clique is grown from its smallest vertex, adding
/// only common neighbours with larger index.
FlagComplex build_flag_complex(const Adjacency& graph, int cap);

/// Binary matrix stored as sorted row-index lists per column.
struct SparseBinaryMatrix {
    std::size_t rows = 0;
    std::vector<std::vector<std::uint32_t>> columns;

    std::size_t cols() const { return columns.size(); }
};

/// GF(2) boundary map from q-simplices to (q-1)-simplices. 1 <= q <= cap.
SparseBinaryMatrix boundary_matrix(const FlagComplex& complex, int q);

/// Rank over GF(2) by column reduction with low-index pivots.
std::size_t gf2_rank(SparseBinaryMatrix matrix);

/// a * b over GF(2).
SparseBinaryMatrix gf2_product(const SparseBinaryMatrix& a, const SparseBinaryMatrix& b);

struct BettiVector {
    std::vector<std::uint64_t> betti;        // beta_0 .. beta_kmax
    std::vector<std::uint64_t> face_counts;  // f_0 .. f_cap
};

/// beta_q = f_q - rank d_q - rank d_{q+1}. Needs cap >= kmax + 1.
BettiVector betti_numbers(const FlagComplex& complex, int kmax);

/// sum (-1)^q f_q. The complex must not be truncated.
std::int64_t euler_characteristic(const FlagComplex& complex);

}  // namespace percograph
