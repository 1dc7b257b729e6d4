#ifndef BH_PARTITION_HPP
#define BH_PARTITION_HPP

#include <array>

#include "bh/topology.hpp"

namespace bh {

// The 4-way split of BH_n along dimension j >= 1: block i holds the vertices
// whose digit j equals i, each isomorphic to BH_{n-1} by dropping digit j.
// Every j-dimensional edge joins an even vertex of block i to an odd vertex
// of block i+1 (mod 4); a vertex's two j-dimensional neighbors both lie in
// the same adjacent block (they are shadows of each other).
class PartitionView {
public:
    PartitionView(const BalancedHypercube& h, int j) : h_(&h), j_(j), sub_(h.n() > 1 ? h.n() - 1 : 1) {
        if (h.n() < 2) throw DimensionOutOfRange("partition needs n >= 2");
        if (j < 1 || j >= h.n())
            throw DimensionOutOfRange("partition dimension must satisfy 1 <= j <= n-1");
    }

    const BalancedHypercube& host() const { return *h_; }
    const BalancedHypercube& sub() const { return sub_; }
    int dimension() const { return j_; }

    int block_of(const Vertex& v) const { return v.digit(j_); }

    Vertex to_sub(const Vertex& v) const { return v.dropped(j_); }
    Vertex from_sub(int block, const Vertex& s) const { return s.inserted(j_, block); }

    // Both j-dimensional neighbors of v, plus sign first.
    std::array<Vertex, 2> crossing_neighbors(const Vertex& v) const {
        return {h_->neighbor(v, j_, Sign::plus), h_->neighbor(v, j_, Sign::minus)};
    }

    // Block holding v's crossing neighbors: +1 for even v, -1 for odd v.
    int crossing_block(const Vertex& v) const {
        return (block_of(v) + (v.even() ? 1 : 3)) % 4;
    }

    bool is_crossing(const Edge& e) const { return e.dim() == j_; }

    std::vector<Vertex> block_vertices(int block) const {
        std::vector<Vertex> out;
        out.reserve(sub_.vertex_count());
        for (size_t r = 0; r < sub_.vertex_count(); ++r)
            out.push_back(from_sub(block, Vertex::from_rank(sub_.n(), r)));
        return out;
    }

private:
    const BalancedHypercube* h_;
    int j_;
    BalancedHypercube sub_;
};

} // namespace bh

#endif
