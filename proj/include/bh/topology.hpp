#ifndef BH_TOPOLOGY_HPP
#define BH_TOPOLOGY_HPP

#include <optional>
#include <vector>

#include "bh/vertex.hpp"

namespace bh {

enum class Sign { plus, minus };

class BalancedHypercube;

// Undirected edge, stored with the lexicographically smaller endpoint first
// so that sets and hashing are deterministic. The dimension is cached.
class Edge {
public:
    Edge(const BalancedHypercube& h, Vertex x, Vertex y);

    const Vertex& a() const { return a_; }
    const Vertex& b() const { return b_; }
    int dim() const { return dim_; }

    bool touches(const Vertex& v) const { return a_ == v || b_ == v; }
    const Vertex& other(const Vertex& v) const { return a_ == v ? b_ : a_; }

    friend bool operator==(const Edge& x, const Edge& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const Edge& x, const Edge& y) { return !(x == y); }
    friend bool operator<(const Edge& x, const Edge& y) {
        if (x.a_ != y.a_) return x.a_ < y.a_;
        return x.b_ < y.b_;
    }

private:
    Vertex a_, b_;
    int dim_ = -1;
};

// The n-dimensional balanced hypercube: 4^n vertices, 2n-regular, bipartite.
class BalancedHypercube {
public:
    explicit BalancedHypercube(int n) : n_(n) {
        if (n < 1 || n > kMaxDim) throw Error("dimension must be in [1,8]");
    }

    int n() const { return n_; }
    size_t vertex_count() const { return size_t{1} << (2 * n_); }

    bool valid(const Vertex& v) const { return v.size() == n_; }

    // The j-dimensional neighbors. Both signs shift digit 0 by +/-1; for
    // j >= 1 the digit j moves by (-1)^{digit0} regardless of the sign.
    Vertex neighbor(const Vertex& v, int j, Sign s) const {
        check(v);
        if (j < 0 || j >= n_) throw DimensionOutOfRange("neighbor: dimension out of range");
        int delta = s == Sign::plus ? 1 : 3;
        Vertex w = v.with_digit(0, v.digit(0) + delta);
        if (j > 0) {
            int step = v.digit(0) % 2 == 0 ? 1 : 3;
            w = w.with_digit(j, v.digit(j) + step);
        }
        return w;
    }

    std::vector<Vertex> neighbors(const Vertex& v) const {
        std::vector<Vertex> out;
        out.reserve(static_cast<size_t>(2 * n_));
        for (int j = 0; j < n_; ++j) {
            out.push_back(neighbor(v, j, Sign::plus));
            out.push_back(neighbor(v, j, Sign::minus));
        }
        return out;
    }

    Vertex shadow(const Vertex& v) const {
        check(v);
        return v.with_digit(0, v.digit(0) + 2);
    }

    bool adjacent(const Vertex& x, const Vertex& y) const { return dimension_of(x, y).has_value(); }

    int edge_dimension(const Vertex& x, const Vertex& y) const {
        auto d = dimension_of(x, y);
        if (!d) throw NotAnEdge("not an edge: (" + x.str() + "," + y.str() + ")");
        return *d;
    }

    // Dimension i such that one endpoint is the other's i-dimensional
    // neighbor, or nullopt when the pair is not adjacent.
    std::optional<int> dimension_of(const Vertex& x, const Vertex& y) const {
        check(x);
        check(y);
        int d0 = (y.digit(0) - x.digit(0) + 4) % 4;
        if (d0 != 1 && d0 != 3) return std::nullopt;
        int diff = -1;
        for (int i = 1; i < n_; ++i) {
            if (x.digit(i) != y.digit(i)) {
                if (diff >= 0) return std::nullopt;
                diff = i;
            }
        }
        if (diff < 0) return 0;
        int step = x.digit(0) % 2 == 0 ? 1 : 3;
        if ((x.digit(diff) + step) % 4 != y.digit(diff)) return std::nullopt;
        return diff;
    }

    // All vertices in lexicographic digit-string order.
    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        out.reserve(vertex_count());
        for (size_t r = 0; r < vertex_count(); ++r) out.push_back(Vertex::from_rank(n_, r));
        return out;
    }

private:
    void check(const Vertex& v) const {
        if (!valid(v)) throw Error("vertex/graph dimension mismatch");
    }
    int n_;
};

inline Edge::Edge(const BalancedHypercube& h, Vertex x, Vertex y) {
    dim_ = h.edge_dimension(x, y);
    if (x < y) {
        a_ = x;
        b_ = y;
    } else {
        a_ = y;
        b_ = x;
    }
}

inline Parity parity(const Vertex& v) { return v.parity(); }

// x_d -> x_d + c (mod 4), other digits fixed. An automorphism for d >= 1;
// digit 0 participates asymmetrically in adjacency and is rejected.
struct DigitShift {
    int d;
    int c;
    DigitShift(const BalancedHypercube& h, int d_, int c_) : d(d_), c(((c_ % 4) + 4) % 4) {
        if (d < 1 || d >= h.n()) throw DimensionOutOfRange("digit shift needs 1 <= d < n");
    }
    Vertex operator()(const Vertex& v) const { return v.with_digit(d, v.digit(d) + c); }
};

// Exchange digits a and b (both >= 1); maps a-dimensional edges to
// b-dimensional edges and vice versa.
struct DigitSwap {
    int a;
    int b;
    DigitSwap(const BalancedHypercube& h, int a_, int b_) : a(a_), b(b_) {
        if (a < 1 || a >= h.n() || b < 1 || b >= h.n())
            throw DimensionOutOfRange("digit swap needs 1 <= a,b < n");
    }
    Vertex operator()(const Vertex& v) const {
        return v.with_digit(a, v.digit(b)).with_digit(b, v.digit(a));
    }
};

} // namespace bh

#endif
