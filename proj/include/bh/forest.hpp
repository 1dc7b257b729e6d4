#ifndef BH_FOREST_HPP
#define BH_FOREST_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "bh/topology.hpp"

namespace bh {

using EdgeSet = std::vector<Edge>; // kept sorted and unique

inline void sort_unique(EdgeSet& es) {
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
}

inline bool contains(const EdgeSet& es, const Edge& e) {
    return std::binary_search(es.begin(), es.end(), e);
}

inline bool incident(const EdgeSet& es, const Vertex& v) {
    for (const auto& e : es)
        if (e.touches(v)) return true;
    return false;
}

inline int degree_in(const EdgeSet& es, const Vertex& v) {
    int d = 0;
    for (const auto& e : es)
        if (e.touches(v)) ++d;
    return d;
}

// A vertex-disjoint union of paths, given as an edge set. Singleton vertices
// are not represented.
class LinearForest {
public:
    LinearForest() = default;

    // Validates the two forest rules and reports the first violation.
    static LinearForest validate(EdgeSet edges) {
        sort_unique(edges);
        std::map<Vertex, int> deg;
        for (const auto& e : edges) {
            if (++deg[e.a()] > 2) throw NotAForest("vertex " + e.a().str() + " has degree > 2");
            if (++deg[e.b()] > 2) throw NotAForest("vertex " + e.b().str() + " has degree > 2");
        }
        // cycle check by union-find over touched vertices
        std::map<Vertex, Vertex> parent;
        for (const auto& [v, d] : deg) parent[v] = v;
        auto find = [&](Vertex v) {
            while (!(parent[v] == v)) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const auto& e : edges) {
            Vertex ra = find(e.a()), rb = find(e.b());
            if (ra == rb)
                throw NotAForest("edge (" + e.a().str() + "," + e.b().str() + ") closes a cycle");
            parent[ra] = rb;
        }
        LinearForest f;
        f.edges_ = std::move(edges);
        return f;
    }

    const EdgeSet& edges() const { return edges_; }
    size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }

    bool contains(const Edge& e) const { return bh::contains(edges_, e); }
    int degree(const Vertex& v) const { return degree_in(edges_, v); }
    bool touches(const Vertex& v) const { return incident(edges_, v); }
    bool internal(const Vertex& v) const { return degree(v) == 2; }

    bool can_add(const Edge& e) const {
        if (contains(e)) return false;
        if (degree(e.a()) >= 2 || degree(e.b()) >= 2) return false;
        return !connected(e.a(), e.b());
    }

    LinearForest plus(const Edge& e) const {
        if (!can_add(e))
            throw NotAForest("adding (" + e.a().str() + "," + e.b().str() + ") breaks the forest");
        LinearForest f = *this;
        f.edges_.insert(std::upper_bound(f.edges_.begin(), f.edges_.end(), e), e);
        return f;
    }

    LinearForest minus(const Edge& e) const {
        LinearForest f = *this;
        auto it = std::lower_bound(f.edges_.begin(), f.edges_.end(), e);
        if (it == f.edges_.end() || !(*it == e)) throw Error("minus: edge not in forest");
        f.edges_.erase(it);
        return f;
    }

    // Maximal paths as vertex sequences, each reported with its
    // lexicographically smaller end first; paths sorted by first vertex.
    std::vector<std::vector<Vertex>> maximal_paths() const {
        std::vector<std::vector<Vertex>> out;
        std::vector<bool> used(edges_.size(), false);
        std::map<Vertex, std::vector<size_t>> at;
        for (size_t i = 0; i < edges_.size(); ++i) {
            at[edges_[i].a()].push_back(i);
            at[edges_[i].b()].push_back(i);
        }
        for (const auto& [v, ids] : at) {
            if (ids.size() != 1) continue; // path ends have degree 1
            bool fresh = true;
            for (size_t id : ids)
                if (used[id]) fresh = false;
            if (!fresh) continue;
            std::vector<Vertex> path{v};
            Vertex cur = v;
            while (true) {
                size_t next = edges_.size();
                for (size_t id : at[cur])
                    if (!used[id]) next = id;
                if (next == edges_.size()) break;
                used[next] = true;
                cur = edges_[next].other(cur);
                path.push_back(cur);
            }
            if (path.back() < path.front()) std::reverse(path.begin(), path.end());
            out.push_back(std::move(path));
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& p, const auto& q) { return p.front() < q.front(); });
        return out;
    }

    // Degree-1 vertices.
    std::vector<Vertex> end_vertices() const {
        std::vector<Vertex> out;
        std::map<Vertex, int> deg;
        for (const auto& e : edges_) {
            deg[e.a()]++;
            deg[e.b()]++;
        }
        for (const auto& [v, d] : deg)
            if (d == 1) out.push_back(v);
        return out;
    }

    // The other end of the maximal path that starts at end-vertex v, or v
    // itself when v is not an end vertex.
    Vertex path_other_end(const Vertex& v) const {
        if (degree(v) != 1) return v;
        Vertex prev = v, cur = v;
        while (true) {
            bool moved = false;
            for (const auto& e : edges_) {
                if (!e.touches(cur)) continue;
                Vertex o = e.other(cur);
                if (o == prev) continue;
                prev = cur;
                cur = o;
                moved = true;
                break;
            }
            if (!moved) return cur;
        }
    }

    bool connected(const Vertex& x, const Vertex& y) const {
        if (!touches(x) || !touches(y)) return false;
        std::vector<Vertex> stack{x};
        std::vector<Vertex> seen{x};
        while (!stack.empty()) {
            Vertex cur = stack.back();
            stack.pop_back();
            if (cur == y) return true;
            for (const auto& e : edges_) {
                if (!e.touches(cur)) continue;
                Vertex o = e.other(cur);
                if (std::find(seen.begin(), seen.end(), o) == seen.end()) {
                    seen.push_back(o);
                    stack.push_back(o);
                }
            }
        }
        return false;
    }

private:
    EdgeSet edges_;
};

// {u,v} is compatible to L: neither is internal to a prescribed path and no
// single maximal path of L has both as its two end vertices.
inline bool compatible(const LinearForest& L, const Vertex& u, const Vertex& v) {
    if (L.internal(u) || L.internal(v)) return false;
    if (L.degree(u) == 1 && L.degree(v) == 1 && L.connected(u, v)) return false;
    return true;
}

} // namespace bh

#endif
