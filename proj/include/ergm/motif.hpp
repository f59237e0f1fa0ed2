#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ergm/graph.hpp"

namespace ergm {

enum class MotifKind { edge, wedge, triangle, path3, general };

// Small simple graph G_j. Vertices 0..v-1, v <= 8.
class MotifGraph {
public:
    using Edge = std::pair<int, int>;
    static constexpr int max_vertices = 8;

    MotifGraph() = default;
    // Normalizes each pair to (a, b) with a < b. Throws SpecError on loops,
    // duplicates, out-of-range endpoints, or v outside [1, 8].
    MotifGraph(int vertices, std::vector<Edge> edges);

    int v() const { return v_; }
    int e() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int k) const { return edges_.at(static_cast<std::size_t>(k)); }
    int degree(int a) const { return degree_[static_cast<std::size_t>(a)]; }
    const std::vector<int>& degrees() const { return degree_; }
    long wedges() const { return wedges_; }      // sum over vertices of C(d, 2)
    long triangles() const { return triangles_; }
    MotifKind kind() const { return kind_; }
    bool adjacent(int a, int b) const;

    // Wedge / triangle counts of G with edge k removed.
    long wedges_without(int k) const;
    long triangles_without(int k) const;

    // True iff every vertex has degree <= 1 (disjoint union of edges,
    // possibly with isolated vertices).
    bool is_matching() const;

    // Label-dependent canonical text, e.g. "3:0-1,1-2".
    std::string canonical() const;

    friend bool operator==(const MotifGraph& a, const MotifGraph& b) {
        return a.v_ == b.v_ && a.edges_ == b.edges_;
    }

private:
    int v_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> degree_;
    long wedges_ = 0;
    long triangles_ = 0;
    MotifKind kind_ = MotifKind::general;
};

namespace motifs {
MotifGraph edge();
MotifGraph wedge();
MotifGraph path3();
MotifGraph triangle();
MotifGraph square();
MotifGraph two_edges();
MotifGraph k4();
std::vector<MotifGraph> catalog();
} // namespace motifs

long wedge_count(const MotifGraph& g, const std::vector<bool>& keep);
long triangle_count(const MotifGraph& g, const std::vector<bool>& keep);

// Exhaustive count of maps V(G) -> [n] sending every G-edge to an x-edge.
std::uint64_t hom_count_brute(const MotifGraph& g, const SimpleGraph& x);
// Closed form for edge / wedge / triangle / path3, brute force otherwise.
std::uint64_t hom_count(const MotifGraph& g, const SimpleGraph& x);
double hom_density(const MotifGraph& g, const SimpleGraph& x);

// Homomorphisms into x^{+e} sending at least one G-edge onto e. Counted
// by the first motif edge that lands on e, so each map is seen once.
std::uint64_t rooted_count_brute(const MotifGraph& g, const SimpleGraph& x, const EdgeId& e);
// Closed form when available.
std::uint64_t rooted_count(const MotifGraph& g, const SimpleGraph& x, const EdgeId& e);
bool has_fast_rooted(const MotifGraph& g);

std::uint64_t fast_wedge_rooted(const SimpleGraph& x, const EdgeId& e);
std::uint64_t fast_triangle_rooted(const SimpleGraph& x, const EdgeId& e);
std::uint64_t fast_path3_rooted(const SimpleGraph& x, const EdgeId& e);

// Homomorphisms into x^{+e} sending motif edge k onto e (both orientations).
std::uint64_t edge_mapped_count(const MotifGraph& g, int k, const SimpleGraph& x, const EdgeId& e);

// Homomorphisms into x^{+e+e'} sending motif edge k onto e and k2 onto e2.
std::uint64_t pair_mapped_count(const MotifGraph& g, int k, int k2, const SimpleGraph& x,
                                const EdgeId& e, const EdgeId& e2);

// (N_G(x,e) / (2 e(G) n^{v-2}))^{1/(e(G)-1)}. Requires e(G) >= 2.
double good_set_statistic(const MotifGraph& g, const SimpleGraph& x, const EdgeId& e);

} // namespace ergm
