#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ergm/rng.hpp"

namespace ergm {

using Vertex = std::uint32_t;

// Unordered vertex pair, normalized so that u < v.
struct EdgeId {
    Vertex u = 0;
    Vertex v = 1;

    // Throws SpecError if a == b.
    static EdgeId of(Vertex a, Vertex b);

    bool meets(const EdgeId& other) const {
        return u == other.u || u == other.v || v == other.u || v == other.v;
    }
    friend bool operator==(const EdgeId&, const EdgeId&) = default;
    friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

inline std::uint64_t pair_count(std::size_t n) {
    return static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

// Dense labeled simple graph. Rows are n-bit adjacency masks; both
// triangles of the matrix are stored so that row ANDs give codegrees.
// Degrees are cached alongside the edge count.
class SimpleGraph {
public:
    explicit SimpleGraph(std::size_t n);

    static SimpleGraph complete(std::size_t n);

    std::size_t n() const { return n_; }
    std::uint64_t edge_count() const { return edge_count_; }
    std::uint64_t pair_count() const { return ergm::pair_count(n_); }
    double edge_density() const {
        return static_cast<double>(edge_count_) / static_cast<double>(pair_count());
    }

    bool has(Vertex a, Vertex b) const {
        return a != b && ((row(a)[b >> 6] >> (b & 63)) & 1u);
    }
    bool has(const EdgeId& e) const { return (row(e.u)[e.v >> 6] >> (e.v & 63)) & 1u; }
    std::uint32_t degree(Vertex a) const { return degree_[a]; }

    // Mutators check the edge against n; out-of-range vertices throw SpecError.
    void flip(const EdgeId& e);
    void set(const EdgeId& e, bool present);

    // Number of w outside {a, b} adjacent to both.
    std::uint32_t codegree(Vertex a, Vertex b) const;

    // Sum of degrees over the neighbours of a (a itself is never its own neighbour).
    std::uint64_t neighbour_degree_sum(Vertex a) const;

    std::span<const std::uint64_t> row(Vertex a) const {
        return {adj_.data() + static_cast<std::size_t>(a) * words_, words_};
    }
    std::size_t words_per_row() const { return words_; }

    void check_edge(const EdgeId& e) const;

    std::vector<EdgeId> edges() const;

    friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

    // Edge-subset order: every edge of *this is an edge of other.
    bool is_subgraph_of(const SimpleGraph& other) const;

private:
    std::uint64_t* mut_row(Vertex a) { return adj_.data() + static_cast<std::size_t>(a) * words_; }
    void toggle_bits(Vertex a, Vertex b);

    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> adj_;
    std::vector<std::uint32_t> degree_;
    std::uint64_t edge_count_ = 0;
};

// Each pair present independently with probability p, consuming one
// uniform per pair in lexicographic (u, v) order.
SimpleGraph erdos_renyi_sample(std::size_t n, double p, RandomStream& rng);

SimpleGraph flip_edge(const SimpleGraph& x, const EdgeId& e);
SimpleGraph with_edge(const SimpleGraph& x, const EdgeId& e);    // x^{+e}
SimpleGraph without_edge(const SimpleGraph& x, const EdgeId& e); // x^{-e}

std::uint32_t codegree(const SimpleGraph& x, Vertex u, Vertex v);

std::uint64_t hamming_distance(const SimpleGraph& x, const SimpleGraph& y);

// Disagreements restricted to pairs meeting e (e itself included).
std::uint64_t local_hamming(const SimpleGraph& x, const SimpleGraph& y, const EdgeId& e);

// Debug dump: "n <n>" then one sorted "u v" line per edge.
void write_graph(std::ostream& os, const SimpleGraph& x);
SimpleGraph read_graph(std::istream& is);

} // namespace ergm
