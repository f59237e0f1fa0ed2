#include "ergm/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "ergm/error.hpp"

namespace ergm {

EdgeId EdgeId::of(Vertex a, Vertex b) {
    if (a == b) {
        throw SpecError("edge endpoints must differ (got " + std::to_string(a) + ", " +
                        std::to_string(b) + ")");
    }
    return a < b ? EdgeId{a, b} : EdgeId{b, a};
}

SimpleGraph::SimpleGraph(std::size_t n)
    : n_(n), words_((n + 63) / 64), adj_(n * ((n + 63) / 64), 0), degree_(n, 0) {
    if (n < 2) {
        throw SpecError("graph needs at least 2 vertices (got " + std::to_string(n) + ")");
    }
}

SimpleGraph SimpleGraph::complete(std::size_t n) {
    SimpleGraph x(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) x.toggle_bits(u, v);
    }
    return x;
}

void SimpleGraph::check_edge(const EdgeId& e) const {
    if (e.u >= e.v || e.v >= n_) {
        throw SpecError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                        "} invalid for n=" + std::to_string(n_));
    }
}

void SimpleGraph::toggle_bits(Vertex a, Vertex b) {
    const bool was = has(a, b);
    mut_row(a)[b >> 6] ^= std::uint64_t{1} << (b & 63);
    mut_row(b)[a >> 6] ^= std::uint64_t{1} << (a & 63);
    if (was) {
        --degree_[a];
        --degree_[b];
        --edge_count_;
    } else {
        ++degree_[a];
        ++degree_[b];
        ++edge_count_;
    }
}

void SimpleGraph::flip(const EdgeId& e) {
    check_edge(e);
    toggle_bits(e.u, e.v);
}

void SimpleGraph::set(const EdgeId& e, bool present) {
    check_edge(e);
    if (has(e) != present) toggle_bits(e.u, e.v);
}

std::uint32_t SimpleGraph::codegree(Vertex a, Vertex b) const {
    // Rows never contain their own vertex, and a's row bit for b does not
    // matter since b's row has no b bit: the AND already excludes {a, b}.
    const std::uint64_t* ra = adj_.data() + static_cast<std::size_t>(a) * words_;
    const std::uint64_t* rb = adj_.data() + static_cast<std::size_t>(b) * words_;
    std::uint32_t count = 0;
    for (std::size_t w = 0; w < words_; ++w) count += std::popcount(ra[w] & rb[w]);
    return count;
}

std::uint64_t SimpleGraph::neighbour_degree_sum(Vertex a) const {
    const std::uint64_t* ra = adj_.data() + static_cast<std::size_t>(a) * words_;
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = ra[w];
        while (bits) {
            const int bit = std::countr_zero(bits);
            total += degree_[w * 64 + bit];
            bits &= bits - 1;
        }
    }
    return total;
}

std::vector<EdgeId> SimpleGraph::edges() const {
    std::vector<EdgeId> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u) {
        for (Vertex v = u + 1; v < n_; ++v) {
            if (has(u, v)) out.push_back({u, v});
        }
    }
    return out;
}

bool SimpleGraph::is_subgraph_of(const SimpleGraph& other) const {
    if (n_ != other.n_) return false;
    for (std::size_t i = 0; i < adj_.size(); ++i) {
        if (adj_[i] & ~other.adj_[i]) return false;
    }
    return true;
}

SimpleGraph erdos_renyi_sample(std::size_t n, double p, RandomStream& rng) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw SpecError("edge probability must lie in [0,1] (got " + std::to_string(p) + ")");
    }
    SimpleGraph x(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (rng.next_uniform() < p) x.set({u, v}, true);
        }
    }
    return x;
}

SimpleGraph flip_edge(const SimpleGraph& x, const EdgeId& e) {
    SimpleGraph y = x;
    y.flip(e);
    return y;
}

SimpleGraph with_edge(const SimpleGraph& x, const EdgeId& e) {
    SimpleGraph y = x;
    y.set(e, true);
    return y;
}

SimpleGraph without_edge(const SimpleGraph& x, const EdgeId& e) {
    SimpleGraph y = x;
    y.set(e, false);
    return y;
}

std::uint32_t codegree(const SimpleGraph& x, Vertex u, Vertex v) {
    if (u == v) throw SpecError("codegree needs two distinct vertices");
    if (u >= x.n() || v >= x.n()) throw SpecError("codegree vertex out of range");
    return x.codegree(u, v);
}

namespace {
void require_same_order(const SimpleGraph& x, const SimpleGraph& y) {
    if (x.n() != y.n()) {
        throw SpecError("graphs differ in vertex count (" + std::to_string(x.n()) + " vs " +
                        std::to_string(y.n()) + ")");
    }
}
} // namespace

std::uint64_t hamming_distance(const SimpleGraph& x, const SimpleGraph& y) {
    require_same_order(x, y);
    std::uint64_t twice = 0;
    for (Vertex a = 0; a < x.n(); ++a) {
        const auto rx = x.row(a);
        const auto ry = y.row(a);
        for (std::size_t w = 0; w < rx.size(); ++w) twice += std::popcount(rx[w] ^ ry[w]);
    }
    return twice / 2;
}

std::uint64_t local_hamming(const SimpleGraph& x, const SimpleGraph& y, const EdgeId& e) {
    require_same_order(x, y);
    x.check_edge(e);
    std::uint64_t total = 0;
    for (const Vertex a : {e.u, e.v}) {
        const auto rx = x.row(a);
        const auto ry = y.row(a);
        for (std::size_t w = 0; w < rx.size(); ++w) total += std::popcount(rx[w] ^ ry[w]);
    }
    // The pair e itself sits in both rows.
    if (x.has(e) != y.has(e)) --total;
    return total;
}

void write_graph(std::ostream& os, const SimpleGraph& x) {
    os << "n " << x.n() << '\n';
    for (const EdgeId& e : x.edges()) os << e.u << ' ' << e.v << '\n';
}

SimpleGraph read_graph(std::istream& is) {
    std::string tag;
    std::size_t n = 0;
    if (!(is >> tag >> n) || tag != "n") throw SpecError("graph dump must start with 'n <n>'");
    SimpleGraph x(n);
    Vertex a, b;
    while (is >> a >> b) {
        const EdgeId e = EdgeId::of(a, b);
        x.set(e, true);
    }
    return x;
}

} // namespace ergm
