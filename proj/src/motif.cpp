#include "ergm/motif.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ergm/error.hpp"

namespace ergm {

MotifGraph::MotifGraph(int vertices, std::vector<Edge> edges) : v_(vertices) {
    if (vertices < 1 || vertices > max_vertices) {
        throw SpecError("motif vertex count must lie in [1, 8] (got " + std::to_string(vertices) +
                        ")");
    }
    degree_.assign(static_cast<std::size_t>(v_), 0);
    for (auto [a, b] : edges) {
        if (a == b) throw SpecError("motif edge is a self-loop at " + std::to_string(a));
        if (a < 0 || b < 0 || a >= v_ || b >= v_) {
            throw SpecError("motif edge [" + std::to_string(a) + "," + std::to_string(b) +
                            "] out of range for " + std::to_string(v_) + " vertices");
        }
        const Edge norm = a < b ? Edge{a, b} : Edge{b, a};
        if (std::find(edges_.begin(), edges_.end(), norm) != edges_.end()) {
            throw SpecError("duplicate motif edge [" + std::to_string(norm.first) + "," +
                            std::to_string(norm.second) + "]");
        }
        edges_.push_back(norm);
        ++degree_[static_cast<std::size_t>(norm.first)];
        ++degree_[static_cast<std::size_t>(norm.second)];
    }
    const std::vector<bool> all(edges_.size(), true);
    wedges_ = wedge_count(*this, all);
    triangles_ = triangle_count(*this, all);

    std::vector<int> sorted = degree_;
    std::sort(sorted.begin(), sorted.end());
    if (v_ == 2 && e() == 1) {
        kind_ = MotifKind::edge;
    } else if (v_ == 3 && e() == 2) {
        kind_ = MotifKind::wedge;
    } else if (v_ == 3 && e() == 3) {
        kind_ = MotifKind::triangle;
    } else if (v_ == 4 && e() == 3 && sorted == std::vector<int>{1, 1, 2, 2}) {
        kind_ = MotifKind::path3;
    }
}

bool MotifGraph::adjacent(int a, int b) const {
    const Edge norm = a < b ? Edge{a, b} : Edge{b, a};
    return std::find(edges_.begin(), edges_.end(), norm) != edges_.end();
}

long MotifGraph::wedges_without(int k) const {
    std::vector<bool> keep(edges_.size(), true);
    keep.at(static_cast<std::size_t>(k)) = false;
    return wedge_count(*this, keep);
}

long MotifGraph::triangles_without(int k) const {
    std::vector<bool> keep(edges_.size(), true);
    keep.at(static_cast<std::size_t>(k)) = false;
    return triangle_count(*this, keep);
}

bool MotifGraph::is_matching() const {
    return std::all_of(degree_.begin(), degree_.end(), [](int d) { return d <= 1; });
}

std::string MotifGraph::canonical() const {
    std::vector<Edge> sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    std::string s = std::to_string(v_) + ":";
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(sorted[i].first) + "-" + std::to_string(sorted[i].second);
    }
    return s;
}

long wedge_count(const MotifGraph& g, const std::vector<bool>& keep) {
    std::vector<long> d(static_cast<std::size_t>(g.v()), 0);
    for (int k = 0; k < g.e(); ++k) {
        if (!keep[static_cast<std::size_t>(k)]) continue;
        ++d[static_cast<std::size_t>(g.edge(k).first)];
        ++d[static_cast<std::size_t>(g.edge(k).second)];
    }
    long s = 0;
    for (long x : d) s += x * (x - 1) / 2;
    return s;
}

long triangle_count(const MotifGraph& g, const std::vector<bool>& keep) {
    const int v = g.v();
    std::array<std::array<bool, MotifGraph::max_vertices>, MotifGraph::max_vertices> adj{};
    for (int k = 0; k < g.e(); ++k) {
        if (!keep[static_cast<std::size_t>(k)]) continue;
        auto [a, b] = g.edge(k);
        adj[a][b] = adj[b][a] = true;
    }
    long t = 0;
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
            for (int c = b + 1; c < v; ++c)
                if (adj[a][b] && adj[b][c] && adj[a][c]) ++t;
    return t;
}

namespace motifs {
MotifGraph edge() { return MotifGraph(2, {{0, 1}}); }
MotifGraph wedge() { return MotifGraph(3, {{0, 1}, {1, 2}}); }
MotifGraph path3() { return MotifGraph(4, {{0, 1}, {1, 2}, {2, 3}}); }
MotifGraph triangle() { return MotifGraph(3, {{0, 1}, {1, 2}, {0, 2}}); }
MotifGraph square() { return MotifGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }
MotifGraph two_edges() { return MotifGraph(4, {{0, 1}, {2, 3}}); }
MotifGraph k4() { return MotifGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
std::vector<MotifGraph> catalog() {
    return {edge(), wedge(), path3(), triangle(), square(), two_edges(), k4()};
}
} // namespace motifs

namespace {

// Depth-first enumeration of homomorphisms with some motif vertices pinned
// and some motif edges forbidden from landing on a given host pair.
class Enumerator {
public:
    Enumerator(const MotifGraph& g, const SimpleGraph& y, const std::array<int, 8>& pinned,
               const std::vector<int>& forbidden, EdgeId banned)
        : g_(g), y_(y), banned_(banned), words_(y.words_per_row()) {
        const int v = g.v();
        std::array<bool, 8> placed{};
        for (int a = 0; a < v; ++a) {
            if (pinned[a] >= 0) {
                order_.push_back(a);
                placed[a] = true;
                img_[a] = static_cast<Vertex>(pinned[a]);
            }
        }
        n_pinned_ = order_.size();
        while (static_cast<int>(order_.size()) < v) {
            int best = -1, best_links = -1;
            for (int a = 0; a < v; ++a) {
                if (placed[a]) continue;
                int links = 0;
                for (int b = 0; b < v; ++b)
                    if (placed[b] && g.adjacent(a, b)) ++links;
                if (best < 0 || links > best_links ||
                    (links == best_links && g.degree(a) > g.degree(best))) {
                    best = a;
                    best_links = links;
                }
            }
            order_.push_back(best);
            placed[best] = true;
        }
        std::array<int, 8> pos{};
        for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = static_cast<int>(i);
        back_.resize(order_.size());
        checks_.resize(order_.size());
        for (const auto& [a, b] : g.edges()) {
            const int later = std::max(pos[a], pos[b]);
            const int other = pos[a] > pos[b] ? b : a;
            back_[later].push_back(other);
        }
        for (int k : forbidden) {
            auto [a, b] = g.edge(k);
            checks_[std::max(pos[a], pos[b])].push_back(k);
        }
        scratch_.assign(order_.size() * words_, 0);
    }

    std::uint64_t count() {
        // Pinned prefix: verify its internal edges and constraints directly.
        for (std::size_t i = 0; i < n_pinned_; ++i) {
            const int a = order_[i];
            for (int b : back_[i])
                if (!y_.has(img_[a], img_[b])) return 0;
            if (!checks_ok(i)) return 0;
        }
        if (n_pinned_ == order_.size()) return 1;
        return descend(n_pinned_);
    }

private:
    bool checks_ok(std::size_t i) const {
        for (int k : checks_[i]) {
            auto [a, b] = g_.edge(k);
            const Vertex s = img_[a], t = img_[b];
            if ((s == banned_.u && t == banned_.v) || (s == banned_.v && t == banned_.u)) {
                return false;
            }
        }
        return true;
    }

    std::uint64_t descend(std::size_t i) {
        const int a = order_[i];
        const std::size_t n = y_.n();
        std::uint64_t* cand = scratch_.data() + i * words_;
        if (back_[i].empty()) {
            std::fill(cand, cand + words_, ~std::uint64_t{0});
            if (n % 64) cand[words_ - 1] = (std::uint64_t{1} << (n % 64)) - 1;
        } else {
            const auto r0 = y_.row(img_[back_[i][0]]);
            std::copy(r0.begin(), r0.end(), cand);
            for (std::size_t j = 1; j < back_[i].size(); ++j) {
                const auto r = y_.row(img_[back_[i][j]]);
                for (std::size_t w = 0; w < words_; ++w) cand[w] &= r[w];
            }
        }
        const bool last = i + 1 == order_.size();
        if (last && checks_[i].empty()) {
            std::uint64_t c = 0;
            for (std::size_t w = 0; w < words_; ++w) c += std::popcount(cand[w]);
            return c;
        }
        std::uint64_t total = 0;
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                img_[a] = static_cast<Vertex>(w * 64 + std::countr_zero(bits));
                bits &= bits - 1;
                if (!checks_ok(i)) continue;
                total += last ? 1 : descend(i + 1);
            }
        }
        return total;
    }

    const MotifGraph& g_;
    const SimpleGraph& y_;
    EdgeId banned_;
    std::size_t words_;
    std::vector<int> order_;
    std::size_t n_pinned_ = 0;
    std::vector<std::vector<int>> back_;
    std::vector<std::vector<int>> checks_;
    std::array<Vertex, 8> img_{};
    std::vector<std::uint64_t> scratch_;
};

constexpr std::array<int, 8> no_pins() { return {-1, -1, -1, -1, -1, -1, -1, -1}; }

// Pin motif edge k onto e in orientation o, on top of existing pins.
bool pin_edge(const MotifGraph& g, int k, const EdgeId& e, int o, std::array<int, 8>& pins) {
    auto [a, b] = g.edge(k);
    const int ia = static_cast<int>(o ? e.v : e.u);
    const int ib = static_cast<int>(o ? e.u : e.v);
    if ((pins[a] >= 0 && pins[a] != ia) || (pins[b] >= 0 && pins[b] != ib)) return false;
    pins[a] = ia;
    pins[b] = ib;
    return true;
}

void check_motif_edge(const MotifGraph& g, int k) {
    if (k < 0 || k >= g.e()) {
        throw SpecError("motif edge index " + std::to_string(k) + " out of range (motif has " +
                        std::to_string(g.e()) + " edges)");
    }
}

} // namespace

std::uint64_t hom_count_brute(const MotifGraph& g, const SimpleGraph& x) {
    return Enumerator(g, x, no_pins(), {}, EdgeId{}).count();
}

std::uint64_t hom_count(const MotifGraph& g, const SimpleGraph& x) {
    switch (g.kind()) {
    case MotifKind::edge:
        return 2 * x.edge_count();
    case MotifKind::wedge: {
        std::uint64_t s = 0;
        for (Vertex a = 0; a < x.n(); ++a) s += std::uint64_t{x.degree(a)} * x.degree(a);
        return s;
    }
    case MotifKind::triangle: {
        std::uint64_t s = 0;
        for (const EdgeId& e : x.edges()) s += x.codegree(e.u, e.v);
        return 2 * s;
    }
    case MotifKind::path3: {
        std::uint64_t s = 0;
        for (const EdgeId& e : x.edges()) s += std::uint64_t{x.degree(e.u)} * x.degree(e.v);
        return 2 * s;
    }
    case MotifKind::general:
        break;
    }
    return hom_count_brute(g, x);
}

double hom_density(const MotifGraph& g, const SimpleGraph& x) {
    return static_cast<double>(hom_count(g, x)) /
           std::pow(static_cast<double>(x.n()), g.v());
}

std::uint64_t rooted_count_brute(const MotifGraph& g, const SimpleGraph& x, const EdgeId& e) {
    x.check_edge(e);
    const SimpleGraph y = with_edge(x, e);
    std::uint64_t total = 0;
    std::vector<int> earlier;
    for (int k = 0; k < g.e(); ++k) {
        for (int o = 0; o < 2; ++o) {
            auto pins = no_pins();
            pin_edge(g, k, e, o, pins);
            total += Enumerator(g, y, pins, earlier, e).count();
        }
        earlier.push_back(k);
    }
    return total;
}

bool has_fast_rooted(const MotifGraph& g) { return g.kind() != MotifKind::general; }

std::uint64_t rooted_count(const MotifGraph& g, const SimpleGraph& x, const EdgeId& e) {
    switch (g.kind()) {
    case MotifKind::edge:
        x.check_edge(e);
        return 2;
    case MotifKind::wedge:
        return fast_wedge_rooted(x, e);
    case MotifKind::triangle:
        return fast_triangle_rooted(x, e);
    case MotifKind::path3:
        return fast_path3_rooted(x, e);
    case MotifKind::general:
        break;
    }
    return rooted_count_brute(g, x, e);
}

std::uint64_t fast_wedge_rooted(const SimpleGraph& x, const EdgeId& e) {
    x.check_edge(e);
    const std::uint64_t present = x.has(e) ? 1 : 0;
    return 2 * ((x.degree(e.u) - present) + (x.degree(e.v) - present)) + 2;
}

std::uint64_t fast_triangle_rooted(const SimpleGraph& x, const EdgeId& e) {
    x.check_edge(e);
    return 6 * std::uint64_t{x.codegree(e.u, e.v)};
}

std::uint64_t fast_path3_rooted(const SimpleGraph& x, const EdgeId& e) {
    x.check_edge(e);
    const bool present = x.has(e);
    const std::uint64_t du = x.degree(e.u) - (present ? 1 : 0);
    const std::uint64_t dv = x.degree(e.v) - (present ? 1 : 0);
    std::uint64_t su = x.neighbour_degree_sum(e.u);
    std::uint64_t sv = x.neighbour_degree_sum(e.v);
    if (present) {
        su -= x.degree(e.v);
        sv -= x.degree(e.u);
    }
    return 2 * ((du + 1) * (dv + 1) + su + sv);
}

std::uint64_t edge_mapped_count(const MotifGraph& g, int k, const SimpleGraph& x,
                                const EdgeId& e) {
    check_motif_edge(g, k);
    x.check_edge(e);
    const SimpleGraph y = with_edge(x, e);
    std::uint64_t total = 0;
    for (int o = 0; o < 2; ++o) {
        auto pins = no_pins();
        pin_edge(g, k, e, o, pins);
        total += Enumerator(g, y, pins, {}, e).count();
    }
    return total;
}

std::uint64_t pair_mapped_count(const MotifGraph& g, int k, int k2, const SimpleGraph& x,
                                const EdgeId& e, const EdgeId& e2) {
    check_motif_edge(g, k);
    check_motif_edge(g, k2);
    if (k == k2) throw SpecError("pair_mapped_count needs two distinct motif edges");
    x.check_edge(e);
    x.check_edge(e2);
    if (e == e2) throw SpecError("pair_mapped_count needs two distinct host edges");
    SimpleGraph y = with_edge(x, e);
    y.set(e2, true);
    std::uint64_t total = 0;
    for (int o = 0; o < 2; ++o) {
        for (int o2 = 0; o2 < 2; ++o2) {
            auto pins = no_pins();
            if (!pin_edge(g, k, e, o, pins) || !pin_edge(g, k2, e2, o2, pins)) continue;
            total += Enumerator(g, y, pins, {}, e).count();
        }
    }
    return total;
}

double good_set_statistic(const MotifGraph& g, const SimpleGraph& x, const EdgeId& e) {
    if (g.e() < 2) {
        throw SpecError("good-set statistic needs a motif with at least 2 edges");
    }
    const double n = static_cast<double>(x.n());
    const double ratio = static_cast<double>(rooted_count(g, x, e)) /
                         (2.0 * g.e() * std::pow(n, g.v() - 2));
    return std::pow(ratio, 1.0 / (g.e() - 1));
}

} // namespace ergm
