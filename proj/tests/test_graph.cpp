#include <doctest.h>
#include <cmath>

#include <sstream>

#include "ergm/error.hpp"
#include "ergm/graph.hpp"

using namespace ergm;

namespace {
SimpleGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
    RandomStream rng(seed, 0);
    return erdos_renyi_sample(n, p, rng);
}
}  // namespace

TEST_CASE("erdos-renyi extremes and mean") {
    RandomStream rng(1, 0);
    CHECK(erdos_renyi_sample(4, 0.0, rng).edge_count() == 0);
    CHECK(erdos_renyi_sample(4, 1.0, rng).edge_count() == 6);
    CHECK_THROWS_AS(erdos_renyi_sample(4, 1.5, rng), SpecError);
    CHECK_THROWS_AS(erdos_renyi_sample(1, 0.5, rng), SpecError);

    double sum = 0.0, sq = 0.0;
    const int reps = 1000;
    for (int s = 0; s < reps; ++s) {
        const double m = static_cast<double>(random_graph(100, 0.5, 1000 + s).edge_count());
        sum += m;
        sq += m * m;
    }
    const double mean = sum / reps;
    const double se = std::sqrt((sq / reps - mean * mean) / reps);
    CHECK(std::abs(mean - 2475.0) < 3 * se);
}

TEST_CASE("flip") {
    const SimpleGraph x = random_graph(7, 0.4, 3);
    CHECK(flip_edge(flip_edge(x, {1, 4}), {1, 4}) == x);
    CHECK(flip_edge(SimpleGraph(4), {0, 1}).edge_count() == 1);
    const SimpleGraph k4 = flip_edge(SimpleGraph::complete(4), {0, 1});
    CHECK(k4.edge_count() == 5);
    CHECK(codegree(k4, 0, 1) == 2);
    CHECK_THROWS_AS(flip_edge(x, {2, 7}), SpecError);
    CHECK_THROWS_AS(EdgeId::of(3, 3), SpecError);
    CHECK(EdgeId::of(5, 2) == EdgeId{2, 5});
}

TEST_CASE("codegree") {
    CHECK(codegree(SimpleGraph::complete(3), 0, 2) == 1);
    CHECK(codegree(SimpleGraph(5), 1, 2) == 0);
    SimpleGraph star(5);
    for (Vertex leaf = 1; leaf <= 4; ++leaf) star.set({0, leaf}, true);
    CHECK(codegree(star, 2, 3) == 1);
    CHECK_THROWS_AS(codegree(star, 2, 2), SpecError);

    for (std::uint64_t s = 0; s < 50; ++s) {
        const SimpleGraph x = random_graph(3 + s % 6, 0.5, s);
        for (Vertex u = 0; u < x.n(); ++u) {
            for (Vertex v = 0; v < x.n(); ++v) {
                if (u == v) continue;
                std::uint32_t direct = 0;
                for (Vertex w = 0; w < x.n(); ++w) direct += x.has(u, w) && x.has(v, w);
                REQUIRE(codegree(x, u, v) == direct);
            }
        }
    }
}

TEST_CASE("codegree across word boundaries") {
    SimpleGraph x(130);
    for (Vertex w : {2u, 63u, 64u, 65u, 127u, 129u}) {
        x.set(EdgeId::of(0, w), true);
        x.set(EdgeId::of(1, w), true);
    }
    CHECK(codegree(x, 0, 1) == 6);
    CHECK(x.degree(0) == 6);
    CHECK(x.neighbour_degree_sum(0) == 12);
}

TEST_CASE("hamming distances") {
    const SimpleGraph x = random_graph(6, 0.5, 9);
    CHECK(hamming_distance(x, x) == 0);
    CHECK(hamming_distance(SimpleGraph(3), SimpleGraph::complete(3)) == 3);
    CHECK(hamming_distance(x, flip_edge(x, {2, 3})) == 1);
    CHECK_THROWS_AS(hamming_distance(SimpleGraph(3), SimpleGraph(4)), SpecError);

    CHECK(local_hamming(x, x, {0, 1}) == 0);
    CHECK(local_hamming(x, flip_edge(x, {2, 3}), {0, 1}) == 0);
    CHECK(local_hamming(SimpleGraph(4), SimpleGraph::complete(4), {0, 1}) == 5);

    for (Vertex a = 0; a < 6; ++a) {
        for (Vertex b = a + 1; b < 6; ++b) {
            const EdgeId e{a, b};
            const SimpleGraph y = flip_edge(x, e);
            for (Vertex c = 0; c < 6; ++c) {
                for (Vertex d = c + 1; d < 6; ++d) {
                    const EdgeId f{c, d};
                    REQUIRE(local_hamming(x, y, f) == (e.meets(f) ? 1u : 0u));
                }
            }
        }
    }
}

TEST_CASE("edge count tracks odd flip multiplicity") {
    SimpleGraph x(9);
    RandomStream rng(5, 0);
    std::vector<int> parity(81, 0);
    for (int i = 0; i < 500; ++i) {
        const auto u = static_cast<Vertex>(rng.next_below(9));
        auto v = static_cast<Vertex>(rng.next_below(8));
        if (v >= u) ++v;
        const EdgeId e = EdgeId::of(u, v);
        x.flip(e);
        parity[e.u * 9 + e.v] ^= 1;
        std::uint64_t odd = 0;
        for (int p : parity) odd += static_cast<std::uint64_t>(p);
        REQUIRE(x.edge_count() == odd);
    }
    std::uint64_t upper = 0;
    for (Vertex a = 0; a < 9; ++a) {
        CHECK_FALSE(x.has(a, a));
        for (Vertex b = a + 1; b < 9; ++b) {
            CHECK(x.has(a, b) == x.has(b, a));
            upper += x.has(a, b);
        }
    }
    CHECK(upper == x.edge_count());
}

TEST_CASE("dump round trip") {
    const SimpleGraph x = random_graph(8, 0.3, 11);
    std::stringstream ss;
    write_graph(ss, x);
    CHECK(ss.str().rfind("n 8\n", 0) == 0);
    CHECK(read_graph(ss) == x);
}
