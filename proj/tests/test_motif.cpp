#include <doctest.h>

#include <cmath>

#include "ergm/error.hpp"
#include "ergm/motif.hpp"

using namespace ergm;

namespace {
SimpleGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
    RandomStream rng(seed, 0);
    return erdos_renyi_sample(n, p, rng);
}
}  // namespace

TEST_CASE("motif derived counts") {
    const MotifGraph tri = motifs::triangle();
    CHECK(tri.wedges() == 3);
    CHECK(tri.triangles() == 1);
    for (int j = 0; j < 3; ++j) {
        CHECK(tri.wedges_without(j) == 1);
        CHECK(tri.triangles_without(j) == 0);
    }
    const MotifGraph w = motifs::wedge();
    CHECK(w.wedges() == 1);
    CHECK(w.triangles() == 0);
    CHECK(w.wedges_without(0) == 0);
    CHECK(motifs::k4().wedges() == 12);
    CHECK(motifs::k4().triangles() == 4);
    CHECK(motifs::square().wedges() == 4);
    CHECK(motifs::two_edges().is_matching());
    CHECK_FALSE(w.is_matching());

    CHECK(motifs::edge().kind() == MotifKind::edge);
    CHECK(w.kind() == MotifKind::wedge);
    CHECK(tri.kind() == MotifKind::triangle);
    CHECK(motifs::path3().kind() == MotifKind::path3);
    CHECK(MotifGraph(4, {{1, 0}, {3, 0}, {2, 3}}).kind() == MotifKind::path3);
    CHECK(motifs::square().kind() == MotifKind::general);
    CHECK(MotifGraph(3, {{0, 1}}).kind() == MotifKind::general);
}

TEST_CASE("motif validation") {
    CHECK_THROWS_AS(MotifGraph(3, {{0, 0}}), SpecError);
    CHECK_THROWS_AS(MotifGraph(3, {{0, 1}, {1, 0}}), SpecError);
    CHECK_THROWS_AS(MotifGraph(3, {{0, 3}}), SpecError);
    CHECK_THROWS_AS(MotifGraph(9, {}), SpecError);
    CHECK_THROWS_AS(MotifGraph(0, {}), SpecError);
    CHECK(MotifGraph(3, {{2, 1}}).edge(0) == MotifGraph::Edge{1, 2});
}

TEST_CASE("hom_count examples") {
    const SimpleGraph k3 = SimpleGraph::complete(3);
    const SimpleGraph x = random_graph(7, 0.5, 2);
    CHECK(hom_count(motifs::edge(), x) == 2 * x.edge_count());
    CHECK(hom_count(motifs::wedge(), k3) == 12);
    CHECK(hom_count(motifs::triangle(), k3) == 6);
    CHECK(hom_count_brute(motifs::wedge(), k3) == 12);
    CHECK(hom_count_brute(motifs::triangle(), k3) == 6);
}

TEST_CASE("hom_density examples") {
    CHECK(hom_density(motifs::triangle(), SimpleGraph::complete(3)) == doctest::Approx(2.0 / 9.0));
    CHECK(hom_density(motifs::edge(), SimpleGraph(5)) == 0.0);
    CHECK(hom_density(motifs::edge(), SimpleGraph::complete(5)) == doctest::Approx(0.8));
}

TEST_CASE("rooted_count examples") {
    const SimpleGraph k3 = SimpleGraph::complete(3);
    const SimpleGraph x = random_graph(6, 0.5, 4);
    CHECK(rooted_count(motifs::edge(), x, {1, 3}) == 2);
    CHECK(rooted_count(motifs::wedge(), k3, {0, 2}) == 6);
    CHECK(rooted_count(motifs::triangle(), k3, {1, 2}) == 6);
    CHECK(rooted_count_brute(motifs::wedge(), k3, {0, 2}) == 6);
    CHECK(rooted_count_brute(motifs::triangle(), k3, {1, 2}) == 6);
    CHECK(rooted_count_brute(motifs::edge(), x, {1, 3}) == 2);
}

TEST_CASE("fast wedge and triangle rooted") {
    const SimpleGraph k3 = SimpleGraph::complete(3);
    CHECK(fast_wedge_rooted(k3, {0, 1}) == 6);
    CHECK(fast_wedge_rooted(SimpleGraph(5), {2, 4}) == 2);
    SimpleGraph star(5);
    for (Vertex leaf = 1; leaf <= 3; ++leaf) star.set({0, leaf}, true);
    CHECK(fast_wedge_rooted(star, {0, 4}) == 8);
    CHECK(rooted_count_brute(motifs::wedge(), star, {0, 4}) == 8);

    CHECK(fast_triangle_rooted(k3, {0, 2}) == 6);
    CHECK(fast_triangle_rooted(SimpleGraph::complete(4), {1, 3}) == 12);
    SimpleGraph c4(4);
    for (Vertex a = 0; a < 4; ++a) c4.set(EdgeId::of(a, (a + 1) % 4), true);
    CHECK(fast_triangle_rooted(c4, {0, 1}) == 0);
}

TEST_CASE("edge_mapped_count examples") {
    const SimpleGraph k3 = SimpleGraph::complete(3);
    for (int k = 0; k < 3; ++k) CHECK(edge_mapped_count(motifs::triangle(), k, k3, {0, 1}) == 2);
    CHECK(edge_mapped_count(motifs::edge(), 0, random_graph(5, 0.5, 1), {0, 4}) == 2);
    CHECK(edge_mapped_count(motifs::wedge(), 0, k3, {0, 1}) == 4);
    CHECK_THROWS_AS(edge_mapped_count(motifs::wedge(), 2, k3, {0, 1}), SpecError);
}

TEST_CASE("pair_mapped_count examples") {
    const MotifGraph tri = motifs::triangle();  // edges (0,1) (1,2) (0,2)
    CHECK(pair_mapped_count(tri, 0, 1, SimpleGraph::complete(3), {0, 1}, {1, 2}) == 1);
    const SimpleGraph x = random_graph(6, 0.5, 8);
    CHECK(pair_mapped_count(motifs::two_edges(), 0, 1, x, {0, 1}, {3, 5}) == 4);
    CHECK(pair_mapped_count(tri, 0, 1, SimpleGraph::complete(4), {0, 1}, {2, 3}) == 0);
    CHECK_THROWS_AS(pair_mapped_count(tri, 0, 0, x, {0, 1}, {1, 2}), SpecError);
    CHECK_THROWS_AS(pair_mapped_count(tri, 0, 1, x, {0, 1}, {0, 1}), SpecError);
}

TEST_CASE("good_set_statistic examples") {
    CHECK(good_set_statistic(motifs::triangle(), SimpleGraph::complete(100), {3, 7}) ==
          doctest::Approx(std::sqrt(0.98)));
    CHECK(good_set_statistic(motifs::triangle(), SimpleGraph::complete(100), {3, 7}) ==
          doctest::Approx(0.98995).epsilon(1e-5));
    CHECK(good_set_statistic(motifs::wedge(), SimpleGraph(10), {0, 1}) == doctest::Approx(1.0 / 20));
    CHECK(good_set_statistic(motifs::triangle(), SimpleGraph(10), {0, 1}) == 0.0);
    CHECK_THROWS_AS(good_set_statistic(motifs::edge(), SimpleGraph(10), {0, 1}), SpecError);
}

TEST_CASE("rooted counts are monotone under edge additions") {
    for (const MotifGraph& g : motifs::catalog()) {
        SimpleGraph x(6);
        RandomStream rng(31, 0);
        std::uint64_t prev = rooted_count(g, x, {0, 1});
        for (int i = 0; i < 14; ++i) {
            const auto u = static_cast<Vertex>(rng.next_below(6));
            auto v = static_cast<Vertex>(rng.next_below(5));
            if (v >= u) ++v;
            x.set(EdgeId::of(u, v), true);
            const std::uint64_t now = rooted_count(g, x, {0, 1});
            REQUIRE(now >= prev);
            prev = now;
        }
    }
}
