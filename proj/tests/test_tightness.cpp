#include <doctest.h>

#include "folcalc/realization.hpp"
#include "folcalc/rotation.hpp"
#include "folcalc/tightness.hpp"
#include "support.hpp"

using namespace folcalc;
using testing::fixture;

TEST_SUITE("rotation") {
  TEST_CASE("planar triangle has two faces") {
    RotationSystem rs(3);
    rs.add_edge(0, 1);
    rs.add_edge(1, 2);
    rs.add_edge(2, 0);
    CHECK(rs.trace_faces().size() == 2);
    CHECK(rs.euler_characteristic() == 2);
  }

  TEST_CASE("tetrahedron embedding") {
    // K4 drawn with vertex 3 in the middle of triangle 0 1 2.
    RotationSystem rs(4);
    int e01 = rs.add_edge(0, 1), e12 = rs.add_edge(1, 2), e20 = rs.add_edge(2, 0);
    int e03 = rs.add_edge(0, 3), e13 = rs.add_edge(1, 3), e23 = rs.add_edge(2, 3);
    rs.set_rotation(0, {2 * e01, 2 * e03, 2 * e20 + 1});
    rs.set_rotation(1, {2 * e12, 2 * e13, 2 * e01 + 1});
    rs.set_rotation(2, {2 * e20, 2 * e23, 2 * e12 + 1});
    rs.set_rotation(3, {2 * e23 + 1, 2 * e03 + 1, 2 * e13 + 1});
    CHECK(rs.trace_faces().size() == 4);
    CHECK(rs.euler_characteristic() == 2);
  }

  TEST_CASE("two interleaved loops give a torus") {
    RotationSystem rs(1);
    int a = rs.add_edge(0, 0), b = rs.add_edge(0, 0);
    rs.set_rotation(0, {2 * a, 2 * b, 2 * a + 1, 2 * b + 1});
    CHECK(rs.trace_faces().size() == 1);
    CHECK(rs.euler_characteristic() == 0);
    rs.set_rotation(0, {2 * a, 2 * a + 1, 2 * b, 2 * b + 1});
    CHECK(rs.trace_faces().size() == 3);
    CHECK(rs.euler_characteristic() == 2);
  }

  TEST_CASE("components and isolated vertices") {
    RotationSystem rs(5);
    rs.add_edge(0, 1);
    rs.add_edge(2, 3);
    int count = 0;
    auto label = rs.components(&count);
    CHECK(count == 3);
    CHECK(label[0] == label[1]);
    CHECK(label[0] != label[2]);
    CHECK(rs.isolated_vertices() == 1);
    CHECK(rs.euler_characteristic() == 6);
  }

  TEST_CASE("rotation must list the vertex's own darts") {
    RotationSystem rs(2);
    int e = rs.add_edge(0, 1);
    CHECK_THROWS(rs.set_rotation(0, {2 * e + 1}));
    CHECK_THROWS(rs.set_rotation(0, {}));
  }
}

TEST_SUITE("tightness") {
  TEST_CASE("hand-built graphs") {
    auto single = GppGraph::from_edges({"p1"}, {});
    CHECK(is_tree(single));
    CHECK(boundary_circles(single).face_trace == 1);
    CHECK(tree_obstruction(single).empty());

    auto loop = GppGraph::from_edges({"p1", "p2"}, {{1, "p1", "p2"}, {2, "p1", "p1"}});
    CHECK_FALSE(is_tree(loop));
    CHECK(tree_obstruction(loop).find("loop at p1") != std::string::npos);
    CHECK(boundary_circles(loop).closed_form == 2);

    auto cycle = GppGraph::from_edges({"p1", "p2", "p3"}, {{1, "p1", "p2"}, {3, "p2", "p3"}, {4, "p3", "p1"}});
    CHECK_FALSE(is_tree(cycle));
    CHECK(tree_obstruction(cycle) == "cycle through positive saddles of ranks 1 3 4");
    CHECK(boundary_circles(cycle).face_trace == 2);

    auto parallel = GppGraph::from_edges({"p1", "p2"}, {{1, "p1", "p2"}, {2, "p1", "p2"}});
    CHECK(tree_obstruction(parallel) == "cycle through positive saddles of ranks 1 2");

    auto split = GppGraph::from_edges({"p1", "p2", "p3"}, {{2, "p1", "p2"}});
    CHECK_FALSE(is_tree(split));
    CHECK(tree_obstruction(split) == "disconnected into 2 components: {p1 p2} {p3}");
    auto circles = boundary_circles(split);
    CHECK(circles.closed_form == 2);
    CHECK(circles.face_trace == 2);

    auto path = GppGraph::from_edges({"p1", "p2", "p3"}, {{1, "p1", "p2"}, {2, "p2", "p3"}});
    CHECK(is_tree(path));
    CHECK(boundary_circles(path).face_trace == 1);

    CHECK_FALSE(is_tree(GppGraph{}));
  }

  TEST_CASE("non-planar rotation is caught") {
    auto g = GppGraph::from_edges({"p1"}, {{1, "p1", "p1"}, {2, "p1", "p1"}});
    g.rotation[0] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    CHECK_THROWS_AS(boundary_circles(g), std::logic_error);
  }

  TEST_CASE("fixtures") {
    auto g = build_gpp(fixture("k2_tree.fol"));
    CHECK(g.vertices == std::vector<std::string>{"p1", "p2"});
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].rank == 1);

    auto trivial = tightness_verdict(fixture("trivial.fol"));
    CHECK(trivial.tree);
    CHECK(trivial.dividing_circles == 1);
    CHECK(std::string(verdict_name(trivial.verdict)) == "tight-compatible");

    auto parallel = tightness_verdict(fixture("k2_parallel.fol"));
    CHECK_FALSE(parallel.tree);
    CHECK(parallel.dividing_circles == 2);
    CHECK(std::string(verdict_name(parallel.verdict)) == "overtwisted-witness");

    CHECK(dividing_circle_count(fixture("k2_disconnected.fol")) == 2);
    CHECK(tree_obstruction(build_gpp(fixture("k2_disconnected.fol"))).find("disconnected") == 0);
    CHECK(tree_obstruction(build_gpp(fixture("k3_cycle.fol"))) == "cycle through positive saddles of ranks 1 2 3");
    CHECK(tightness_verdict(fixture("k3_tree.fol")).tree);
  }

  TEST_CASE("tree iff one dividing circle over the census and random movies") {
    auto check = [](const FoliationMovie& m) {
      auto g = build_gpp(m);
      auto c = boundary_circles(g);
      CHECK(c.closed_form == c.face_trace);
      CHECK(is_tree(g) == (c.face_trace == 1));
      CHECK(tree_obstruction(g).empty() == is_tree(g));
    };
    for (const auto& m : enumerate_movies(3)) check(m);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      int k = 1 + static_cast<int>(seed % 7);
      check(random_movie(k, static_cast<int>(seed / 7) % k, seed));
    }
  }
}
