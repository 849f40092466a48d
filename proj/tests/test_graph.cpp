#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "common.hpp"

using namespace dimer;
using namespace dimer::test;

namespace {

// One black, one white, three edges, one hexagonal face: the smallest valid
// cellular bipartite torus graph.
GraphSpec theta_spec() {
    GraphSpec s;
    s.vertices = {{"b1", true}, {"w1", false}};
    s.edges = {{"e1", "b1", "w1", {0, 1}},
               {"e2", "b1", "w1", {0, 0}},
               {"e3", "b1", "w1", {1, 0}}};
    s.faces = {{{"e1", true}, {"e2", false}, {"e3", true},
                {"e1", false}, {"e2", true}, {"e3", false}}};
    s.root_white = "w1";
    s.root_face = 0;
    return s;
}

// Two vertices, four parallel edges, two quadrilateral faces; the strand
// through the two offset-free edges has homology class zero.
GraphSpec degenerate_spec() {
    GraphSpec s;
    s.vertices = {{"b1", true}, {"w1", false}};
    s.edges = {{"e1", "b1", "w1", {0, 0}},
               {"e2", "b1", "w1", {0, 0}},
               {"e3", "b1", "w1", {1, 0}},
               {"e4", "b1", "w1", {1, 0}}};
    s.faces = {{{"e1", true}, {"e2", false}, {"e3", true}, {"e4", false}},
               {{"e2", true}, {"e1", false}, {"e4", true}, {"e3", false}}};
    s.root_white = "w1";
    s.root_face = 0;
    return s;
}

}  // namespace

TEST_CASE("fixtures build with the torus Euler relation") {
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        TorusGraph g = load_fixture_graph(name);
        CHECK(int64_t(g.vertex_count()) - int64_t(g.edge_count()) +
                  int64_t(g.face_count()) ==
              0);
    }
    TorusGraph sq = load_fixture_graph("square");
    CHECK(sq.vertex_count() == 4);
    CHECK(sq.edge_count() == 8);
    CHECK(sq.face_count() == 4);
    TorusGraph hex = load_fixture_graph("hexagon");
    CHECK(hex.vertex_count() == 10);
    CHECK(hex.edge_count() == 15);
    CHECK(hex.face_count() == 5);
    CHECK(theta_spec().vertices.size() == 2);
    CHECK_NOTHROW(TorusGraph::build(theta_spec()));
}

TEST_CASE("build_graph rejects malformed specs") {
    SUBCASE("non-bipartite edge") {
        GraphSpec s = theta_spec();
        s.vertices[1].black = true;
        CHECK_THROWS_WITH_AS(TorusGraph::build(s), doctest::Contains("NonBipartite"),
                             Error);
    }
    SUBCASE("single edge, single face: Euler mismatch") {
        GraphSpec s;
        s.vertices = {{"b1", true}, {"w1", false}};
        s.edges = {{"e1", "b1", "w1", {0, 0}}};
        s.faces = {{{"e1", true}, {"e1", false}}};
        s.root_white = "w1";
        s.root_face = 0;
        CHECK_THROWS_WITH_AS(TorusGraph::build(s), doctest::Contains("EulerMismatch"),
                             Error);
    }
    SUBCASE("odd face length") {
        GraphSpec s = theta_spec();
        s.faces = {{{"e1", true}, {"e2", false}, {"e3", true},
                    {"e1", false}, {"e2", true}},
                   {{"e3", false}}};
        CHECK_THROWS_AS(TorusGraph::build(s), Error);
    }
    SUBCASE("edge side used twice across faces") {
        GraphSpec s = theta_spec();
        s.faces = {{{"e1", true}, {"e2", false}, {"e1", true},
                    {"e2", false}, {"e3", true}, {"e3", false}}};
        CHECK_THROWS_WITH_AS(TorusGraph::build(s), doctest::Contains("FaceInconsistency"),
                             Error);
    }
}

TEST_CASE("zig-zag classes of the worked examples") {
    auto classes = [](const TorusGraph& g) {
        std::multiset<std::pair<int64_t, int64_t>> out;
        for (const auto& z : g.zigzags()) out.insert({z.cls.x, z.cls.y});
        return out;
    };
    CHECK(classes(load_fixture_graph("square")) ==
          std::multiset<std::pair<int64_t, int64_t>>{{-1, 1}, {-1, -1}, {1, -1}, {1, 1}});
    CHECK(classes(load_fixture_graph("hexagon")) ==
          std::multiset<std::pair<int64_t, int64_t>>{{-1, 2}, {-1, -3}, {2, 1}});
    CHECK(classes(load_fixture_graph("square_octagon")) ==
          std::multiset<std::pair<int64_t, int64_t>>{{0, 1}, {0, 1}, {-1, 0}, {-1, 0},
                                                     {0, -1}, {0, -1}, {1, 0}, {1, 0}});
}

TEST_CASE("each edge lies on two strands traversed in opposite directions") {
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        TorusGraph g = load_fixture_graph(name);
        std::map<int, std::vector<bool>> dirs;
        size_t total_steps = 0;
        for (const auto& z : g.zigzags()) {
            total_steps += z.steps.size();
            for (const auto& s : z.steps) dirs[s.edge].push_back(s.forward);
        }
        CHECK(total_steps == 2 * g.edge_count());
        for (size_t e = 0; e < g.edge_count(); ++e) {
            REQUIRE(dirs[int(e)].size() == 2);
            CHECK(dirs[int(e)][0] != dirs[int(e)][1]);
        }
        Vec2 total{0, 0};
        for (const auto& z : g.zigzags()) total += z.cls;
        CHECK(total.is_zero());
    }
}

TEST_CASE("newton polygon of the fixtures") {
    SUBCASE("square: unit diamond, genus 1") {
        NewtonPolygon n = load_fixture_graph("square").newton_polygon();
        CHECK(n.genus() == 1);
        CHECK(n.twice_area() == 4);
        std::set<Vec2> vs(n.vertices().begin(), n.vertices().end());
        CHECK(vs == std::set<Vec2>{{0, 0}, {1, -1}, {1, 1}, {2, 0}});
    }
    SUBCASE("hexagon: triangle with primitive sides, genus 2") {
        NewtonPolygon n = load_fixture_graph("hexagon").newton_polygon();
        CHECK(n.genus() == 2);
        CHECK(n.vertices().size() == 3);
        for (const auto& r : n.rays()) CHECK(r.lattice_len == 1);
    }
    SUBCASE("square-octagon: square sides of lattice length 2, genus 1") {
        NewtonPolygon n = load_fixture_graph("square_octagon").newton_polygon();
        CHECK(n.genus() == 1);
        CHECK(n.vertices().size() == 4);
        CHECK(n.twice_area() == 8);
        for (const auto& r : n.rays()) CHECK(r.lattice_len == 2);
    }
}

TEST_CASE("polygon closes, is convex, and satisfies the lattice point count") {
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        NewtonPolygon n = load_fixture_graph(name).newton_polygon();
        int64_t twice_area = 0;
        for (size_t i = 0; i < n.ray_count(); ++i)
            twice_area += det(n.vertices()[i], n.vertices()[(i + 1) % n.ray_count()]);
        CHECK(twice_area == n.twice_area());
        CHECK(twice_area > 0);
        int64_t boundary = 0;
        for (const auto& r : n.rays()) boundary += r.lattice_len;
        CHECK(int64_t(n.boundary_lattice_points().size()) == boundary);
        CHECK(2 * n.genus() == twice_area - boundary + 2);
    }
}

namespace {

// Independent crossing-count oracle: in a minimal graph, strand pairs with
// independent classes share exactly |det| edges (the homological
// intersection number), same-direction pairs are disjoint, and antiparallel
// pairs meet an even number of times (cancelling crossings only).
bool crossing_counts_minimal(const TorusGraph& g) {
    const auto& zz = g.zigzags();
    for (size_t i = 0; i < zz.size(); ++i) {
        for (size_t j = i + 1; j < zz.size(); ++j) {
            int64_t shared = 0;
            for (size_t e = 0; e < g.edge_count(); ++e) {
                auto [a, b] = g.zigzags_of_edge(int(e));
                if ((a == int(i) && b == int(j)) || (a == int(j) && b == int(i))) ++shared;
            }
            int64_t d = det(zz[i].cls, zz[j].cls);
            if (d != 0 && shared != std::llabs(d)) return false;
            if (d == 0 && primitive_of(zz[i].cls) == primitive_of(zz[j].cls) && shared != 0)
                return false;
            if (d == 0 && shared % 2 != 0) return false;
        }
    }
    return true;
}

// One face of ten sides around a pendant black vertex: every edge side lies
// on a single zig-zag strand, whose lift self-intersects.
GraphSpec spur_spec() {
    GraphSpec s;
    s.vertices = {{"b1", true}, {"b2", true}, {"w1", false}, {"w2", false}};
    s.edges = {{"e1", "b1", "w1", {0, 0}},
               {"e2", "b2", "w1", {1, 0}},
               {"e3", "b2", "w1", {0, 1}},
               {"e4", "b2", "w2", {0, 0}},
               {"e5", "b2", "w2", {0, 0}}};
    s.faces = {{{"e1", false}, {"e1", true}, {"e2", false}, {"e4", true},
                {"e5", false}, {"e2", true}, {"e3", false}, {"e5", true},
                {"e4", false}, {"e3", true}}};
    s.root_white = "w1";
    s.root_face = 0;
    return s;
}

}  // namespace

TEST_CASE("check_minimality matches the crossing-count oracle on the fixtures") {
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        TorusGraph g = load_fixture_graph(name);
        CHECK(g.check_minimality().empty());
        CHECK(crossing_counts_minimal(g));
    }
    TorusGraph theta = TorusGraph::build(theta_spec());
    CHECK(theta.check_minimality().empty());
    CHECK(crossing_counts_minimal(theta));
}

TEST_CASE("doubled edge produces a minimality violation") {
    TorusGraph g = TorusGraph::build(degenerate_spec());
    auto viol = g.check_minimality();
    CHECK(!viol.empty());
}

TEST_CASE("self-intersecting strand is reported") {
    TorusGraph g = TorusGraph::build(spur_spec());
    bool self_report = false;
    for (const auto& v : g.check_minimality())
        if (v.what.find("twice") != std::string::npos) self_report = true;
    CHECK(self_report);
}

TEST_CASE("perfect matching is the enumeration minimum") {
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        TorusGraph g = load_fixture_graph(name);
        auto m0 = g.perfect_matching();
        auto all = all_matchings(g);
        REQUIRE(!all.empty());
        auto lex_min = *std::min_element(all.begin(), all.end());
        CHECK(m0 == lex_min);
    }
    TorusGraph sq = load_fixture_graph("square");
    auto m0 = sq.perfect_matching();
    CHECK(sq.edge_id(m0[0]) == "e5");
    CHECK(sq.edge_id(m0[1]) == "e3");
}

TEST_CASE("matching search reports infeasibility") {
    // White 0 is isolated.
    std::vector<std::vector<std::pair<int, int>>> adj = {{}, {{0, 0}}};
    CHECK(!lex_min_matching(adj).has_value());
    // Two whites compete for the same black.
    adj = {{{0, 5}}, {{1, 5}}};
    CHECK(!lex_min_matching(adj).has_value());
    adj = {{{0, 1}, {1, 2}}, {{2, 1}}};
    auto m = lex_min_matching(adj);
    REQUIRE(m.has_value());
    CHECK(*m == std::vector<int>{1, 2});
}

TEST_CASE("corner structure covers every edge side once") {
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        TorusGraph g = load_fixture_graph(name);
        size_t corners = 0;
        for (const auto& fc : g.face_corners()) corners += fc.size();
        CHECK(corners == 2 * g.edge_count());
        for (const auto& fc : g.face_corners())
            for (const auto& c : fc) CHECK(c.zigzag >= 0);
    }
}
