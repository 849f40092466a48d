#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "common.hpp"

using namespace dimer;
using namespace dimer::test;

namespace {

LaurentPoly<Rat> spectral_curve_square(const SquareParams& v) {
    LaurentPoly<Rat> p;
    p.add_term({0, 0}, 1 + v.X1 + 1 / v.X2 + v.X1 * v.X3);
    p.add_term({0, 1}, -v.B);
    p.add_term({0, -1}, -v.X1 * v.X3 / v.B);
    p.add_term({-1, 0}, -1 / (v.A * v.X2));
    p.add_term({1, 0}, -v.A * v.X1);
    return p;
}

LaurentPoly<Rat> fixture_p(const std::string& name, TorusGraph& g) {
    auto wc = load_fixture_weights(name, g.face_count());
    auto wt = weight_cocycle(g, wc);
    auto eps = fixture_eps(g);
    auto k = kasteleyn_matrix(g, wt, eps);
    return characteristic_polynomial(g, k, g.perfect_matching(), wt, eps);
}

}  // namespace

TEST_CASE("explicit fixture signs satisfy the face conditions") {
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        TorusGraph g = load_fixture_graph(name);
        CHECK(sign_face_conditions_hold(g, fixture_eps(g)));
    }
}

TEST_CASE("computed sign satisfies the face conditions and the prescribed monodromy") {
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        TorusGraph g = load_fixture_graph(name);
        SignCocycle eps = kasteleyn_sign(g);
        CHECK(sign_face_conditions_hold(g, eps));
        int a = 1, b = 1;
        for (const auto& s : g.cycle_a()) a *= eps[size_t(s.edge)];
        for (const auto& s : g.cycle_b()) b *= eps[size_t(s.edge)];
        CHECK(a == 1);
        CHECK(b == 1);
    }
}

TEST_CASE("square-lattice sign pattern is reproduced up to coboundary") {
    TorusGraph g = load_fixture_graph("square");
    SignCocycle figure = fixture_eps(g);
    // The drawn pattern has monodromy -1 around both generator cycles.
    SignCocycle computed = kasteleyn_sign(g, -1, -1);
    CHECK(sign_face_conditions_hold(g, computed));
    CHECK(signs_coboundary_equivalent(g, figure, computed));
    // With the +1 normalization the patterns are inequivalent.
    SignCocycle plus = kasteleyn_sign(g, 1, 1);
    CHECK(!signs_coboundary_equivalent(g, figure, plus));
}

TEST_CASE("four-cycle faces carry sign product -1") {
    TorusGraph g = load_fixture_graph("square");
    SignCocycle eps = fixture_eps(g);
    for (const auto& walk : g.faces()) {
        REQUIRE(walk.size() == 4);
        int prod = 1;
        for (const auto& s : walk) prod *= eps[size_t(s.edge)];
        CHECK(prod == -1);
    }
}

TEST_CASE("weight cocycle reproduces face weights and monodromies") {
    std::mt19937 rng(31);
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        TorusGraph g = load_fixture_graph(name);
        for (int trial = 0; trial < 5; ++trial) {
            WeightClass<Rat> wc = trial == 0 ? load_fixture_weights(name, g.face_count())
                                             : random_weight_class(g, rng);
            auto wt = weight_cocycle(g, wc);
            for (size_t f = 0; f < g.face_count(); ++f)
                CHECK(alternating_product(g.faces()[f], wt) ==
                      wc.face_value(int(f), g.face_count()));
            CHECK(alternating_product(g.cycle_a(), wt) == wc.A);
            CHECK(alternating_product(g.cycle_b(), wt) == wc.B);
        }
    }
}

TEST_CASE("all-one weight class admits the constant cocycle") {
    TorusGraph g = load_fixture_graph("square");
    WeightClass<Rat> wc;
    for (size_t f = 0; f < g.face_count(); ++f)
        if (int(f) != g.root_face()) wc.face_weights[int(f)] = R(1);
    wc.A = R(1);
    wc.B = R(1);
    auto wt = weight_cocycle(g, wc);
    for (const auto& v : wt) CHECK(v == R(1));
}

TEST_CASE("square-lattice curve polynomial is exact") {
    TorusGraph g = load_fixture_graph("square");
    CHECK(fixture_p("square", g) == spectral_curve_square(SquareParams{}));
}

TEST_CASE("weight-one square lattice curve polynomial") {
    TorusGraph g = load_fixture_graph("square");
    WeightClass<Rat> wc;
    for (size_t f = 0; f < g.face_count(); ++f)
        if (int(f) != g.root_face()) wc.face_weights[int(f)] = R(1);
    wc.A = R(1);
    wc.B = R(1);
    auto wt = weight_cocycle(g, wc);
    auto eps = fixture_eps(g);
    auto k = kasteleyn_matrix(g, wt, eps);
    auto p = characteristic_polynomial(g, k, g.perfect_matching(), wt, eps);
    LaurentPoly<Rat> want;
    want.add_term({0, 0}, R(4));
    want.add_term({0, 1}, R(-1));
    want.add_term({0, -1}, R(-1));
    want.add_term({1, 0}, R(-1));
    want.add_term({-1, 0}, R(-1));
    CHECK(p == want);
}

TEST_CASE("Newton polygon of P equals the zig-zag polygon") {
    for (const char* name : {"hexagon", "square_octagon", "square"}) {
        TorusGraph g = load_fixture_graph(name);
        auto p = fixture_p(name, g);
        NewtonPolygon from_p = NewtonPolygon::from_support(p.support());
        NewtonPolygon shape = g.newton_polygon();
        CHECK(from_p.twice_area() == shape.twice_area());
        CHECK(from_p.genus() == shape.genus());
        CHECK(from_p.ray_count() == shape.ray_count());
        std::multiset<std::pair<std::pair<int64_t, int64_t>, int64_t>> a, b;
        for (const auto& r : from_p.rays()) a.insert({{r.dir.x, r.dir.y}, r.lattice_len});
        for (const auto& r : shape.rays()) b.insert({{r.dir.x, r.dir.y}, r.lattice_len});
        CHECK(a == b);
    }
}

TEST_CASE("Casimirs of the worked examples") {
    SUBCASE("square") {
        TorusGraph g = load_fixture_graph("square");
        auto wt = weight_cocycle(g, load_fixture_weights("square", g.face_count()));
        auto cas = casimirs(g, wt, fixture_eps(g));
        auto labels = label_zigzags(g, cas, square_casimirs());
        CHECK(cas[size_t(labels["alpha"])] == R(-11, 14));
        CHECK(cas[size_t(labels["beta"])] == R(-1, 231));
        CHECK(cas[size_t(labels["gamma"])] == R(-210, 11));
        CHECK(cas[size_t(labels["delta"])] == R(-77, 5));
    }
    SUBCASE("hexagon") {
        TorusGraph g = load_fixture_graph("hexagon");
        auto wt = weight_cocycle(g, load_fixture_weights("hexagon", g.face_count()));
        auto cas = casimirs(g, wt, fixture_eps(g));
        auto labels = label_zigzags(g, cas, hexagon_casimirs());
        CHECK(labels.size() == 3);
    }
    SUBCASE("square-octagon") {
        TorusGraph g = load_fixture_graph("square_octagon");
        auto wt = weight_cocycle(g, load_fixture_weights("square_octagon", g.face_count()));
        auto cas = casimirs(g, wt, fixture_eps(g));
        auto labels = label_zigzags(g, cas, sqoct_casimirs());
        SqOctParams v;
        CHECK(cas[size_t(labels["beta2"])] == 1 / (v.A * v.X7));
        CHECK(labels.size() == 8);
    }
}

TEST_CASE("bare zig-zag loop weights multiply to one") {
    std::mt19937 rng(41);
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        TorusGraph g = load_fixture_graph(name);
        auto wt = weight_cocycle(g, random_weight_class(g, rng));
        Rat prod = R(1);
        for (const auto& z : g.zigzags()) prod *= alternating_product(z.steps, wt);
        CHECK(prod == R(1));
    }
}

TEST_CASE("gauge invariance of P and the Casimirs") {
    std::mt19937 rng(43);
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        TorusGraph g = load_fixture_graph(name);
        auto wc = load_fixture_weights(name, g.face_count());
        auto eps = fixture_eps(g);
        auto wt = weight_cocycle(g, wc);
        auto k = kasteleyn_matrix(g, wt, eps);
        auto m0 = g.perfect_matching();
        auto p = characteristic_polynomial(g, k, m0, wt, eps);
        auto cas = casimirs(g, wt, eps);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Rat> f(g.vertex_count());
            for (auto& v : f) v = random_weight(rng);
            EdgeCocycle<Rat> wt2 = wt;
            for (size_t e = 0; e < g.edge_count(); ++e)
                wt2[e] = wt[e] * f[size_t(g.edge_white(int(e)))] /
                         f[size_t(g.edge_black(int(e)))];
            auto k2 = kasteleyn_matrix(g, wt2, eps);
            CHECK(characteristic_polynomial(g, k2, m0, wt2, eps) == p);
            CHECK(casimirs(g, wt2, eps) == cas);
        }
    }
}

TEST_CASE("P is the signed sum over matchings with class-constant signs") {
    for (const char* name : {"square", "hexagon", "square_octagon"}) {
        TorusGraph g = load_fixture_graph(name);
        auto wc = load_fixture_weights(name, g.face_count());
        auto wt = weight_cocycle(g, wc);
        auto eps = fixture_eps(g);
        auto k = kasteleyn_matrix(g, wt, eps);
        auto m0 = g.perfect_matching();
        auto p = characteristic_polynomial(g, k, m0, wt, eps);

        Rat m0_weight = R(1);
        Vec2 m0_class{0, 0};
        for (int e : m0) {
            m0_weight *= wt[size_t(e)];
            m0_class += g.hom(e);
        }
        // Group matchings by homology class relative to m0; P's coefficient
        // must be a +-1 multiple of the class sum of weight-class values.
        std::map<Vec2, Rat> class_sum;
        for (const auto& m : all_matchings(g)) {
            Rat w = R(1);
            Vec2 h{0, 0};
            for (int e : m) {
                w *= wt[size_t(e)];
                h += g.hom(e);
            }
            class_sum[h - m0_class] += w / m0_weight;
        }
        size_t terms = 0;
        for (const auto& [h, s] : class_sum) {
            Rat c = p.coeff(h);
            if (s == 0) {
                CHECK(c == 0);
                continue;
            }
            ++terms;
            CHECK((c == s || c == -s));
        }
        CHECK(terms == p.term_count());
        // The reference matching's own class carries sign +1.
        CHECK(p.coeff({0, 0}) == class_sum[{0, 0}]);
        CHECK(class_sum[{0, 0}] != 0);
    }
}
