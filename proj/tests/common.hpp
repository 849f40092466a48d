#pragma once

#include <map>
#include <random>
#include <string>

#include "dimer/io.hpp"

namespace dimer::test {

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

inline TorusGraph load_fixture_graph(const std::string& name) {
    return TorusGraph::build(io::parse_graph(io::load_file(fixture_path(name + ".json"))));
}

inline WeightClass<Rat> load_fixture_weights(const std::string& name, size_t nfaces) {
    return io::parse_weights(io::load_file(fixture_path(name + "_weights.json")), nfaces);
}

inline Rat R(int64_t num, int64_t den = 1) { return Rat(num) / Rat(den); }

// Parameters of the worked examples, as symbols of the corresponding figures.
// For the square-octagon the weight fixture stores face products of the drawn
// cocycle; these are the values of the figure's symbols behind it.
struct SquareParams {
    Rat X1 = R(2), X2 = R(3), X3 = R(5), A = R(7), B = R(11);
};
struct HexagonParams {
    Rat X1 = R(2), X2 = R(5, 2), X3 = R(3, 2), X4 = R(5, 3), A = R(7, 4), B = R(3);
};
struct SqOctParams {
    Rat X1 = R(2), X2 = R(3, 2), X3 = R(5, 4), X4 = R(7, 4), X5 = R(1, 2),
        X6 = R(5, 2), X7 = R(3), A = R(5, 3), B = R(7, 5);
};

// Expected Casimirs by path label, from the closed-form expressions of the
// worked examples evaluated at the fixture parameters.
inline std::map<std::string, Rat> square_casimirs(const SquareParams& v = {}) {
    return {{"alpha", -v.B / (v.A * v.X1)},
            {"beta", -1 / (v.A * v.B * v.X2)},
            {"gamma", -v.A * v.X1 * v.X2 * v.X3 / v.B},
            {"delta", -v.A * v.B / v.X3}};
}
inline std::map<std::string, Rat> hexagon_casimirs(const HexagonParams& v = {}) {
    return {{"alpha", -v.B * v.B * v.X1 * v.X2 * v.X4 / v.A},
            {"beta", -v.X3 / (v.A * v.B * v.B * v.B * v.X1 * v.X1 * v.X4)},
            {"gamma", -v.A * v.A * v.B * v.X1 / (v.X2 * v.X3)}};
}
inline std::map<std::string, Rat> sqoct_casimirs(const SqOctParams& v = {}) {
    return {{"alpha1", v.X1 * v.X3 * v.X7 * v.B},
            {"alpha2", v.B * v.X2 * v.X3 * v.X4 * v.X6 * v.X7 / (v.X1 * v.X5)},
            {"beta1", v.X2 / (v.A * v.X1 * v.X5)},
            {"beta2", 1 / (v.A * v.X7)},
            {"gamma1", v.X5 / (v.B * v.X1 * v.X3)},
            {"gamma2", v.X6 / v.B},
            {"delta1", v.A * v.X1 / (v.X2 * v.X6)},
            {"delta2", v.A * v.X1 * v.X5 / (v.X2 * v.X3 * v.X4 * v.X6 * v.X7)}};
}

// Identify zig-zag ids by their exact Casimir values.
inline std::map<std::string, int> label_zigzags(const TorusGraph& g,
                                                const std::vector<Rat>& cas,
                                                const std::map<std::string, Rat>& expected) {
    std::map<std::string, int> out;
    for (const auto& [label, value] : expected) {
        int found = -1;
        for (size_t i = 0; i < cas.size(); ++i)
            if (cas[i] == value) {
                require(found == -1, "TestSetup", "ambiguous Casimir value for " + label);
                found = int(i);
            }
        require(found != -1, "TestSetup", "no zig-zag with the Casimir of " + label);
        out[label] = found;
    }
    require(out.size() == g.zigzags().size(), "TestSetup", "unlabeled zig-zag remains");
    return out;
}

inline SignCocycle fixture_eps(const TorusGraph& g) {
    if (g.spec().eps.empty()) return kasteleyn_sign(g);
    SignCocycle eps(g.edge_count(), 1);
    for (const auto& [id, s] : g.spec().eps) eps[size_t(g.edge_index(id))] = s;
    return eps;
}

// Random nonzero rationals in [1/4, 4] with moderate denominators.
inline Rat random_weight(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(1, 16), den(1, 16);
    Rat r = Rat(num(rng)) / Rat(den(rng));
    if (r < R(1, 4)) r = R(1, 4) + r;
    if (r > R(4)) r = R(4);
    return r;
}

inline WeightClass<Rat> random_weight_class(const TorusGraph& g, std::mt19937& rng) {
    WeightClass<Rat> wc;
    for (size_t f = 0; f < g.face_count(); ++f)
        if (int(f) != g.root_face()) wc.face_weights[int(f)] = random_weight(rng);
    wc.A = random_weight(rng);
    wc.B = random_weight(rng);
    return wc;
}

// All perfect matchings, each as one edge per white vertex (white order).
inline void enumerate_matchings(const TorusGraph& g, size_t wi, std::vector<int>& cur,
                                std::vector<char>& used,
                                std::vector<std::vector<int>>& out) {
    if (wi == g.whites().size()) {
        out.push_back(cur);
        return;
    }
    int w = g.whites()[wi];
    for (int e : g.edges_at(w)) {
        int b = g.edge_black(e);
        if (used[size_t(b)]) continue;
        used[size_t(b)] = 1;
        cur.push_back(e);
        enumerate_matchings(g, wi + 1, cur, used, out);
        cur.pop_back();
        used[size_t(b)] = 0;
    }
}

inline std::vector<std::vector<int>> all_matchings(const TorusGraph& g) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<char> used(g.vertex_count(), 0);
    enumerate_matchings(g, 0, cur, used, out);
    return out;
}

}  // namespace dimer::test
