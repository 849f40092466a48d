#pragma once

#include <map>
#include <vector>

#include "dimer/graph.hpp"
#include "dimer/laurent_matrix.hpp"

namespace dimer {

// +-1 per edge, satisfying the face condition: the product over a face with
// 2k sides is -1 for k even and +1 for k odd.
using SignCocycle = std::vector<int>;

bool sign_face_conditions_hold(const TorusGraph& g, const SignCocycle& eps);

// Solve for a Kasteleyn sign with prescribed values on the homology generator
// cycles (defaults +1). When the graph carries no a/b cycles the homology
// values are left free.
SignCocycle kasteleyn_sign(const TorusGraph& g, int a_value = 1, int b_value = 1);

// True when eps1/eps2 is a coboundary, i.e. the two signs agree on every loop.
bool signs_coboundary_equivalent(const TorusGraph& g, const SignCocycle& a,
                                 const SignCocycle& b);

// Face weights with one face omitted (its weight is implied by the relation
// that all face weights multiply to 1), plus the two monodromies.
template <typename S>
struct WeightClass {
    std::map<int, S> face_weights;  // face index -> X_f, exactly one face absent
    S A = ScalarOps<S>::one();
    S B = ScalarOps<S>::one();

    int omitted_face(size_t nfaces) const {
        int missing = -1;
        for (size_t f = 0; f < nfaces; ++f) {
            if (face_weights.count(int(f))) continue;
            require(missing == -1, "InconsistentClass", "more than one face weight omitted");
            missing = int(f);
        }
        require(missing != -1, "InconsistentClass", "no face weight omitted");
        return missing;
    }

    // X of face f, with the omitted face's value computed from the product rule.
    S face_value(int f, size_t nfaces) const {
        auto it = face_weights.find(f);
        if (it != face_weights.end()) return it->second;
        require(f == omitted_face(nfaces), "InconsistentClass", "face weight missing");
        S prod = ScalarOps<S>::one();
        for (const auto& [g, x] : face_weights) {
            require(!ScalarOps<S>::is_zero(x), "InconsistentClass", "zero face weight");
            prod *= x;
        }
        return ScalarOps<S>::inv(prod);
    }
};

template <typename S>
using EdgeCocycle = std::vector<S>;  // one value per edge, representing [wt]

// Representative cocycle of a weight class: gauge-fixed to 1 on a spanning
// tree, faces solved by peeling a dual tree, monodromies corrected by a
// character of the homology offsets.
template <typename S>
EdgeCocycle<S> weight_cocycle(const TorusGraph& g, const WeightClass<S>& wc);

// Kasteleyn matrix: rows indexed by white vertices, columns by black, entries
// summed over parallel edges.
template <typename S>
LaurentMatrix<S> kasteleyn_matrix(const TorusGraph& g, const EdgeCocycle<S>& wt,
                                  const SignCocycle& eps) {
    LaurentMatrix<S> k(g.whites().size(), g.blacks().size());
    for (size_t e = 0; e < g.edge_count(); ++e) {
        int row = g.white_position(g.edge_white(int(e)));
        int col = g.black_position(g.edge_black(int(e)));
        S c = wt[e] * ScalarOps<S>::from_int(eps[e]);
        k.at(row, col) += LaurentPoly<S>::monomial(g.hom(int(e)), c);
    }
    return k;
}

// det K divided by the signed monomial of the reference matching, so the
// matching's own term has coefficient +1. `m0` holds one edge per white
// vertex in white order.
template <typename S>
LaurentPoly<S> characteristic_polynomial(const TorusGraph& g, const LaurentMatrix<S>& k,
                                         const std::vector<int>& m0,
                                         const EdgeCocycle<S>& wt, const SignCocycle& eps) {
    require(m0.size() == g.whites().size(), "ShapeMismatch", "matching size mismatch");
    S c = ScalarOps<S>::one();
    Vec2 shift{0, 0};
    std::vector<int> perm(m0.size());
    for (size_t wi = 0; wi < m0.size(); ++wi) {
        int e = m0[wi];
        c *= wt[e] * ScalarOps<S>::from_int(eps[e]);
        shift += g.hom(e);
        perm[wi] = g.black_position(g.edge_black(e));
    }
    // Parity of the matching permutation.
    std::vector<char> seen(perm.size(), 0);
    int sgn = 1;
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        size_t len = 0, j = i;
        while (!seen[j]) { seen[j] = 1; j = size_t(perm[j]); ++len; }
        if (len % 2 == 0) sgn = -sgn;
    }
    LaurentPoly<S> d = laurent_det(k);
    require(!d.is_zero(), "ZeroDeterminant", "det K vanishes; weights are not generic");
    return d.shifted(-shift).scaled(ScalarOps<S>::inv(c * ScalarOps<S>::from_int(sgn)));
}

// Casimir of each zig-zag path: (-1)^d [eps]([alpha]) [wt]([alpha]) with d the
// number of white vertices on the path.
template <typename S>
std::vector<S> casimirs(const TorusGraph& g, const EdgeCocycle<S>& wt,
                        const SignCocycle& eps) {
    std::vector<S> out;
    for (const auto& z : g.zigzags()) {
        S acc = ScalarOps<S>::one();
        for (const auto& s : z.steps) {
            S v = wt[s.edge] * ScalarOps<S>::from_int(eps[s.edge]);
            acc *= s.forward ? v : ScalarOps<S>::inv(v);
        }
        size_t d = z.steps.size() / 2;
        if (d % 2 == 1) acc = -acc;
        out.push_back(acc);
    }
    return out;
}

// ---- implementation ----

template <typename S>
EdgeCocycle<S> weight_cocycle(const TorusGraph& g, const WeightClass<S>& wc) {
    using Ops = ScalarOps<S>;
    const size_t ne = g.edge_count(), nf = g.face_count();

    // Validate the class: product of all face values must be 1 by
    // construction of the omitted face; entries nonzero.
    for (const auto& [f, x] : wc.face_weights)
        require(!Ops::is_zero(x), "InconsistentClass", "zero face weight");
    (void)wc.omitted_face(nf);
    require(g.has_cycles(), "InconsistentClass",
            "graph spec carries no homology generator cycles for A, B");

    // Spanning tree of the graph; wt = 1 on tree edges.
    std::vector<char> in_tree(ne, 0), seen(g.vertex_count(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int e : g.edges_at(u)) {
            int other = g.edge_black(e) == u ? g.edge_white(e) : g.edge_black(e);
            if (seen[other]) continue;
            seen[other] = 1;
            in_tree[e] = 1;
            stack.push_back(other);
        }
    }

    // Dual BFS tree over faces through non-tree edges.
    std::vector<int> parent_edge(nf, -1), order;
    std::vector<char> fseen(nf, 0);
    std::vector<int> fq{g.root_face()};
    fseen[g.root_face()] = 1;
    while (!fq.empty()) {
        int f = fq.front();
        fq.erase(fq.begin());
        order.push_back(f);
        for (const auto& s : g.faces()[f]) {
            if (in_tree[s.edge]) continue;
            auto [ff, fb] = g.faces_of_edge(s.edge);
            int other = (ff == f) ? fb : ff;
            if (ff != f && fb != f) continue;
            if (fseen[other] || other == f) continue;
            fseen[other] = 1;
            parent_edge[other] = s.edge;
            fq.push_back(other);
        }
    }
    for (size_t f = 0; f < nf; ++f)
        require(fseen[f], "InconsistentClass", "dual graph not connected through non-tree edges");

    EdgeCocycle<S> wt(ne, Ops::one());
    // Peel faces leaves-first; each face's parent edge is its fresh unknown.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int f = *it;
        if (f == g.root_face()) continue;
        int pe = parent_edge[f];
        S target = wc.face_value(f, nf);
        wt[pe] = Ops::one();
        S prod = alternating_product(g.faces()[f], wt);
        int expo = 0;
        for (const auto& s : g.faces()[f])
            if (s.edge == pe) expo += s.forward ? 1 : -1;
        require(expo == 1 || expo == -1, "InconsistentClass",
                "parent edge appears twice in its face");
        S fix = target * Ops::inv(prod);
        wt[pe] = (expo == 1) ? fix : Ops::inv(fix);
    }
    {
        S prod = alternating_product(g.faces()[g.root_face()], wt);
        S want = wc.face_value(g.root_face(), nf);
        require(Ops::exact ? prod == want
                           : Ops::abs(prod - want) <= 1e-9 * (1.0 + Ops::abs(want)),
                "InconsistentClass", "face weights are inconsistent (product != 1)");
    }

    // Monodromy correction by the character lambda^{hom.x} mu^{hom.y}.
    S a0 = alternating_product(g.cycle_a(), wt);
    S b0 = alternating_product(g.cycle_b(), wt);
    Vec2 ha = walk_class(g.cycle_a(), g), hb = walk_class(g.cycle_b(), g);
    int64_t dd = det(ha, hb);
    require(dd == 1 || dd == -1, "InconsistentClass",
            "a/b cycles do not generate homology (det " + std::to_string(dd) + ")");
    S u = wc.A * Ops::inv(a0), v = wc.B * Ops::inv(b0);
    // Solve lambda^ha mu^hb componentwise with the integer inverse of [ha; hb].
    S lam = Ops::pow(u, dd * hb.y) * Ops::pow(v, -dd * ha.y);
    S mu = Ops::pow(u, -dd * hb.x) * Ops::pow(v, dd * ha.x);
    for (size_t e = 0; e < ne; ++e) {
        Vec2 h = g.hom(int(e));
        wt[e] *= Ops::pow(lam, h.x) * Ops::pow(mu, h.y);
    }
    return wt;
}

}  // namespace dimer
