#include "dimer/abel.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace dimer {

namespace {

struct CoverKey {
    int kind;  // 0 face, 1 vertex
    int index;
    Vec2 t;
    friend bool operator<(const CoverKey& a, const CoverKey& b) {
        return std::tie(a.kind, a.index, a.t) < std::tie(b.kind, b.index, b.t);
    }
};

}  // namespace

AbelData discrete_abel(const TorusGraph& g, const NewtonPolygon& fan) {
    AbelData out;
    out.vertex_d.assign(g.vertex_count(), {});
    out.face_d.assign(g.face_count(), {});
    std::vector<char> have_vertex(g.vertex_count(), 0), have_face(g.face_count(), 0);

    // Corner incidences seen from the vertex side.
    std::vector<std::vector<std::pair<int, const Corner*>>> at_vertex(g.vertex_count());
    for (size_t f = 0; f < g.face_count(); ++f)
        for (const auto& c : g.face_corners()[f]) at_vertex[c.vertex].push_back({int(f), &c});

    const int64_t window = int64_t(g.face_count() + g.vertex_count()) + 2;
    std::map<CoverKey, DivisorZ> val;
    std::deque<CoverKey> queue;
    CoverKey start{0, g.root_face(), {0, 0}};
    val[start] = {};
    queue.push_back(start);
    size_t targets = 0, want = g.face_count() + g.vertex_count();

    auto visit = [&](const CoverKey& key, DivisorZ d) {
        auto it = val.find(key);
        if (it != val.end()) {
            require(it->second == d, "InconsistentPropagation",
                    "discrete Abel map corner rules are inconsistent");
            return;
        }
        if (std::llabs(key.t.x) > window || std::llabs(key.t.y) > window) return;
        val.emplace(key, std::move(d));
        queue.push_back(key);
    };

    while (!queue.empty()) {
        CoverKey cur = queue.front();
        queue.pop_front();
        const DivisorZ d = val[cur];
        if (cur.t.is_zero()) {
            if (cur.kind == 0 && !have_face[cur.index]) {
                have_face[cur.index] = 1;
                out.face_d[cur.index] = d;
                ++targets;
            } else if (cur.kind == 1 && !have_vertex[cur.index]) {
                have_vertex[cur.index] = 1;
                out.vertex_d[cur.index] = d;
                ++targets;
            }
        }
        if (cur.kind == 0) {
            for (const auto& c : g.face_corners()[size_t(cur.index)]) {
                DivisorZ dv = d;
                dv[c.zigzag] += g.is_black(c.vertex) ? 1 : -1;
                if (dv[c.zigzag] == 0) dv.erase(c.zigzag);
                visit({1, c.vertex, cur.t + c.translate}, std::move(dv));
            }
        } else {
            for (const auto& [f, c] : at_vertex[size_t(cur.index)]) {
                DivisorZ df = d;
                df[c->zigzag] -= g.is_black(c->vertex) ? 1 : -1;
                if (df[c->zigzag] == 0) df.erase(c->zigzag);
                visit({0, f, cur.t - c->translate}, std::move(df));
            }
        }
    }
    require(targets == want, "InconsistentPropagation",
            "universal-cover propagation did not reach every vertex and face");

    // Rational Abel map by the per-edge rule
    //   D(w) - D(b) = -D_sigma/|E_sigma| - D_rho/|E_rho| - div phi(e),
    // an independent route from the corner propagation above.
    out.vertex_D.assign(g.vertex_count(), RationalDivisor(fan.ray_count()));
    std::vector<char> seen(g.vertex_count(), 0);
    std::deque<int> vq{0};
    seen[0] = 1;
    auto edge_drop = [&](int e) {
        auto [z1, z2] = g.zigzags_of_edge(e);
        RationalDivisor d(fan.ray_count());
        for (int zz : {z1, z2}) {
            int ray = g.zigzags()[zz].ray;
            d.coeff[size_t(ray)] += Rat(1) / Rat(fan.rays()[size_t(ray)].lattice_len);
        }
        return d;
    };
    while (!vq.empty()) {
        int u = vq.front();
        vq.pop_front();
        for (int e : g.edges_at(u)) {
            int b = g.edge_black(e), w = g.edge_white(e);
            RationalDivisor dw =
                out.vertex_D[size_t(b)] - edge_drop(e) - character_divisor(fan, g.hom(e));
            int other = (u == b) ? w : b;
            RationalDivisor expect_other =
                (other == w) ? dw
                             : out.vertex_D[size_t(w)] + edge_drop(e) +
                                   character_divisor(fan, g.hom(e));
            if (!seen[other]) {
                seen[other] = 1;
                out.vertex_D[size_t(other)] = expect_other;
                vq.push_back(other);
            } else {
                const RationalDivisor& have = out.vertex_D[size_t(other)];
                require(have == expect_other, "InconsistentPropagation",
                        "rational Abel map edge rules are inconsistent");
            }
        }
    }

    // Normalize D to 0 on the root face via a corner of that face.
    {
        const Corner& c = g.face_corners()[size_t(g.root_face())].front();
        int ray = g.zigzags()[c.zigzag].ray;
        Rat step = Rat(1) / Rat(fan.rays()[size_t(ray)].lattice_len);
        RationalDivisor droot = out.vertex_D[size_t(c.vertex)];
        if (g.is_black(c.vertex))
            droot.coeff[size_t(ray)] -= step;
        else
            droot.coeff[size_t(ray)] += step;
        for (auto& dv : out.vertex_D) dv = dv - droot;
    }
    return out;
}

SmallPolygon small_polygon(const TorusGraph& g, const NewtonPolygon& fan,
                           const AbelData& abel, int b, int w) {
    require(g.is_black(b) && !g.is_black(w), "ShapeMismatch",
            "small polygon wants a black and a white vertex");
    RationalDivisor y = divisor_of_polygon(fan) - abel.vertex_D[size_t(w)] +
                        abel.vertex_D[size_t(b)];
    std::vector<char> b_on_ray(fan.ray_count(), 0);
    for (int zz : g.zigzags_through(b)) {
        int ray = g.zigzags()[zz].ray;
        y.coeff[size_t(ray)] -= Rat(1) / Rat(fan.rays()[size_t(ray)].lattice_len);
        b_on_ray[size_t(ray)] = 1;
    }

    // Strip rule for the same boundary lines, computed from the discrete Abel
    // map: the strips in direction rho are the level sets of the D_rho
    // coefficient, and the base strip is read off the case analysis on b.
    for (size_t ray = 0; ray < fan.ray_count(); ++ray) {
        Rat k = Rat(fan.rays()[ray].lattice_len);
        int64_t diff = 0;  // sum over Z_rho of d(b) - d(w) coefficients
        for (int zz : g.ray_members(int(ray)))
            diff += coeff_of(abel.vertex_d[size_t(b)], zz) -
                    coeff_of(abel.vertex_d[size_t(w)], zz);
        Rat strip = Rat(fan.rays()[ray].a) + Rat(diff) / k -
                    (b_on_ray[ray] ? Rat(1) / k : Rat(0));
        require(strip == y.coeff[ray], "StripMismatch",
                "strip rule and divisor formula disagree for ray " + std::to_string(ray));
    }

    SmallPolygon sp{y, divisor_to_polygon(y, fan).lattice_points()};
    return sp;
}

std::vector<std::pair<int, int64_t>> type2_zigzags(const TorusGraph& g,
                                                   const NewtonPolygon& fan,
                                                   const AbelData& abel, int b, int w,
                                                   const RationalDivisor& y) {
    const size_t nz = g.zigzags().size();
    RationalDivisor fl = floor_divisor(y);

    // Route 1: evaluate the divisor at infinity coefficientwise.
    std::vector<int64_t> acc(nz, 0);
    for (size_t zz = 0; zz < nz; ++zz) {
        int ray = g.zigzags()[zz].ray;
        auto num = boost::multiprecision::numerator(fl.coeff[size_t(ray)]);
        acc[zz] += 1;                                        // sum_alpha nu(alpha)
        acc[zz] -= fan.rays()[size_t(ray)].a;                // -D_N | C
        acc[zz] += num.convert_to<int64_t>();                // floor(Y) | C
        acc[zz] += coeff_of(abel.vertex_d[size_t(w)], int(zz)) -
                   coeff_of(abel.vertex_d[size_t(b)], int(zz));  // d(w) - d(b)
    }
    bool multiplicities = false;
    for (size_t zz = 0; zz < nz; ++zz) {
        require(acc[zz] >= 0, "NegativeCoefficient",
                "type-2 divisor has a negative coefficient at zig-zag " + std::to_string(zz));
        if (acc[zz] > 1) multiplicities = true;
    }

    // Route 2: the per-ray strip cases, from the d-coefficients alone.
    // Applies in the generic (multiplicity-free) situation.
    if (!multiplicities) {
        auto through = g.zigzags_through(b);
        for (size_t ray = 0; ray < fan.ray_count(); ++ray) {
            auto members = g.ray_members(int(ray));
            std::vector<int64_t> c;
            for (int zz : members)
                c.push_back(coeff_of(abel.vertex_d[size_t(w)], zz) -
                            coeff_of(abel.vertex_d[size_t(b)], zz));
            int star = -1;
            for (size_t i = 0; i < members.size(); ++i)
                if (std::count(through.begin(), through.end(), members[i])) star = int(i);
            std::set<int> expect;
            if (star >= 0) {
                int64_t n = c[size_t(star)] + 1;
                for (size_t i = 0; i < members.size(); ++i) {
                    int64_t ci = c[i] - n;
                    require(ci == 0 || ci == -1, "StripMismatch",
                            "strip case analysis out of range on ray " + std::to_string(ray));
                    if (ci == 0) expect.insert(members[i]);
                }
            } else {
                int64_t mx = *std::max_element(c.begin(), c.end());
                int64_t mn = *std::min_element(c.begin(), c.end());
                require(mx - mn <= 1, "StripMismatch",
                        "strip case analysis out of range on ray " + std::to_string(ray));
                if (mx == mn) {
                    expect.insert(members.begin(), members.end());
                } else {
                    for (size_t i = 0; i < members.size(); ++i)
                        if (c[i] == mx) expect.insert(members[i]);
                }
            }
            std::set<int> got;
            for (int zz : members)
                if (acc[size_t(zz)] == 1) got.insert(zz);
            require(expect == got, "StripMismatch",
                    "strip cases disagree with the divisor evaluation on ray " +
                        std::to_string(ray));
        }

        // Shortcut for polygons with primitive sides: the contributing
        // zig-zags are exactly those avoiding b.
        bool simple = true;
        for (const auto& r : fan.rays()) simple = simple && r.lattice_len == 1;
        if (simple) {
            for (size_t zz = 0; zz < nz; ++zz) {
                bool avoid = !std::count(through.begin(), through.end(), int(zz));
                require((acc[zz] == 1) == avoid, "StripMismatch",
                        "primitive-side shortcut disagrees at zig-zag " + std::to_string(zz));
            }
        }
    }

    std::vector<std::pair<int, int64_t>> out;
    for (size_t zz = 0; zz < nz; ++zz)
        if (acc[zz] > 0) out.push_back({int(zz), acc[zz]});
    return out;
}

}  // namespace dimer
