#pragma once

#include <map>
#include <vector>

#include "dimer/graph.hpp"
#include "dimer/lattice.hpp"

namespace dimer {

// Integer divisor supported on the points at infinity nu(alpha), stored by
// zig-zag id.
using DivisorZ = std::map<int, int64_t>;

inline DivisorZ operator+(DivisorZ a, const DivisorZ& b) {
    for (const auto& [k, v] : b) {
        a[k] += v;
        if (a[k] == 0) a.erase(k);
    }
    return a;
}
inline DivisorZ operator-(DivisorZ a, const DivisorZ& b) {
    for (const auto& [k, v] : b) {
        a[k] -= v;
        if (a[k] == 0) a.erase(k);
    }
    return a;
}
inline int64_t coeff_of(const DivisorZ& d, int zz) {
    auto it = d.find(zz);
    return it == d.end() ? 0 : it->second;
}

// Discrete and rational Abel maps. d is normalized to 0 on the root face;
// D is normalized to 0 on the root face as well, which matches the worked
// examples (only differences enter any downstream formula).
struct AbelData {
    std::vector<DivisorZ> vertex_d;
    std::vector<DivisorZ> face_d;
    std::vector<RationalDivisor> vertex_D;
};

// Propagate the local corner rules d(b) = d(f) + nu(alpha),
// d(w) = d(f) - nu(alpha) over the universal cover by BFS.
AbelData discrete_abel(const TorusGraph& g, const NewtonPolygon& fan);

// Small Newton polygon N_bw: the polygon of the divisor
//   Y_bw = D_N - D(w) + D(b) - sum_{alpha through b} D_rho / |E_rho|,
// cross-validated against the strip rule computed from the discrete Abel map.
struct SmallPolygon {
    RationalDivisor y;
    std::vector<Vec2> points;  // lattice points, lex sorted
};
SmallPolygon small_polygon(const TorusGraph& g, const NewtonPolygon& fan,
                           const AbelData& abel, int b, int w);

// Zig-zag paths contributing a type-2 row for the pair (b, w), with
// multiplicities; evaluates the divisor
//   -D_N|C + d(w) - d(b) + sum_alpha nu(alpha) + floor(Y_bw)|C
// and cross-checks against the per-ray strip cases (and, for polygons with
// primitive sides, against the membership shortcut).
std::vector<std::pair<int, int64_t>> type2_zigzags(const TorusGraph& g,
                                                   const NewtonPolygon& fan,
                                                   const AbelData& abel, int b, int w,
                                                   const RationalDivisor& y);

}  // namespace dimer
