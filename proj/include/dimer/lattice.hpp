#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "dimer/error.hpp"
#include "dimer/laurent.hpp"
#include "dimer/scalar.hpp"
#include "dimer/vec2.hpp"

namespace dimer {

// One ray of the normal fan. `dir` is the primitive counterclockwise edge
// direction of the polygon side E_rho, `u` the primitive inward normal, `a`
// the offset with E_rho on {<m,u> = -a}, and `lattice_len` the number of
// primitive segments in E_rho.
struct Ray {
    Vec2 dir;
    Vec2 u;
    int64_t a = 0;
    int64_t lattice_len = 1;
};

// Convex integral polygon with its normal fan data.
class NewtonPolygon {
public:
    NewtonPolygon() = default;

    const std::vector<Vec2>& vertices() const { return verts_; }
    const std::vector<Ray>& rays() const { return rays_; }
    size_t ray_count() const { return rays_.size(); }

    // Ray whose side has counterclockwise direction `dir` (primitive).
    int ray_of_direction(Vec2 dir) const {
        for (size_t i = 0; i < rays_.size(); ++i)
            if (rays_[i].dir == dir) return int(i);
        fail("UnknownRay", "no polygon side with direction " + dir.str());
    }

    bool contains(Vec2 m) const {
        for (const auto& r : rays_)
            if (dot(m, r.u) < -r.a) return false;
        return true;
    }
    bool strictly_contains(Vec2 m) const {
        for (const auto& r : rays_)
            if (dot(m, r.u) <= -r.a) return false;
        return true;
    }

    std::vector<Vec2> boundary_lattice_points() const;
    std::vector<Vec2> interior_lattice_points() const;
    std::vector<Vec2> lattice_points() const;
    int64_t genus() const { return int64_t(interior_lattice_points().size()); }

    // Twice the polygon area, from the shoelace formula over the vertices.
    int64_t twice_area() const {
        int64_t acc = 0;
        for (size_t i = 0; i < verts_.size(); ++i)
            acc += det(verts_[i], verts_[(i + 1) % verts_.size()]);
        return acc;
    }

    NewtonPolygon translated(Vec2 t) const {
        NewtonPolygon p = *this;
        for (auto& v : p.verts_) v += t;
        for (auto& r : p.rays_) r.a = -dot(p_vertex_on(p, r), r.u);
        return p;
    }

    // Build from the multiset of zig-zag homology classes: the polygon whose
    // counterclockwise side vectors are exactly these, anchored so the
    // lexicographically minimal vertex is at the origin.
    static NewtonPolygon from_edge_vectors(const std::vector<Vec2>& classes);

    // Build from a set of exponents (the support of a Laurent polynomial);
    // keeps the set's own position.
    static NewtonPolygon from_support(const std::vector<Vec2>& points);

private:
    static Vec2 p_vertex_on(const NewtonPolygon& p, const Ray& r) {
        for (auto v : p.verts_)
            if (dot(v, r.u) == p_min_dot(p, r.u)) return v;
        return p.verts_.front();
    }
    static int64_t p_min_dot(const NewtonPolygon& p, Vec2 u) {
        int64_t m = dot(p.verts_.front(), u);
        for (auto v : p.verts_) m = std::min(m, dot(v, u));
        return m;
    }
    void finalize_from_vertices();

    std::vector<Vec2> verts_;  // counterclockwise
    std::vector<Ray> rays_;    // rays_[i] is the side verts_[i] -> verts_[i+1]
};

// Q-divisor at infinity: one rational coefficient per ray of a fixed fan.
struct RationalDivisor {
    std::vector<Rat> coeff;

    explicit RationalDivisor(size_t nrays = 0) : coeff(nrays, Rat(0)) {}

    friend RationalDivisor operator+(RationalDivisor a, const RationalDivisor& b) {
        require(a.coeff.size() == b.coeff.size(), "ShapeMismatch", "divisor fan mismatch");
        for (size_t i = 0; i < a.coeff.size(); ++i) a.coeff[i] += b.coeff[i];
        return a;
    }
    friend RationalDivisor operator-(RationalDivisor a, const RationalDivisor& b) {
        require(a.coeff.size() == b.coeff.size(), "ShapeMismatch", "divisor fan mismatch");
        for (size_t i = 0; i < a.coeff.size(); ++i) a.coeff[i] -= b.coeff[i];
        return a;
    }
    RationalDivisor operator-() const {
        RationalDivisor r(coeff.size());
        for (size_t i = 0; i < coeff.size(); ++i) r.coeff[i] = -coeff[i];
        return r;
    }
    friend bool operator==(const RationalDivisor& a, const RationalDivisor& b) {
        return a.coeff == b.coeff;
    }
};

inline RationalDivisor divisor_of_polygon(const NewtonPolygon& n) {
    RationalDivisor d(n.ray_count());
    for (size_t i = 0; i < n.ray_count(); ++i) d.coeff[i] = Rat(n.rays()[i].a);
    return d;
}

// Coefficientwise floor.
inline RationalDivisor floor_divisor(const RationalDivisor& d) {
    RationalDivisor r(d.coeff.size());
    using Int = boost::multiprecision::mpz_int;
    for (size_t i = 0; i < d.coeff.size(); ++i) {
        const Rat& q = d.coeff[i];
        Int num = boost::multiprecision::numerator(q);
        Int den = boost::multiprecision::denominator(q);
        Int fl = num / den;  // truncates toward zero
        if (num < 0 && fl * den != num) fl -= 1;
        r.coeff[i] = Rat(fl);
    }
    return r;
}

// div of the character chi^m as a divisor at infinity: sum <m,u_rho> D_rho.
inline RationalDivisor character_divisor(const NewtonPolygon& fan, Vec2 m) {
    RationalDivisor d(fan.ray_count());
    for (size_t i = 0; i < fan.ray_count(); ++i) d.coeff[i] = Rat(dot(m, fan.rays()[i].u));
    return d;
}

// Rational polygon cut out by {<m, u_rho> >= -b_rho} over the rays of `fan`.
class RationalPolygon {
public:
    RationalPolygon(const NewtonPolygon* fan, RationalDivisor d)
        : fan_(fan), d_(std::move(d)) {
        require(d_.coeff.size() == fan_->ray_count(), "ShapeMismatch",
                "divisor does not match fan");
    }

    const RationalDivisor& divisor() const { return d_; }
    const NewtonPolygon& fan() const { return *fan_; }

    bool contains(Vec2 m) const {
        for (size_t i = 0; i < fan_->ray_count(); ++i)
            if (Rat(dot(m, fan_->rays()[i].u)) < -d_.coeff[i]) return false;
        return true;
    }

    // All integral points, lexicographically sorted. Empty polygons give an
    // empty list.
    std::vector<Vec2> lattice_points() const;

    // Integral points minimizing <., u_rho> (the set N^rho). Errors if the
    // polygon has no lattice points at all.
    std::vector<Vec2> edge_minimizers(size_t ray) const;

private:
    std::vector<std::pair<Rat, Rat>> feasible_vertices() const;

    const NewtonPolygon* fan_;
    RationalDivisor d_;
};

inline RationalPolygon divisor_to_polygon(const RationalDivisor& d, const NewtonPolygon& fan) {
    return RationalPolygon(&fan, d);
}

// Unimodular basis (x1, x2) of the exponent lattice adapted to a ray:
// x1 is the zig-zag class direction (so <x1,u> = 0) and <x2,u> = 1. The
// choice of x2 minimizes (|x|, |y|) lexicographically, which reproduces the
// bases used in the worked examples.
struct RayBasis {
    Vec2 x1;
    Vec2 x2;
    Vec2 u;

    // chi^m = x1^b x2^c with c = <m,u>.
    std::pair<int64_t, int64_t> decompose(Vec2 m) const {
        int64_t d12 = det(x1, x2);
        int64_t b = det(m, x2) / d12;
        int64_t c = det(x1, m) / d12;
        return {b, c};
    }
    Vec2 compose(int64_t b, int64_t c) const { return b * x1 + c * x2; }
};

RayBasis ray_basis(Vec2 alpha_class, Vec2 u);

// Leading part of f along a ray: rewrite monomials as x1^b x2^c, return the
// minimal c and the one-variable Laurent polynomial (in x1, stored with
// second exponent 0) of that stratum.
template <typename S>
std::pair<int64_t, LaurentPoly<S>> restrict_to_ray(const LaurentPoly<S>& f,
                                                   const RayBasis& basis) {
    require(!f.is_zero(), "ZeroPolynomial", "ray restriction of the zero polynomial");
    int64_t c0 = f.min_dot(basis.u);
    LaurentPoly<S> lead;
    for (const auto& [e, c] : f.terms()) {
        auto [b, cc] = basis.decompose(e);
        if (cc == c0) lead.add_term({b, 0}, c);
    }
    return {c0, lead};
}

// Stratum of f at x2-order `level` (in the ray basis), as a polynomial in x1.
template <typename S>
LaurentPoly<S> ray_stratum(const LaurentPoly<S>& f, const RayBasis& basis, int64_t level) {
    LaurentPoly<S> out;
    for (const auto& [e, c] : f.terms()) {
        auto [b, cc] = basis.decompose(e);
        if (cc == level) out.add_term({b, 0}, c);
    }
    return out;
}

// Evaluate a one-variable polynomial (exponents (k, 0)) at x.
template <typename S>
S eval_univariate(const LaurentPoly<S>& p, const S& x) {
    S acc = ScalarOps<S>::zero();
    for (const auto& [e, c] : p.terms()) acc += c * ScalarOps<S>::pow(x, e.x);
    return acc;
}

}  // namespace dimer
