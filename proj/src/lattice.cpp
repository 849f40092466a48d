#include "dimer/lattice.hpp"

#include <cmath>

namespace dimer {

namespace {

// Counterclockwise angular order starting just above the positive x-axis.
bool angle_less(Vec2 a, Vec2 b) {
    auto half = [](Vec2 v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    int64_t d = det(a, b);
    if (d != 0) return d > 0;
    return content(a) < content(b);
}

}  // namespace

void NewtonPolygon::finalize_from_vertices() {
    require(verts_.size() >= 3, "DegenerateNewton", "polygon has fewer than 3 vertices");
    rays_.clear();
    for (size_t i = 0; i < verts_.size(); ++i) {
        Vec2 a = verts_[i], b = verts_[(i + 1) % verts_.size()];
        Vec2 side = b - a;
        require(!side.is_zero(), "DegenerateNewton", "repeated polygon vertex");
        Ray r;
        r.dir = primitive_of(side);
        r.lattice_len = content(side);
        r.u = rot90(r.dir);
        r.a = -dot(a, r.u);
        rays_.push_back(r);
    }
    require(twice_area() > 0, "DegenerateNewton", "polygon has empty interior region");
    for (const auto& r : rays_)
        for (auto v : verts_)
            require(dot(v, r.u) >= -r.a, "DegenerateNewton", "polygon is not convex");
}

NewtonPolygon NewtonPolygon::from_edge_vectors(const std::vector<Vec2>& classes) {
    require(!classes.empty(), "DegenerateNewton", "no zig-zag classes");
    Vec2 total{0, 0};
    for (auto c : classes) {
        require(!c.is_zero(), "DegenerateNewton", "zig-zag class (0,0)");
        total += c;
    }
    require(total.is_zero(), "DegenerateNewton", "zig-zag classes do not sum to zero");

    // Merge parallel same-direction classes into one side per direction.
    std::map<Vec2, int64_t> sides;  // primitive dir -> lattice length
    for (auto c : classes) sides[primitive_of(c)] += content(c);
    std::vector<Vec2> dirs;
    for (const auto& [d, len] : sides) dirs.push_back(d);
    std::sort(dirs.begin(), dirs.end(), angle_less);
    require(dirs.size() >= 3, "DegenerateNewton", "all zig-zag classes parallel");

    NewtonPolygon p;
    Vec2 cur{0, 0};
    for (auto d : dirs) {
        p.verts_.push_back(cur);
        cur += sides[d] * d;
    }
    require(cur.is_zero(), "DegenerateNewton", "side vectors do not close");

    Vec2 lo = *std::min_element(p.verts_.begin(), p.verts_.end());
    for (auto& v : p.verts_) v -= lo;
    p.finalize_from_vertices();
    return p;
}

NewtonPolygon NewtonPolygon::from_support(const std::vector<Vec2>& points) {
    require(!points.empty(), "DegenerateNewton", "empty support");
    std::vector<Vec2> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    require(pts.size() >= 3, "DegenerateNewton", "support has fewer than 3 points");

    // Andrew monotone chain, counterclockwise output.
    auto build = [&](bool lower) {
        std::vector<Vec2> h;
        auto scan = [&](Vec2 q) {
            while (h.size() >= 2 && det(h[h.size() - 1] - h[h.size() - 2], q - h[h.size() - 2]) <= 0)
                h.pop_back();
            h.push_back(q);
        };
        if (lower)
            for (auto q : pts) scan(q);
        else
            for (auto it = pts.rbegin(); it != pts.rend(); ++it) scan(*it);
        return h;
    };
    std::vector<Vec2> lower = build(true), upper = build(false);
    lower.pop_back();
    upper.pop_back();
    NewtonPolygon p;
    p.verts_ = lower;
    p.verts_.insert(p.verts_.end(), upper.begin(), upper.end());
    p.finalize_from_vertices();
    return p;
}

std::vector<Vec2> NewtonPolygon::lattice_points() const {
    RationalPolygon rp(this, divisor_of_polygon(*this));
    return rp.lattice_points();
}

std::vector<Vec2> NewtonPolygon::interior_lattice_points() const {
    std::vector<Vec2> out;
    for (auto m : lattice_points())
        if (strictly_contains(m)) out.push_back(m);
    return out;
}

std::vector<Vec2> NewtonPolygon::boundary_lattice_points() const {
    std::vector<Vec2> out;
    for (auto m : lattice_points())
        if (!strictly_contains(m)) out.push_back(m);
    return out;
}

std::vector<std::pair<Rat, Rat>> RationalPolygon::feasible_vertices() const {
    const auto& rays = fan_->rays();
    std::vector<std::pair<Rat, Rat>> verts;
    for (size_t i = 0; i < rays.size(); ++i) {
        for (size_t j = i + 1; j < rays.size(); ++j) {
            Vec2 u1 = rays[i].u, u2 = rays[j].u;
            int64_t dd = det(u1, u2);
            if (dd == 0) continue;
            // Solve <m,u1> = -b_i, <m,u2> = -b_j.
            Rat b1 = -d_.coeff[i], b2 = -d_.coeff[j];
            Rat x = (b1 * u2.y - b2 * u1.y) / dd;
            Rat y = (b2 * u1.x - b1 * u2.x) / dd;
            bool ok = true;
            for (size_t k = 0; k < rays.size() && ok; ++k) {
                Rat lhs = x * rays[k].u.x + y * rays[k].u.y;
                if (lhs < -d_.coeff[k]) ok = false;
            }
            if (ok) verts.emplace_back(x, y);
        }
    }
    return verts;
}

std::vector<Vec2> RationalPolygon::lattice_points() const {
    auto verts = feasible_vertices();
    if (verts.empty()) return {};
    auto floor_r = [](const Rat& q) {
        using Int = boost::multiprecision::mpz_int;
        Int num = boost::multiprecision::numerator(q);
        Int den = boost::multiprecision::denominator(q);
        Int fl = num / den;
        if (num < 0 && fl * den != num) fl -= 1;
        return fl.convert_to<int64_t>();
    };
    auto ceil_r = [&](const Rat& q) { return -floor_r(-q); };
    Rat xmin = verts[0].first, xmax = verts[0].first;
    Rat ymin = verts[0].second, ymax = verts[0].second;
    for (const auto& [x, y] : verts) {
        xmin = std::min(xmin, x); xmax = std::max(xmax, x);
        ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
    std::vector<Vec2> out;
    for (int64_t x = ceil_r(xmin); x <= floor_r(xmax); ++x)
        for (int64_t y = ceil_r(ymin); y <= floor_r(ymax); ++y)
            if (contains({x, y})) out.push_back({x, y});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Vec2> RationalPolygon::edge_minimizers(size_t ray) const {
    auto pts = lattice_points();
    require(!pts.empty(), "NoLatticePoints", "polygon contains no lattice points");
    Vec2 u = fan_->rays()[ray].u;
    int64_t best = dot(pts[0], u);
    for (auto m : pts) best = std::min(best, dot(m, u));
    std::vector<Vec2> out;
    for (auto m : pts)
        if (dot(m, u) == best) out.push_back(m);
    return out;
}

RayBasis ray_basis(Vec2 alpha_class, Vec2 u) {
    require(is_primitive(alpha_class), "NotPrimitive",
            "zig-zag class " + alpha_class.str() + " is not primitive");
    require(dot(alpha_class, u) == 0, "NotOrthogonal",
            "class " + alpha_class.str() + " not orthogonal to " + u.str());
    require(is_primitive(u), "NotPrimitive", "normal " + u.str() + " is not primitive");

    // Particular solution of <x2,u> = 1 by extended gcd, then scan the
    // one-parameter family x2 + t*alpha for the (|x|,|y|)-lex minimum.
    int64_t ux = u.x, uy = u.y;
    int64_t p = 0, q = 0;
    {
        // extended gcd for ux*p + uy*q = 1
        int64_t a = ux, b = uy, x0 = 1, y0 = 0, x1 = 0, y1 = 1;
        while (b != 0) {
            int64_t t = a / b;
            a -= t * b; std::swap(a, b);
            x0 -= t * x1; std::swap(x0, x1);
            y0 -= t * y1; std::swap(y0, y1);
        }
        require(a == 1 || a == -1, "NotPrimitive", "normal is not primitive");
        p = x0; q = y0;
        if (a == -1) { p = -p; q = -q; }
    }
    Vec2 base{p, q};

    auto key = [](Vec2 v) { return std::make_pair(std::llabs(v.x), std::llabs(v.y)); };
    // Candidate window around the per-coordinate minimizers of |base + t*alpha|.
    std::vector<int64_t> centers{0};
    if (alpha_class.x != 0) centers.push_back(-base.x / alpha_class.x);
    if (alpha_class.y != 0) centers.push_back(-base.y / alpha_class.y);
    Vec2 best = base;
    bool have = false;
    for (int64_t c : centers) {
        for (int64_t t = c - 3; t <= c + 3; ++t) {
            Vec2 cand = base + t * alpha_class;
            if (!have || key(cand) < key(best)) { best = cand; have = true; }
        }
    }
    RayBasis rb{alpha_class, best, u};
    require(std::llabs(det(rb.x1, rb.x2)) == 1, "NotPrimitive", "ray basis not unimodular");
    return rb;
}

}  // namespace dimer
