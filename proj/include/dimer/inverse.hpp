#pragma once

#include <future>
#include <map>
#include <vector>

#include "dimer/abel.hpp"
#include "dimer/graph.hpp"
#include "dimer/kasteleyn.hpp"
#include "dimer/numeric.hpp"
#include "dimer/spectral.hpp"

namespace dimer {

// The homogeneous linear system whose one-dimensional nullspace is V_bw.
// Columns are indexed by the lattice points of the small Newton polygon;
// type-1 rows evaluate the column characters at the divisor points, type-2
// rows are the Casimir rows of the contributing zig-zag paths.
template <typename S>
struct LinearSystemV {
    std::vector<Vec2> columns;
    std::vector<std::vector<S>> rows;
    size_t type1_count = 0;
    std::vector<std::pair<int, int64_t>> type2;
};

// Spectral data as consumed by the inverse map: the curve polynomial (only
// its Newton polygon and boundary strata are used), the divisor points and
// the parameterization of the points at infinity.
template <typename S>
struct InverseInput {
    LaurentPoly<S> P;
    NewtonPolygon polygon;
    std::vector<std::pair<S, S>> divisor;
    std::map<int, InfinityPoint<S>> nu;
};

template <typename S>
struct InverseResult {
    WeightClass<S> weights;
    std::map<int, S> all_faces;        // measured X_f for every face
    std::map<int, LaurentPoly<S>> v;   // V_{b w} per black vertex index
};

struct InverseOptions {
    double tol = 1e-6;  // numeric tolerance for the product-one sanity check
    int jobs = 1;
};

// ---- nullspace solvers ----

inline std::vector<Rat> nullspace_dim1(const std::vector<std::vector<Rat>>& rows_in,
                                       size_t ncols) {
    std::vector<std::vector<Rat>> rows = rows_in;
    std::vector<int> pivot_of_col(ncols, -1);
    size_t rank = 0;
    for (size_t c = 0; c < ncols && rank < rows.size(); ++c) {
        size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        Rat inv = Rat(1) / rows[rank][c];
        for (size_t j = c; j < ncols; ++j) rows[rank][j] *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[rank][j];
        }
        pivot_of_col[c] = int(rank);
        ++rank;
    }
    size_t nullity = ncols - rank;
    require(nullity != 0, "NullspaceDim0",
            "linear system has only the trivial solution; data not in the image of the spectral map");
    require(nullity == 1, "NullspaceDimHigh",
            "nullspace dimension " + std::to_string(nullity) + "; data not generic");
    std::vector<Rat> x(ncols, Rat(0));
    size_t free_col = 0;
    for (size_t c = 0; c < ncols; ++c)
        if (pivot_of_col[c] == -1) free_col = c;
    x[free_col] = Rat(1);
    for (size_t c = 0; c < ncols; ++c) {
        int pr = pivot_of_col[c];
        if (pr == -1) continue;
        x[c] = -rows[size_t(pr)][free_col];
    }
    return x;
}

inline std::vector<Cx> nullspace_dim1(const std::vector<std::vector<Cx>>& rows_in,
                                      size_t ncols) {
    const size_t nrows = rows_in.size();
    require(nrows + 1 >= ncols, "NullspaceDimHigh",
            "fewer equations than variables minus one");
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(nrows), static_cast<Eigen::Index>(ncols));
    for (size_t i = 0; i < nrows; ++i)
        for (size_t j = 0; j < ncols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows_in[i][j];
    auto svd = svd_of(m);
    const auto& s = svd.singular_values;
    // With r := min(nrows, ncols) singular values, the kernel is
    // one-dimensional when the last kept value is negligible against its
    // predecessor (square-or-taller case) or when the matrix has full row
    // rank (one-short case).
    if (nrows >= ncols) {
        require(ncols >= 2, "NullspaceDim0", "degenerate single-column system");
        double smallest = s[ncols - 1], next = s[ncols - 2];
        require(next > 1e-9 * (s[0] + 1e-300), "NullspaceDimHigh",
                "two negligible singular values; data not generic");
        require(smallest < 1e-6 * next, "NullspaceDim0",
                "no null direction; data not in the image of the spectral map");
    } else {
        require(s[nrows - 1] > 1e-6 * (s[0] + 1e-300), "NullspaceDimHigh",
                "rank-deficient underdetermined system");
    }
    std::vector<Cx> x(ncols);
    for (size_t j = 0; j < ncols; ++j)
        x[j] = svd.v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(ncols - 1));
    return x;
}

// ---- system assembly and solve ----

template <typename S>
LinearSystemV<S> build_system(const TorusGraph& g, const NewtonPolygon& fan,
                              const SmallPolygon& sp,
                              const std::vector<std::pair<S, S>>& divisor,
                              const std::map<int, InfinityPoint<S>>& nu,
                              const std::vector<std::pair<int, int64_t>>& type2,
                              const LaurentPoly<S>& p) {
    using Ops = ScalarOps<S>;
    require(!sp.points.empty(), "EmptyPolygon", "small polygon has no lattice points");
    LinearSystemV<S> sys;
    sys.columns = sp.points;
    sys.type2 = type2;

    for (const auto& [pz, pw] : divisor) {
        std::vector<S> row;
        for (auto m : sys.columns) row.push_back(Ops::pow(pz, m.x) * Ops::pow(pw, m.y));
        sys.rows.push_back(std::move(row));
    }
    sys.type1_count = sys.rows.size();

    for (const auto& [zz, mult] : type2) {
        const InfinityPoint<S>& ip = nu.at(zz);
        const Vec2 u = fan.rays()[size_t(ip.ray)].u;
        int64_t c0 = dot(sys.columns.front(), u);
        for (auto m : sys.columns) c0 = std::min(c0, dot(m, u));
        S a = Ops::inv(ip.casimir);  // x1-coordinate of nu(alpha)

        std::vector<S> row;
        for (auto m : sys.columns) {
            if (dot(m, u) != c0) { row.push_back(Ops::zero()); continue; }
            auto [bm, cm] = ip.basis.decompose(m);
            row.push_back(Ops::pow(a, bm));
        }
        sys.rows.push_back(std::move(row));

        // Higher-order vanishing at nu(alpha): the next stratum must also
        // vanish along the curve, whose first-order direction comes from P.
        for (int64_t s = 1; s < mult; ++s) {
            require(s == 1, "NullspaceDimHigh",
                    "vanishing of order > 2 at a point at infinity is not supported");
            auto [e0, p0] = restrict_to_ray(p, ip.basis);
            LaurentPoly<S> p1 = ray_stratum(p, ip.basis, e0 + 1);
            S dp0 = eval_univariate(p0.dz(), a);
            require(!Ops::is_zero(dp0), "NullspaceDimHigh",
                    "curve is tangent to the line at infinity");
            S xi = -eval_univariate(p1, a) * Ops::inv(dp0);
            std::vector<S> row2;
            for (auto m : sys.columns) {
                int64_t cm = dot(m, u);
                auto [bm, cu] = ip.basis.decompose(m);
                if (cm == c0)
                    row2.push_back(Ops::from_int(bm) * Ops::pow(a, bm - 1) * xi);
                else if (cm == c0 + 1)
                    row2.push_back(Ops::pow(a, bm));
                else
                    row2.push_back(Ops::zero());
            }
            sys.rows.push_back(std::move(row2));
        }
    }
    require(sys.rows.size() + 1 >= sys.columns.size(), "NullspaceDimHigh",
            "system has fewer rows than variables minus one");
    return sys;
}

// Solve for the one-dimensional nullspace and return it as a Laurent
// polynomial on the small polygon; normalized so the first nonzero
// coefficient is 1 (exact) or the largest-magnitude coefficient is 1
// (numeric).
template <typename S>
LaurentPoly<S> solve_V(const LinearSystemV<S>& sys) {
    using Ops = ScalarOps<S>;
    std::vector<S> x = nullspace_dim1(sys.rows, sys.columns.size());
    S norm = Ops::zero();
    if constexpr (Ops::exact) {
        for (const auto& v : x)
            if (!Ops::is_zero(v)) { norm = v; break; }
    } else {
        double best = -1.0;
        for (const auto& v : x)
            if (Ops::abs(v) > best) { best = Ops::abs(v); norm = v; }
    }
    require(!Ops::is_zero(norm), "NullspaceDim0", "nullspace vector vanished");
    LaurentPoly<S> out;
    for (size_t j = 0; j < sys.columns.size(); ++j) {
        S c = x[j] * Ops::inv(norm);
        if constexpr (!Ops::exact) {
            if (Ops::abs(c) <= 1e-11) continue;
        }
        out.add_term(sys.columns[j], c);
    }
    require(!out.is_zero(), "NullspaceDim0", "solution collapsed to zero");
    return out;
}

// ---- wedge ratios and loop weights ----

// Ratio of a wedge b -e-> w -e'-> b' along the zig-zag alpha through both
// edges at w, evaluated at nu(alpha) after canceling the common power of x2.
template <typename S>
S wedge_ratio(const TorusGraph& g, const SignCocycle& eps, int edge_in, int edge_out,
              const InfinityPoint<S>& ip, const LaurentPoly<S>& v_in,
              const LaurentPoly<S>& v_out) {
    using Ops = ScalarOps<S>;
    require(!v_in.is_zero() && !v_out.is_zero(), "ZeroDenominator",
            "wedge ratio with a vanishing V");
    LaurentPoly<S> den =
        v_in.shifted(g.hom(edge_in)).scaled(Ops::from_int(eps[size_t(edge_in)]));
    LaurentPoly<S> num =
        v_out.shifted(g.hom(edge_out)).scaled(Ops::from_int(eps[size_t(edge_out)]));
    auto [cn, ln] = restrict_to_ray(num, ip.basis);
    auto [cd, ld] = restrict_to_ray(den, ip.basis);
    require(cn == cd, "OrderMismatch",
            "wedge numerator and denominator vanish to different orders at infinity");
    S a = Ops::inv(ip.casimir);
    S dval = eval_univariate(ld, a);
    bool dzero = Ops::exact ? Ops::is_zero(dval)
                            : Ops::abs(dval) <= 1e-14 * (ld.max_abs_coeff() + 1e-300);
    require(!dzero, "ZeroDenominator", "wedge denominator vanishes at nu(alpha)");
    return -eval_univariate(ln, a) * Ops::inv(dval);
}

// Alternating weight of a loop recovered as a product of wedge ratios. The
// walk must alternate black -> white -> black; at each white vertex the
// passage from the incoming to the outgoing edge is decomposed into zig-zag
// turns, inserting intermediate wedges whose contributions telescope.
template <typename S>
S loop_weight(const TorusGraph& g, const SignCocycle& eps, const std::vector<Step>& loop,
              const std::map<int, InfinityPoint<S>>& nu,
              const std::map<int, LaurentPoly<S>>& v) {
    using Ops = ScalarOps<S>;
    require(loop.size() % 2 == 0 && !loop.empty(), "NotAWedgePath",
            "loop must alternate black and white vertices");
    std::vector<Step> walk = loop;
    if (!walk.front().forward) std::rotate(walk.begin(), walk.begin() + 1, walk.end());
    S acc = Ops::one();
    for (size_t i = 0; i < walk.size(); i += 2) {
        const Step& in = walk[i];
        const Step& out = walk[i + 1];
        require(in.forward && !out.forward, "NotAWedgePath",
                "loop does not alternate direction");
        int w = g.edge_white(in.edge);
        require(w == g.edge_white(out.edge), "NotAWedgePath",
                "consecutive loop edges do not share a white vertex");
        int e = in.edge;
        size_t guard = 0;
        while (e != out.edge) {
            require(++guard <= g.edges_at(w).size(), "NotAWedgePath",
                    "white vertex turn decomposition did not close");
            int exit = g.white_turn_exit(w, e);
            int zz = g.turn_zigzag(w, e);
            acc *= wedge_ratio(g, eps, e, exit, nu.at(zz), v.at(g.edge_black(e)),
                               v.at(g.edge_black(exit)));
            e = exit;
        }
    }
    return acc;
}

// ---- full inverse map ----

template <typename S>
InverseResult<S> reconstruct_weights(TorusGraph& g, const InverseInput<S>& in,
                                     const InverseOptions& opts = {}) {
    using Ops = ScalarOps<S>;
    require(g.has_cycles(), "NotAWedgePath",
            "graph spec carries no homology generator cycles for A, B");
    g.assign_rays(in.polygon);
    AbelData abel = discrete_abel(g, in.polygon);
    require(int64_t(in.divisor.size()) == in.polygon.genus(), "WrongCount",
            "divisor size does not match the polygon genus");

    // The Kasteleyn sign enters the wedge ratios; any representative of the
    // class works, and the graph's explicit sign is used when present.
    SignCocycle eps;
    if (!g.spec().eps.empty()) {
        eps.assign(g.edge_count(), 1);
        for (const auto& [id, s] : g.spec().eps) eps[size_t(g.edge_index(id))] = s;
        require(sign_face_conditions_hold(g, eps), "Unsatisfiable",
                "explicit Kasteleyn sign violates a face condition");
    } else {
        eps = kasteleyn_sign(g);
    }

    InverseResult<S> out;
    int w0 = g.root_white();
    auto solve_one = [&](int b) {
        SmallPolygon sp = small_polygon(g, in.polygon, abel, b, w0);
        auto t2 = type2_zigzags(g, in.polygon, abel, b, w0, sp.y);
        auto sys = build_system(g, in.polygon, sp, in.divisor, in.nu, t2, in.P);
        return solve_V(sys);
    };
    if (opts.jobs > 1) {
        std::vector<std::pair<int, std::future<LaurentPoly<S>>>> futs;
        for (int b : g.blacks())
            futs.emplace_back(b, std::async(std::launch::async, solve_one, b));
        for (auto& [b, f] : futs) out.v.emplace(b, f.get());
    } else {
        for (int b : g.blacks()) out.v.emplace(b, solve_one(b));
    }

    S prod = Ops::one();
    for (size_t f = 0; f < g.face_count(); ++f) {
        S x = loop_weight(g, eps, g.faces()[f], in.nu, out.v);
        out.all_faces[int(f)] = x;
        prod *= x;
    }
    bool ok = Ops::exact ? prod == Ops::one()
                         : Ops::abs(prod - Ops::one()) <= opts.tol * g.face_count();
    require(ok, "NotAWedgePath", "recovered face weights do not multiply to 1");

    out.weights.A = loop_weight(g, eps, g.cycle_a(), in.nu, out.v);
    out.weights.B = loop_weight(g, eps, g.cycle_b(), in.nu, out.v);
    for (size_t f = 0; f < g.face_count(); ++f)
        if (int(f) != g.root_face()) out.weights.face_weights[int(f)] = out.all_faces[int(f)];
    return out;
}

// Convert forward-transform output into inverse-map input (numeric path).
inline InverseInput<Cx> to_inverse_input(const SpectralData<Rat>& sd) {
    InverseInput<Cx> in;
    in.P = to_numeric(sd.P);
    in.polygon = sd.polygon;
    for (const auto& pt : sd.divisor) in.divisor.emplace_back(pt.p, pt.q);
    for (const auto& [zz, ip] : sd.nu)
        in.nu.emplace(zz, InfinityPoint<Cx>{ip.zigzag, ip.ray, ip.basis, to_cx(ip.casimir)});
    return in;
}

inline InverseInput<Cx> to_inverse_input(const SpectralData<Cx>& sd) {
    InverseInput<Cx> in;
    in.P = sd.P;
    in.polygon = sd.polygon;
    for (const auto& pt : sd.divisor) in.divisor.emplace_back(pt.p, pt.q);
    for (const auto& [zz, ip] : sd.nu) in.nu.emplace(zz, ip);
    return in;
}

}  // namespace dimer
