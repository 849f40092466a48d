#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dimer/abel.hpp"
#include "dimer/graph.hpp"
#include "dimer/kasteleyn.hpp"
#include "dimer/lattice.hpp"

namespace dimer {

// Point at infinity attached to a zig-zag path: in the ray-adapted basis the
// point is x1 = 1/C_alpha, x2 = 0.
template <typename S>
struct InfinityPoint {
    int zigzag = -1;
    int ray = -1;
    RayBasis basis;
    S casimir = ScalarOps<S>::one();
};

struct SpectralPoint {
    Cx p, q;
    double max_residual = 0.0;  // worst relative residual over P and the column
};

// Divisor spectral data (C, S, nu) plus bookkeeping: the characteristic
// polynomial (exact when the weights are exact), its Newton polygon in the
// position fixed by the reference matching, and the adjugate column used for
// the divisor.
template <typename S>
struct SpectralData {
    LaurentPoly<S> P;
    NewtonPolygon polygon;
    int64_t genus = 0;
    std::vector<SpectralPoint> divisor;
    std::map<int, InfinityPoint<S>> nu;  // zig-zag id -> point at infinity
    std::vector<int> m0;                 // reference matching, edge per white
    std::vector<LaurentPoly<S>> q_column;  // adjugate column of the root white
};

struct ForwardOptions {
    double tol = 1e-8;  // relative residual filter for divisor points
};

// Points at infinity from the Casimirs: checks that the leading polynomial of
// P along every ray has the Casimir reciprocals as its root multiset.
template <typename S>
std::map<int, InfinityPoint<S>> infinity_points(const TorusGraph& g,
                                                const NewtonPolygon& fan,
                                                const LaurentPoly<S>& p,
                                                const std::vector<S>& cas,
                                                double tol = 1e-9);

// The g common zeros of the adjugate column on the open spectral curve.
std::vector<SpectralPoint> spectral_divisor(const std::vector<LaurentPoly<Cx>>& column,
                                            const LaurentPoly<Cx>& p, int64_t genus,
                                            double tol = 1e-8);

// Full spectral transform for a weight class.
template <typename S>
SpectralData<S> forward(TorusGraph& g, const WeightClass<S>& wc,
                        const ForwardOptions& opts = {});

// Spectral transform from an explicit edge cocycle and sign (used by the
// gauge-invariance tests, which perturb the cocycle directly).
template <typename S>
SpectralData<S> forward_from_cocycle(TorusGraph& g, const EdgeCocycle<S>& wt,
                                     const SignCocycle& eps,
                                     const ForwardOptions& opts = {});

// ---- implementation ----

template <typename S>
std::map<int, InfinityPoint<S>> infinity_points(const TorusGraph& g,
                                                const NewtonPolygon& fan,
                                                const LaurentPoly<S>& p,
                                                const std::vector<S>& cas,
                                                double tol) {
    using Ops = ScalarOps<S>;
    std::map<int, InfinityPoint<S>> out;
    for (size_t ray = 0; ray < fan.ray_count(); ++ray) {
        auto members = g.ray_members(int(ray));
        if (members.empty()) continue;
        RayBasis basis = ray_basis(fan.rays()[ray].dir, fan.rays()[ray].u);
        auto [c0, lead] = restrict_to_ray(p, basis);
        require(c0 == -fan.rays()[ray].a, "RootMismatch",
                "leading stratum of P sits at the wrong ray offset");
        int64_t span = lead.max_dot({1, 0}) - lead.min_dot({1, 0});
        require(span == int64_t(members.size()), "RootMismatch",
                "leading polynomial degree " + std::to_string(span) + " != |Z_rho| = " +
                    std::to_string(members.size()) + " on ray " + std::to_string(ray));
        // Distinct Casimirs on the ray.
        for (size_t i = 0; i < members.size(); ++i) {
            for (size_t j = i + 1; j < members.size(); ++j) {
                S d = cas[size_t(members[i])] - cas[size_t(members[j])];
                bool equal = Ops::exact ? Ops::is_zero(d)
                                        : Ops::abs(d) <= tol * (1.0 + Ops::abs(cas[size_t(members[i])]));
                require(!equal, "CasimirCollision",
                        "two equal Casimirs on ray " + std::to_string(ray));
            }
        }
        double scale = 0.0;
        if constexpr (!Ops::exact) {
            for (const auto& [e, c] : lead.terms()) scale = std::max(scale, Ops::abs(c));
        }
        for (int zz : members) {
            S root = Ops::inv(cas[size_t(zz)]);
            S value = eval_univariate(lead, root);
            if constexpr (Ops::exact) {
                require(Ops::is_zero(value), "RootMismatch",
                        "1/C_alpha is not a root of the leading polynomial");
            } else {
                double rscale = 0.0;
                for (const auto& [e, c] : lead.terms())
                    rscale += Ops::abs(c) * std::pow(Ops::abs(root), double(e.x));
                require(Ops::abs(value) <= tol * std::max(rscale, scale), "RootMismatch",
                        "1/C_alpha fails the leading polynomial residual");
            }
            out[zz] = InfinityPoint<S>{zz, int(ray), basis, cas[size_t(zz)]};
        }
    }
    require(out.size() == g.zigzags().size(), "RootMismatch",
            "some zig-zag path received no point at infinity");
    return out;
}

template <typename S>
SpectralData<S> forward_from_cocycle(TorusGraph& g, const EdgeCocycle<S>& wt,
                                     const SignCocycle& eps, const ForwardOptions& opts) {
    SpectralData<S> sd;
    auto k = kasteleyn_matrix(g, wt, eps);
    sd.m0 = g.perfect_matching();
    sd.P = characteristic_polynomial(g, k, sd.m0, wt, eps);

    NewtonPolygon shape = g.newton_polygon();
    sd.polygon = NewtonPolygon::from_support(sd.P.support());
    {
        // Same polygon up to the translation fixed by the reference matching;
        // the ray sequences are cyclic, so align them on the first direction.
        bool same = shape.ray_count() == sd.polygon.ray_count() &&
                    shape.twice_area() == sd.polygon.twice_area();
        if (same) {
            size_t n = shape.ray_count(), off = n;
            for (size_t i = 0; i < n; ++i)
                if (sd.polygon.rays()[i].dir == shape.rays()[0].dir) off = i;
            same = off < n;
            for (size_t i = 0; same && i < n; ++i)
                same = shape.rays()[i].dir == sd.polygon.rays()[(off + i) % n].dir &&
                       shape.rays()[i].lattice_len ==
                           sd.polygon.rays()[(off + i) % n].lattice_len;
        }
        require(same, "RootMismatch",
                "Newton(P) differs from the zig-zag polygon; weights are not generic");
    }
    g.assign_rays(sd.polygon);
    sd.genus = sd.polygon.genus();

    auto cas = casimirs(g, wt, eps);
    sd.nu = infinity_points(g, sd.polygon, sd.P, cas);

    sd.q_column = adjugate_column(k, size_t(g.white_position(g.root_white())));
    std::vector<LaurentPoly<Cx>> col_cx;
    for (const auto& f : sd.q_column) col_cx.push_back(to_numeric(f));
    sd.divisor = spectral_divisor(col_cx, to_numeric(sd.P), sd.genus, opts.tol);
    return sd;
}

template <typename S>
SpectralData<S> forward(TorusGraph& g, const WeightClass<S>& wc, const ForwardOptions& opts) {
    SignCocycle eps;
    if (!g.spec().eps.empty()) {
        eps.assign(g.edge_count(), 1);
        for (const auto& [id, s] : g.spec().eps) eps[size_t(g.edge_index(id))] = s;
        require(sign_face_conditions_hold(g, eps), "Unsatisfiable",
                "explicit Kasteleyn sign violates a face condition");
    } else {
        eps = kasteleyn_sign(g);
    }
    auto wt = weight_cocycle(g, wc);
    return forward_from_cocycle(g, wt, eps, opts);
}

}  // namespace dimer
