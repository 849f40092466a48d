#include "dimer/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "dimer/numeric.hpp"

namespace dimer {

namespace {

// View a Laurent polynomial as a polynomial in w whose coefficients are
// complex polynomials in z, after clearing the w- and z-shifts uniformly.
struct WPoly {
    std::vector<LaurentPoly<Cx>> coeff;  // index = w-degree after clearing
    int64_t degw() const { return int64_t(coeff.size()) - 1; }
    int64_t degz = 0;
};

WPoly as_w_poly(const LaurentPoly<Cx>& f) {
    int64_t wmin = f.min_dot({0, 1}), wmax = f.max_dot({0, 1});
    int64_t zmin = f.min_dot({1, 0}), zmax = f.max_dot({1, 0});
    WPoly out;
    out.coeff.assign(size_t(wmax - wmin + 1), {});
    for (const auto& [e, c] : f.terms())
        out.coeff[size_t(e.y - wmin)].add_term({e.x - zmin, 0}, c);
    out.degz = zmax - zmin;
    return out;
}

Cx eval_zpoly(const LaurentPoly<Cx>& p, Cx z) {
    Cx acc(0.0, 0.0);
    for (const auto& [e, c] : p.terms()) acc += c * ScalarOps<Cx>::pow(z, e.x);
    return acc;
}

// Nonzero z-values where Res_w(F, G) vanishes, by evaluating the Sylvester
// determinant on a circle and interpolating the coefficients.
std::vector<Cx> resultant_roots(const WPoly& f, const WPoly& g) {
    const int64_t n = f.degw(), m = g.degw();
    const int64_t dim = n + m;
    const int64_t dbound = m * f.degz + n * g.degz;
    const int64_t npts = dbound + 1;
    const double r = 1.2345678;

    std::vector<Cx> samples(static_cast<size_t>(npts));
    for (int64_t t = 0; t < npts; ++t) {
        Cx z = std::polar(r, 2.0 * M_PI * double(t) / double(npts));
        Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(long(dim), long(dim));
        for (int64_t i = 0; i < m; ++i)
            for (int64_t k = 0; k <= n; ++k)
                s(long(i), long(i + k)) = eval_zpoly(f.coeff[size_t(n - k)], z);
        for (int64_t i = 0; i < n; ++i)
            for (int64_t k = 0; k <= m; ++k)
                s(long(m + i), long(i + k)) = eval_zpoly(g.coeff[size_t(m - k)], z);
        samples[size_t(t)] = Eigen::PartialPivLU<Eigen::MatrixXcd>(s).determinant();
    }

    std::vector<Cx> coeffs(static_cast<size_t>(npts));
    for (int64_t k = 0; k < npts; ++k) {
        Cx acc(0.0, 0.0);
        for (int64_t t = 0; t < npts; ++t)
            acc += samples[size_t(t)] *
                   std::polar(1.0, -2.0 * M_PI * double(t) * double(k) / double(npts));
        coeffs[size_t(k)] = acc / (double(npts) * std::pow(r, double(k)));
    }
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) fail("WrongCount", "resultant vanishes identically; column entries share a factor");

    auto roots = poly_roots(coeffs);
    double rmax = 1.0;
    for (const auto& z : roots) rmax = std::max(rmax, std::abs(z));
    std::vector<Cx> out;
    for (const auto& z : roots)
        if (std::abs(z) > 1e-12 * rmax) out.push_back(z);
    return out;
}

std::vector<Cx> univariate_roots_in_z(const LaurentPoly<Cx>& f) {
    int64_t zmin = f.min_dot({1, 0}), zmax = f.max_dot({1, 0});
    std::vector<Cx> c(size_t(zmax - zmin + 1), Cx(0, 0));
    for (const auto& [e, m] : f.terms()) c[size_t(e.x - zmin)] = m;
    std::vector<Cx> out;
    for (const auto& z : poly_roots(c))
        if (std::abs(z) > 1e-12) out.push_back(z);
    return out;
}

std::vector<Cx> w_candidates(const WPoly& f, Cx z) {
    std::vector<Cx> c;
    for (const auto& p : f.coeff) c.push_back(eval_zpoly(p, z));
    std::vector<Cx> out;
    for (const auto& w : poly_roots(c))
        if (std::abs(w) > 1e-12) out.push_back(w);
    return out;
}

void newton_polish(const LaurentPoly<Cx>& f, const LaurentPoly<Cx>& p, Cx& z, Cx& w) {
    LaurentPoly<Cx> fz = f.dz(), fw = f.dw(), pz = p.dz(), pw = p.dw();
    for (int it = 0; it < 30; ++it) {
        Cx r1 = f.eval(z, w), r2 = p.eval(z, w);
        double res = std::abs(r1) + std::abs(r2);
        double scale = f.eval_scale(std::abs(z), std::abs(w)) +
                       p.eval_scale(std::abs(z), std::abs(w));
        if (res <= 1e-15 * scale) break;
        Cx a = fz.eval(z, w), b = fw.eval(z, w);
        Cx c = pz.eval(z, w), d = pw.eval(z, w);
        Cx det = a * d - b * c;
        if (std::abs(det) < 1e-300) break;
        Cx dz = (r1 * d - b * r2) / det;
        Cx dw = (a * r2 - r1 * c) / det;
        z -= dz;
        w -= dw;
    }
}

}  // namespace

std::vector<SpectralPoint> spectral_divisor(const std::vector<LaurentPoly<Cx>>& column,
                                            const LaurentPoly<Cx>& p, int64_t genus,
                                            double tol) {
    std::vector<size_t> nonzero;
    for (size_t i = 0; i < column.size(); ++i)
        if (!column[i].is_zero()) nonzero.push_back(i);
    require(!nonzero.empty(), "EmptyColumn", "adjugate column vanishes identically");
    if (genus == 0) return {};
    require(nonzero.size() >= 2, "WrongCount",
            "need two nonzero column entries to isolate the divisor");

    std::sort(nonzero.begin(), nonzero.end(), [&](size_t a, size_t b) {
        auto ka = std::make_pair(column[a].term_count(), a);
        auto kb = std::make_pair(column[b].term_count(), b);
        return ka < kb;
    });
    const LaurentPoly<Cx>& f = column[nonzero[0]];
    const LaurentPoly<Cx>& g = column[nonzero[1]];

    WPoly fw = as_w_poly(f), gw = as_w_poly(g);
    std::vector<Cx> zs;
    const WPoly* wsource = &fw;
    if (fw.degw() == 0 && gw.degw() == 0) {
        fail("WrongCount", "both elimination entries are independent of w");
    } else if (fw.degw() == 0) {
        zs = univariate_roots_in_z(f);
        wsource = &gw;
    } else if (gw.degw() == 0) {
        zs = univariate_roots_in_z(g);
        wsource = &fw;
    } else {
        zs = resultant_roots(fw, gw);
        wsource = &fw;
    }

    std::vector<SpectralPoint> found;
    auto consider = [&](Cx z, Cx w) {
        newton_polish(f, p, z, w);
        if (std::abs(z) < 1e-12 || std::abs(w) < 1e-12) return;
        double worst = 0.0;
        auto rel = [&](const LaurentPoly<Cx>& poly) {
            double scale = poly.eval_scale(std::abs(z), std::abs(w));
            if (scale == 0.0) return 0.0;
            return std::abs(poly.eval(z, w)) / scale;
        };
        for (size_t i : nonzero) worst = std::max(worst, rel(column[i]));
        worst = std::max(worst, rel(p));
        if (worst > tol) return;
        for (const auto& s : found) {
            if (std::abs(s.p - z) <= 1e-7 * (1.0 + std::abs(z)) &&
                std::abs(s.q - w) <= 1e-7 * (1.0 + std::abs(w)))
                return;
        }
        found.push_back({z, w, worst});
    };
    for (const auto& z : zs)
        for (const auto& w : w_candidates(*wsource, z)) consider(z, w);

    require(int64_t(found.size()) == genus, "WrongCount",
            "found " + std::to_string(found.size()) + " divisor points, expected " +
                std::to_string(genus));
    std::sort(found.begin(), found.end(), [](const SpectralPoint& a, const SpectralPoint& b) {
        return std::make_tuple(a.p.real(), a.p.imag(), a.q.real(), a.q.imag()) <
               std::make_tuple(b.p.real(), b.p.imag(), b.q.real(), b.q.imag());
    });
    return found;
}

}  // namespace dimer
