#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include "dimer/error.hpp"
#include "dimer/scalar.hpp"
#include "dimer/vec2.hpp"

namespace dimer {

// Sparse two-variable Laurent polynomial over scalar S, keyed by the exponent
// pair of z^i w^j. No zero coefficients are stored, so equality of exact
// polynomials is structural equality of the maps.
template <typename S>
class LaurentPoly {
public:
    using Ops = ScalarOps<S>;
    using TermMap = std::map<Vec2, S>;

    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly constant(const S& c) {
        LaurentPoly p;
        p.add_term({0, 0}, c);
        return p;
    }
    static LaurentPoly one() { return constant(Ops::one()); }
    static LaurentPoly monomial(Vec2 e, const S& c) {
        LaurentPoly p;
        p.add_term(e, c);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    S coeff(Vec2 e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Ops::zero() : it->second;
    }

    void add_term(Vec2 e, const S& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!Ops::is_zero(c)) terms_.emplace(e, c);
        } else {
            it->second += c;
            if (Ops::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
    LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
    LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
        return !(a == b);
    }

    LaurentPoly scaled(const S& c) const {
        LaurentPoly r;
        if (Ops::is_zero(c)) return r;
        for (const auto& [e, v] : terms_) {
            S cv = v * c;
            if (!Ops::is_zero(cv)) r.terms_.emplace(e, cv);
        }
        return r;
    }

    // Multiplication by the monomial z^{s.x} w^{s.y}.
    LaurentPoly shifted(Vec2 s) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e + s, c);
        return r;
    }

    S eval(const S& z, const S& w) const {
        S acc = Ops::zero();
        for (const auto& [e, c] : terms_)
            acc += c * Ops::pow(z, e.x) * Ops::pow(w, e.y);
        return acc;
    }

    // Sum of |coeff| * |z|^i |w|^j, the natural scale for relative residuals
    // of eval() at (z, w).
    double eval_scale(double az, double aw) const {
        double acc = 0.0;
        for (const auto& [e, c] : terms_)
            acc += Ops::abs(c) * std::pow(az, double(e.x)) * std::pow(aw, double(e.y));
        return acc;
    }

    LaurentPoly dz() const {  // formal d/dz
        LaurentPoly r;
        for (const auto& [e, c] : terms_) {
            if (e.x == 0) continue;
            r.add_term({e.x - 1, e.y}, c * Ops::from_int(e.x));
        }
        return r;
    }
    LaurentPoly dw() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) {
            if (e.y == 0) continue;
            r.add_term({e.x, e.y - 1}, c * Ops::from_int(e.y));
        }
        return r;
    }

    std::vector<Vec2> support() const {
        std::vector<Vec2> s;
        s.reserve(terms_.size());
        for (const auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& [e, c] : terms_) m = std::max(m, Ops::abs(c));
        return m;
    }

    // Drop coefficients of magnitude <= tol (absolute). No-op in exact mode
    // for tol = 0.
    LaurentPoly pruned(double tol) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_)
            if (Ops::abs(c) > tol) r.terms_.emplace(e, c);
        return r;
    }

    int64_t min_dot(Vec2 u) const {
        require(!terms_.empty(), "ZeroPolynomial", "min_dot of the zero polynomial");
        int64_t m = dot(terms_.begin()->first, u);
        for (const auto& [e, c] : terms_) m = std::min(m, dot(e, u));
        return m;
    }
    int64_t max_dot(Vec2 u) const {
        require(!terms_.empty(), "ZeroPolynomial", "max_dot of the zero polynomial");
        int64_t m = dot(terms_.begin()->first, u);
        for (const auto& [e, c] : terms_) m = std::max(m, dot(e, u));
        return m;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            if constexpr (Ops::exact) os << c.str();
            else os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
            if (e.x != 0) os << "*z^" << e.x;
            if (e.y != 0) os << "*w^" << e.y;
        }
        return os.str();
    }

private:
    TermMap terms_;
};

inline LaurentPoly<Cx> to_numeric(const LaurentPoly<Rat>& p) {
    LaurentPoly<Cx> r;
    for (const auto& [e, c] : p.terms()) r.add_term(e, to_cx(c));
    return r;
}

inline const LaurentPoly<Cx>& to_numeric(const LaurentPoly<Cx>& p) { return p; }

// Exact multivariate division a / b; used by the fraction-free elimination
// where divisibility is guaranteed. Throws if a remainder survives (exact
// mode) or leaves a tiny remainder unreported (numeric mode).
template <typename S>
LaurentPoly<S> divide_exact(const LaurentPoly<S>& a, const LaurentPoly<S>& b) {
    using Ops = ScalarOps<S>;
    require(!b.is_zero(), "DivisionByZero", "polynomial division by zero");
    LaurentPoly<S> rem = a, quot;
    // Divide by the lexicographically largest term of b.
    const auto lead_it = std::prev(b.terms().end());
    const Vec2 lead_e = lead_it->first;
    const S lead_c = lead_it->second;
    double scale = std::max(a.max_abs_coeff(), 1.0);
    size_t steps = 0, cap = 1000 * (a.term_count() + b.term_count() + 4);
    while (!rem.is_zero()) {
        require(++steps <= cap, "DivisionError", "non-exact polynomial division");
        const auto rit = std::prev(rem.terms().end());
        Vec2 qe = rit->first - lead_e;
        S qc = rit->second * Ops::inv(lead_c);
        quot.add_term(qe, qc);
        rem -= b.shifted(qe).scaled(qc);
        if constexpr (!Ops::exact) {
            rem = rem.pruned(1e-12 * scale);
        }
    }
    return quot;
}

}  // namespace dimer
