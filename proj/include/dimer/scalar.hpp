#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "dimer/error.hpp"

namespace dimer {

// Exact scalar field: arbitrary-precision rationals backed by GMP.
using Rat = boost::multiprecision::mpq_rational;

// Numeric scalar field.
using Cx = std::complex<double>;

inline Rat rat_parse(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        fail("ParseError", "bad rational literal '" + s + "'");
    }
}

inline std::string rat_str(const Rat& r) { return r.str(); }

inline double rat_double(const Rat& r) {
    return boost::multiprecision::numerator(r).convert_to<double>() /
           boost::multiprecision::denominator(r).convert_to<double>();
}

// Field operations shared by the exact and numeric scalar types. "Zero" is
// structural for rationals; numeric code passes an explicit tolerance where
// it prunes.
template <typename S>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
    static constexpr bool exact = true;
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static bool is_zero(const Rat& v) { return v == 0; }
    static double abs(const Rat& v) { return std::fabs(rat_double(v)); }
    static Rat from_rat(const Rat& v) { return v; }
    static Rat from_int(int64_t v) { return Rat(v); }
    static Rat inv(const Rat& v) {
        require(v != 0, "DivisionByZero", "1/0 in exact arithmetic");
        return Rat(1) / v;
    }
    static Rat pow(Rat base, int64_t e) {
        if (e < 0) { base = inv(base); e = -e; }
        Rat acc(1);
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }
};

template <>
struct ScalarOps<Cx> {
    static constexpr bool exact = false;
    static Cx zero() { return Cx(0.0, 0.0); }
    static Cx one() { return Cx(1.0, 0.0); }
    static bool is_zero(const Cx& v) { return v == Cx(0.0, 0.0); }
    static double abs(const Cx& v) { return std::abs(v); }
    static Cx from_rat(const Rat& v) { return Cx(rat_double(v), 0.0); }
    static Cx from_int(int64_t v) { return Cx(double(v), 0.0); }
    static Cx inv(const Cx& v) {
        require(std::abs(v) != 0.0, "DivisionByZero", "1/0 in numeric arithmetic");
        return Cx(1.0, 0.0) / v;
    }
    static Cx pow(Cx base, int64_t e) {
        if (e < 0) { base = inv(base); e = -e; }
        Cx acc(1.0, 0.0);
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }
};

inline Cx to_cx(const Rat& r) { return Cx(rat_double(r), 0.0); }

}  // namespace dimer
