#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "dimer/error.hpp"
#include "dimer/scalar.hpp"

namespace dimer {

// Roots of c[0] + c[1] x + ... + c[d] x^d via the companion matrix.
// Leading/trailing coefficients below rel_tol * max|c| are trimmed; trailing
// trims report roots at zero being dropped by the caller if unwanted.
inline std::vector<Cx> poly_roots(std::vector<Cx> c, double rel_tol = 1e-13) {
    double scale = 0.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    require(scale > 0.0, "ZeroPolynomial", "root-finding on the zero polynomial");
    while (!c.empty() && std::abs(c.back()) <= rel_tol * scale) c.pop_back();
    require(!c.empty(), "ZeroPolynomial", "root-finding on a numerically zero polynomial");
    size_t zeros_at_origin = 0;
    while (c.size() > 1 && std::abs(c.front()) <= rel_tol * scale) {
        c.erase(c.begin());
        ++zeros_at_origin;
    }
    std::vector<Cx> roots(zeros_at_origin, Cx(0.0, 0.0));
    const size_t d = c.size() - 1;
    if (d == 0) return roots;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(long(d), long(d));
    for (size_t i = 0; i + 1 < d; ++i) m(long(i) + 1, long(i)) = 1.0;
    for (size_t i = 0; i < d; ++i) m(long(i), long(d) - 1) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    require(es.info() == Eigen::Success, "RootMismatch", "eigenvalue solve failed");
    for (long i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()[i]);
    return roots;
}

inline Cx eval_poly(const std::vector<Cx>& c, Cx x) {
    Cx acc(0.0, 0.0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// Smallest-right-singular-vector extraction; returns the descending singular
// values and the right singular vectors.
struct SvdNullspace {
    std::vector<double> singular_values;
    Eigen::MatrixXcd v;
};

inline SvdNullspace svd_of(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    SvdNullspace out;
    for (long i = 0; i < svd.singularValues().size(); ++i)
        out.singular_values.push_back(svd.singularValues()[i]);
    out.v = svd.matrixV();
    return out;
}

}  // namespace dimer
