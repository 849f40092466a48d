#include "dimer/kasteleyn.hpp"

#include <queue>

namespace dimer {

namespace {

// Face target over GF(2): product over a face with 2k sides must be -1 for
// k even, +1 for k odd.
int face_target_bit(size_t face_len) {
    size_t k = face_len / 2;
    return (k % 2 == 0) ? 1 : 0;
}

}  // namespace

bool sign_face_conditions_hold(const TorusGraph& g, const SignCocycle& eps) {
    for (const auto& walk : g.faces()) {
        int prod = 1;
        for (const auto& s : walk) prod *= eps[s.edge];
        int want = face_target_bit(walk.size()) ? -1 : 1;
        if (prod != want) return false;
    }
    return true;
}

SignCocycle kasteleyn_sign(const TorusGraph& g, int a_value, int b_value) {
    const size_t ne = g.edge_count();

    // GF(2) system over edge variables x_e with eps(e) = (-1)^{x_e}:
    // one equation per face, two for the homology cycle values, and one per
    // spanning-tree edge to fix the gauge.
    std::vector<std::vector<uint8_t>> rows;
    std::vector<uint8_t> rhs;
    auto add_row = [&](const std::vector<int>& edges, int bit) {
        std::vector<uint8_t> row(ne, 0);
        for (int e : edges) row[size_t(e)] ^= 1;
        rows.push_back(std::move(row));
        rhs.push_back(uint8_t(bit));
    };

    for (const auto& walk : g.faces()) {
        std::vector<int> es;
        for (const auto& s : walk) es.push_back(s.edge);
        add_row(es, face_target_bit(walk.size()));
    }
    if (g.has_cycles()) {
        std::vector<int> ea, eb;
        for (const auto& s : g.cycle_a()) ea.push_back(s.edge);
        for (const auto& s : g.cycle_b()) eb.push_back(s.edge);
        add_row(ea, a_value == -1 ? 1 : 0);
        add_row(eb, b_value == -1 ? 1 : 0);
    }
    {
        std::vector<char> seen(g.vertex_count(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e : g.edges_at(u)) {
                int other = g.edge_black(e) == u ? g.edge_white(e) : g.edge_black(e);
                if (seen[other]) continue;
                seen[other] = 1;
                add_row({e}, 0);
                q.push(other);
            }
        }
    }

    // Gaussian elimination over GF(2).
    size_t nrows = rows.size();
    std::vector<int> pivot_col(nrows, -1);
    size_t r = 0;
    for (size_t c = 0; c < ne && r < nrows; ++c) {
        size_t p = r;
        while (p < nrows && !rows[p][c]) ++p;
        if (p == nrows) continue;
        std::swap(rows[p], rows[r]);
        std::swap(rhs[p], rhs[r]);
        for (size_t i = 0; i < nrows; ++i) {
            if (i == r || !rows[i][c]) continue;
            for (size_t j = c; j < ne; ++j) rows[i][j] ^= rows[r][j];
            rhs[i] ^= rhs[r];
        }
        pivot_col[r] = int(c);
        ++r;
    }
    for (size_t i = r; i < nrows; ++i)
        require(!rhs[i], "Unsatisfiable", "Kasteleyn sign system has no solution");

    std::vector<uint8_t> x(ne, 0);
    for (size_t i = 0; i < r; ++i) {
        int c = pivot_col[i];
        uint8_t v = rhs[i];
        for (size_t j = size_t(c) + 1; j < ne; ++j)
            if (rows[i][j]) v ^= x[j];
        x[size_t(c)] = v;
    }
    SignCocycle eps(ne, 1);
    for (size_t e = 0; e < ne; ++e) eps[e] = x[e] ? -1 : 1;
    require(sign_face_conditions_hold(g, eps), "Unsatisfiable",
            "computed sign violates a face condition");
    return eps;
}

bool signs_coboundary_equivalent(const TorusGraph& g, const SignCocycle& a,
                                 const SignCocycle& b) {
    // a/b is a coboundary iff its value around every fundamental cycle is +1;
    // equivalently a vertex potential exists.
    std::vector<int> f(g.vertex_count(), 0);
    std::queue<int> q;
    f[0] = 1;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int e : g.edges_at(u)) {
            int other = g.edge_black(e) == u ? g.edge_white(e) : g.edge_black(e);
            int delta = a[e] * b[e];
            int want = delta * f[u];
            if (f[other] == 0) {
                f[other] = want;
                q.push(other);
            } else if (f[other] != want) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace dimer
