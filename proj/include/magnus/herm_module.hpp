// The pointed skew-Hermitian module of a once-punctured surface.
//
// For a genus-g surface with valuation phi, the free module R^2g on the
// classes of a1..ag, b1..bg carries the sesquilinear form
//   <x, y> = x^T S involute(y)      (linear left slot, conjugate right slot)
// with conj_transpose(S) = -S and det S = 4^g.  The distinguished point is
// half the homology class of the boundary word; its Fox coordinate vector nu
// satisfies S involute(nu) = 2 del with del_i = phi(x_i) - 1.
//
// Writing x for phi(alpha_i) and y for phi(beta_j), the matrix entries are
// built from
//   P(x, y) = (1 - x)(1 - y^-1 bar)          (off-diagonal interactions)
//   Q(x, y) = (x + 1)(bar y + 1) - 2          (paired handle interaction)
// as in the genus-1 case S = [[x^-1 - x, Q], [-bar Q, y - y^-1]].
#pragma once

#include <vector>

#include "magnus/matrix.hpp"
#include "magnus/word.hpp"

namespace magnus {

struct PointedHermModule {
    int genus = 0;
    PhiValuation phi;              // on 2*genus generators
    MatR s;                        // 2g x 2g
    std::vector<LaurentPoly> del;  // phi(x_i) - 1
    std::vector<LaurentPoly> nu;   // Fox coordinates of the boundary word

    int rank() const { return 2 * genus; }

    friend bool operator==(const PointedHermModule& x, const PointedHermModule& y) {
        return x.genus == y.genus && x.phi == y.phi && x.s == y.s && x.del == y.del && x.nu == y.nu;
    }
    friend bool operator!=(const PointedHermModule& x, const PointedHermModule& y) { return !(x == y); }
};

namespace detail {

inline LaurentPoly form_p(const LaurentPoly& px, const LaurentPoly& py) {
    LaurentPoly one = LaurentPoly::constant(px.nvars, 1);
    return (one - px) * (one - involute(py));
}

inline LaurentPoly form_q(const LaurentPoly& px, const LaurentPoly& py) {
    LaurentPoly one = LaurentPoly::constant(px.nvars, 1);
    return (px + one) * (involute(py) + one) - LaurentPoly::constant(px.nvars, 2);
}

} // namespace detail

inline PointedHermModule build_module(int genus, const PhiValuation& phi) {
    if (phi.ngens != 2 * genus) throw invalid_input("build_module: valuation rank mismatch");
    PointedHermModule h;
    h.genus = genus;
    h.phi = phi;
    int n = phi.nvars;
    int g = genus;
    h.s = MatR(2 * g, 2 * g, n);
    auto pa = [&](int i) { return phi_of_gen(phi, i + 1); };     // phi(alpha_i), 0-based
    auto pb = [&](int i) { return phi_of_gen(phi, g + i + 1); }; // phi(beta_i), 0-based
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            if (i == j) {
                h.s.at(i, j) = involute(pa(i)) - pa(i);
                h.s.at(g + i, g + j) = pb(i) - involute(pb(i));
                h.s.at(i, g + j) = detail::form_q(pa(i), pb(i));
            } else {
                LaurentPoly paa = detail::form_p(pa(i), pa(j));
                LaurentPoly pbb = detail::form_p(pb(i), pb(j));
                LaurentPoly pab = detail::form_p(pa(i), pb(j));
                h.s.at(i, j) = (i < j) ? paa : -paa;
                h.s.at(g + i, g + j) = (i < j) ? pbb : -pbb;
                h.s.at(i, g + j) = (i < j) ? pab : -pab;
            }
        }
    }
    // lower-left block from skew-Hermitian symmetry
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            h.s.at(g + i, j) = -involute(h.s.at(j, g + i));

    h.del.reserve(static_cast<size_t>(2 * g));
    LaurentPoly one = LaurentPoly::constant(n, 1);
    for (int i = 1; i <= 2 * g; ++i) h.del.push_back(phi_of_gen(phi, i) - one);
    h.nu = fox_row(phi, boundary_word(g));
    return h;
}

// <x, y> = x^T S involute(y) over the fraction field
inline RingFrac form_eval(const PointedHermModule& h, const std::vector<RingFrac>& x,
                          const std::vector<RingFrac>& y) {
    if (static_cast<int>(x.size()) != h.rank() || static_cast<int>(y.size()) != h.rank())
        throw invalid_input("form_eval: vector size mismatch");
    int n = h.phi.nvars;
    RingFrac acc = RingFrac::zero(n);
    for (int i = 0; i < h.rank(); ++i) {
        if (x[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < h.rank(); ++j) {
            if (y[static_cast<size_t>(j)].is_zero()) continue;
            acc += x[static_cast<size_t>(i)] * RingFrac(h.s.at(i, j)) * involute(y[static_cast<size_t>(j)]);
        }
    }
    return acc;
}

// index of the k-th basis vector of the left factor inside the joined surface
inline int tensor_index_left(int g, int h, int k) {
    return k < g ? k : (g + h) + (k - g);
}

// index of the k-th basis vector of the right factor inside the joined surface
inline int tensor_index_right(int g, int h, int k) {
    return k < h ? g + k : (g + h) + g + (k - h);
}

// pointed sum: block diagonal in the two forms plus the cross terms
// +del_i bar(del'_j) and -del'_i bar(del_j) coupling the two points
inline PointedHermModule tensor_pointed(const PointedHermModule& x, const PointedHermModule& y) {
    if (x.phi.nvars != y.phi.nvars) throw invalid_input("tensor_pointed: variable count mismatch");
    int g = x.genus, h = y.genus, n = x.phi.nvars;
    PointedHermModule r;
    r.genus = g + h;
    r.phi.ngens = 2 * (g + h);
    r.phi.nvars = n;
    r.phi.val.assign(static_cast<size_t>(2 * (g + h)), Exp(static_cast<size_t>(n), 0));
    r.s = MatR(2 * (g + h), 2 * (g + h), n);
    r.del.assign(static_cast<size_t>(2 * (g + h)), LaurentPoly(n));
    r.nu.assign(static_cast<size_t>(2 * (g + h)), LaurentPoly(n));

    for (int i = 0; i < 2 * g; ++i) {
        int pi = tensor_index_left(g, h, i);
        r.phi.val[static_cast<size_t>(pi)] = x.phi.val[static_cast<size_t>(i)];
        r.del[static_cast<size_t>(pi)] = x.del[static_cast<size_t>(i)];
        r.nu[static_cast<size_t>(pi)] = x.nu[static_cast<size_t>(i)];
    }
    for (int i = 0; i < 2 * h; ++i) {
        int pi = tensor_index_right(g, h, i);
        r.phi.val[static_cast<size_t>(pi)] = y.phi.val[static_cast<size_t>(i)];
        r.del[static_cast<size_t>(pi)] = y.del[static_cast<size_t>(i)];
        r.nu[static_cast<size_t>(pi)] = y.nu[static_cast<size_t>(i)];
    }
    for (int i = 0; i < 2 * g; ++i)
        for (int j = 0; j < 2 * g; ++j)
            r.s.at(tensor_index_left(g, h, i), tensor_index_left(g, h, j)) = x.s.at(i, j);
    for (int i = 0; i < 2 * h; ++i)
        for (int j = 0; j < 2 * h; ++j)
            r.s.at(tensor_index_right(g, h, i), tensor_index_right(g, h, j)) = y.s.at(i, j);
    for (int i = 0; i < 2 * g; ++i)
        for (int j = 0; j < 2 * h; ++j) {
            r.s.at(tensor_index_left(g, h, i), tensor_index_right(g, h, j)) =
                x.del[static_cast<size_t>(i)] * involute(y.del[static_cast<size_t>(j)]);
            r.s.at(tensor_index_right(g, h, j), tensor_index_left(g, h, i)) =
                -(y.del[static_cast<size_t>(j)] * involute(x.del[static_cast<size_t>(i)]));
        }
    return r;
}

} // namespace magnus
