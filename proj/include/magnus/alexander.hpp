// The Alexander function of a presented cobordism, its graded-morphism form,
// module orders, transversal-projected operators extracted from a Lagrangian
// relation, the scalar-times-operator factorization check, and the wedge of an
// integral relation basis.
//
// Sign conventions, fixed once and shared by every operator here:
//   * vol is the coefficient of the slot-ascending top wedge of the target;
//   * the coefficient of the output wedge with mask D is the pairing against
//     the complementary mask C = ~D, weighted by merge_sign(D, C);
//   * lower-boundary vectors embed into the joined boundary module with a
//     minus sign, matching the (-m_-) (+) m_+ map that cuts out the relation.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "magnus/cobordism.hpp"
#include "magnus/errors.hpp"
#include "magnus/exterior.hpp"
#include "magnus/lagrangian.hpp"
#include "magnus/lattice.hpp"
#include "magnus/magnus_functor.hpp"
#include "magnus/matrix.hpp"

namespace magnus {

// ---------------------------------------------------------------------------
// the Alexander function
// ---------------------------------------------------------------------------

// Determinant of the square matrix stacking the relator rows over the given
// lifted vectors, in the gauge of this presentation (no normalization), so
// that a family of evaluations shares a single scalar ambiguity.
inline LaurentPoly alexander_function_raw(const CobPresentation& c,
                                          const std::vector<std::vector<LaurentPoly>>& u) {
    int r = static_cast<int>(c.relators.size());
    int g = c.k - r;
    if (g != c.g_minus + c.g_plus)
        throw invalid_input("alexander function: presentation deficiency mismatch");
    if (static_cast<int>(u.size()) != g)
        throw invalid_input("alexander function: expected " + std::to_string(g) + " vectors");
    MatR m = h1_presentation(c);
    MatR rows(g, c.k, c.nvars);
    for (int i = 0; i < g; ++i) {
        if (static_cast<int>(u[static_cast<size_t>(i)].size()) != c.k)
            throw invalid_input("alexander function: vector length mismatch");
        for (int j = 0; j < c.k; ++j)
            rows.at(i, j) = u[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return det_bareiss(vstack(m, rows));
}

inline LaurentPoly alexander_function(const CobPresentation& c,
                                      const std::vector<std::vector<LaurentPoly>>& u) {
    return unit_normalize(alexander_function_raw(c, u)).normal;
}

// vanishing of the whole function, decided by evaluating every basis wedge
inline bool alexander_vanishes(const CobPresentation& c) {
    int g = c.k - static_cast<int>(c.relators.size());
    if (g != c.g_minus + c.g_plus)
        throw invalid_input("alexander function: presentation deficiency mismatch");
    std::vector<std::vector<LaurentPoly>> u(
        static_cast<size_t>(g),
        std::vector<LaurentPoly>(static_cast<size_t>(c.k), LaurentPoly::zero(c.nvars)));
    for (Mask s : masks_of_degree(c.k, g)) {
        int i = 0;
        for (Mask t = s; t != 0; t &= t - 1, ++i)
            u[static_cast<size_t>(i)][static_cast<size_t>(std::countr_zero(t))] =
                LaurentPoly::constant(c.nvars, 1);
        if (!alexander_function_raw(c, u).is_zero()) return false;
        i = 0;
        for (Mask t = s; t != 0; t &= t - 1, ++i)
            u[static_cast<size_t>(i)][static_cast<size_t>(std::countr_zero(t))] =
                LaurentPoly::zero(c.nvars);
    }
    return true;
}

// ---------------------------------------------------------------------------
// the graded morphism induced on exterior powers of the boundary modules
// ---------------------------------------------------------------------------

// The image of a lower basis wedge x is pinned by pairing against all upper
// wedges y of complementary degree: evaluating the function on the wedge of
// boundary images  m_-(x) ^ m_+(y)  yields the volume pairing of the image
// with y.  All blocks share the gauge of the presentation, so the result is
// ambiguous by one overall unit only.
inline GradedMap<LaurentPoly> alex_morphism(const CobPresentation& c) {
    int r = static_cast<int>(c.relators.size());
    int g = c.k - r;
    if (g != c.g_minus + c.g_plus)
        throw invalid_input("alexander function: presentation deficiency mismatch");
    int src = 2 * c.g_minus, tgt = 2 * c.g_plus;
    GradedMap<LaurentPoly> out{src, tgt, c.g_plus - c.g_minus, c.nvars, {}};
    MatR fox = h1_presentation(c);
    auto [lo, hi] = boundary_matrices(c);
    for (int j = 0; j <= src; ++j) {
        int cdeg = g - j;
        if (cdeg < 0 || cdeg > tgt) continue;
        for (Mask b : masks_of_degree(src, j))
            for (Mask cm : masks_of_degree(tgt, cdeg)) {
                MatR m(c.k, c.k, c.nvars);
                for (int i = 0; i < r; ++i)
                    for (int t = 0; t < c.k; ++t) m.at(i, t) = fox.at(i, t);
                int row = r;
                for (Mask t = b; t != 0; t &= t - 1, ++row) {
                    int col = std::countr_zero(t);
                    for (int s = 0; s < c.k; ++s) m.at(row, s) = lo.at(s, col);
                }
                for (Mask t = cm; t != 0; t &= t - 1, ++row) {
                    int col = std::countr_zero(t);
                    for (int s = 0; s < c.k; ++s) m.at(row, s) = hi.at(s, col);
                }
                LaurentPoly val = det_bareiss(m);
                if (val.is_zero()) continue;
                Mask d = ~cm & full_mask(tgt);
                if (merge_sign(d, cm) < 0) val = -val;
                out.set(b, d, val);
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// transversals of a Lagrangian relation
// ---------------------------------------------------------------------------

// columns are lattice vectors of the joined boundary module whose classes are
// required to form a basis of the quotient by the relation subspace
struct Transversal {
    MatR w;
};

inline void check_transversal(const LagRelation& rel, const Transversal& w) {
    int ambient = rel.src.rank() + rel.tgt.rank();
    int g = rel.src.genus + rel.tgt.genus;
    if (w.w.rows != ambient || w.w.cols != g || w.w.nvars != rel.src.phi.nvars)
        throw invalid_input("transversal: shape mismatch");
    if (rank_q(hstack(q_of_r(w.w), rel.space.basis)) != ambient)
        throw invalid_input("transversal: columns do not span the quotient");
}

// greedy deterministic choice among the standard basis vectors
inline Transversal default_transversal(const LagRelation& rel) {
    int ambient = rel.src.rank() + rel.tgt.rank();
    int g = rel.src.genus + rel.tgt.genus;
    int n = rel.src.phi.nvars;
    MatQ acc = rel.space.basis;
    int have = rank_q(acc);
    MatR w(ambient, g, n);
    int found = 0;
    for (int i = 0; i < ambient && found < g; ++i) {
        MatQ e(ambient, 1, n);
        e.at(i, 0) = RingFrac::one(n);
        MatQ trial = hstack(acc, e);
        if (rank_q(trial) > have) {
            ++have;
            acc = trial;
            w.at(i, found) = LaurentPoly::constant(n, 1);
            ++found;
        }
    }
    if (found < g) throw certification_error("transversal: standard vectors failed to span");
    return Transversal{w};
}

// the upper boundary module as a transversal (square relations only)
inline Transversal upper_transversal(const LagRelation& rel) {
    if (rel.src.genus != rel.tgt.genus)
        throw invalid_input("upper_transversal: genus mismatch");
    int ambient = rel.src.rank() + rel.tgt.rank();
    int n = rel.src.phi.nvars;
    MatR w(ambient, rel.tgt.rank(), n);
    for (int i = 0; i < rel.tgt.rank(); ++i)
        w.at(rel.src.rank() + i, i) = LaurentPoly::constant(n, 1);
    Transversal t{w};
    check_transversal(rel, t);
    return t;
}

inline Transversal lower_transversal(const LagRelation& rel) {
    if (rel.src.genus != rel.tgt.genus)
        throw invalid_input("lower_transversal: genus mismatch");
    int ambient = rel.src.rank() + rel.tgt.rank();
    int n = rel.src.phi.nvars;
    MatR w(ambient, rel.src.rank(), n);
    for (int i = 0; i < rel.src.rank(); ++i) w.at(i, i) = LaurentPoly::constant(n, 1);
    Transversal t{w};
    check_transversal(rel, t);
    return t;
}

// coordinates of the classes of the given column vectors in the basis formed
// by the transversal columns' classes
inline MatQ quotient_coordinates(const LagRelation& rel, const Transversal& w, const MatQ& v) {
    int g = rel.src.genus + rel.tgt.genus;
    MatQ m = hstack(q_of_r(w.w), rel.space.basis);
    auto sol = solve_multi(m, v);
    if (!sol) throw invalid_input("transversal: columns do not span the quotient");
    MatQ out(g, v.cols, v.nvars);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < v.cols; ++j) out.at(i, j) = sol->at(i, j);
    return out;
}

// determinant relating the operators of two transversals of one relation:
// the second operator equals ratio * the first
inline RingFrac transversal_ratio(const LagRelation& rel, const Transversal& wsecond,
                                  const Transversal& wfirst) {
    check_transversal(rel, wsecond);
    MatQ t = quotient_coordinates(rel, wfirst, q_of_r(wsecond.w));
    RingFrac d = det_q(t);
    if (d.is_zero()) throw invalid_input("transversal: columns do not span the quotient");
    return RingFrac::one(d.nvars()) / d;
}

// ---------------------------------------------------------------------------
// the transversal-projected operator of a Lagrangian relation
// ---------------------------------------------------------------------------

inline GradedMap<RingFrac> mag_w_operator(const LagRelation& rel, const Transversal& w) {
    check_transversal(rel, w);
    int gm = rel.src.genus, gp = rel.tgt.genus, g = gm + gp;
    int src = 2 * gm, tgt = 2 * gp;
    int n = rel.src.phi.nvars;
    // classes of the embedded basis vectors: (-e_i; 0) and (0; e_j)
    MatQ emb(src + tgt, src + tgt, n);
    for (int i = 0; i < src; ++i) emb.at(i, i) = -RingFrac::one(n);
    for (int i = 0; i < tgt; ++i) emb.at(src + i, src + i) = RingFrac::one(n);
    MatQ pc = quotient_coordinates(rel, w, emb); // g x (src + tgt)
    GradedMap<RingFrac> out{src, tgt, gp - gm, n, {}};
    for (int j = 0; j <= src; ++j) {
        int cdeg = g - j;
        if (cdeg < 0 || cdeg > tgt) continue;
        for (Mask b : masks_of_degree(src, j))
            for (Mask cm : masks_of_degree(tgt, cdeg)) {
                MatQ m(g, g, n);
                int col = 0;
                for (Mask t = b; t != 0; t &= t - 1, ++col)
                    for (int i = 0; i < g; ++i) m.at(i, col) = pc.at(i, std::countr_zero(t));
                for (Mask t = cm; t != 0; t &= t - 1, ++col)
                    for (int i = 0; i < g; ++i) m.at(i, col) = pc.at(i, src + std::countr_zero(t));
                RingFrac val = det_q(m);
                if (val.is_zero()) continue;
                Mask d = ~cm & full_mask(tgt);
                if (merge_sign(d, cm) < 0) val = -val;
                out.set(b, d, val);
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// module orders along a transversal
// ---------------------------------------------------------------------------

// the image of a transversal column under (-m_-) (+) m_+, in generator coords
inline MatR transversal_images(const CobPresentation& c, const Transversal& w) {
    if (w.w.rows != 2 * (c.g_minus + c.g_plus) || w.w.nvars != c.nvars)
        throw invalid_input("transversal: shape mismatch");
    auto [lo, hi] = boundary_matrices(c);
    MatR frak = hstack(-lo, hi); // k x (2g_- + 2g_+)
    return frak * w.w;           // k x g
}

// order of the quotient of the presented module by the transversal's image:
// the presentation gains one relator row per transversal column
inline LaurentPoly ord_quotient(const CobPresentation& c, const Transversal& w) {
    MatR extra = transpose(transversal_images(c, w));
    return ord_of_presentation(vstack(h1_presentation(c), extra));
}

// ---------------------------------------------------------------------------
// the scalar-times-operator factorization
// ---------------------------------------------------------------------------

struct FactorizationReport {
    bool ok = false;
    bool degenerate = false; // both sides vanish identically
    RingFrac unit;           // morphism = unit * (order * projected operator)
    std::string mismatch;    // first discrepant entry when not ok
};

namespace detail {

inline std::string mask_to_string(Mask m) {
    std::string s = "{";
    bool first = true;
    for (Mask t = m; t != 0; t &= t - 1) {
        if (!first) s += ",";
        s += std::to_string(std::countr_zero(t) + 1);
        first = false;
    }
    return s + "}";
}

} // namespace detail

inline FactorizationReport factorization_check(const CobPresentation& c, const LagRelation& rel,
                                               const Transversal& w) {
    GradedMap<LaurentPoly> lhs = alex_morphism(c);
    GradedMap<RingFrac> rhs = RingFrac(ord_quotient(c, w)) * mag_w_operator(rel, w);
    FactorizationReport rep;
    rep.unit = RingFrac::zero(c.nvars);
    auto il = lhs.coeff.begin();
    auto ir = rhs.coeff.begin();
    while (il != lhs.coeff.end() || ir != rhs.coeff.end()) {
        std::pair<Mask, Mask> key;
        RingFrac l = RingFrac::zero(c.nvars), r = RingFrac::zero(c.nvars);
        bool take_l = ir == rhs.coeff.end() ||
                      (il != lhs.coeff.end() && il->first <= ir->first);
        bool take_r = il == lhs.coeff.end() ||
                      (ir != rhs.coeff.end() && ir->first <= il->first);
        if (take_l) {
            key = il->first;
            l = RingFrac(il->second);
            ++il;
        }
        if (take_r) {
            key = ir->first;
            r = ir->second;
            ++ir;
        }
        std::string at = "entry " + detail::mask_to_string(key.first) + " -> " +
                         detail::mask_to_string(key.second);
        if (l.is_zero() != r.is_zero()) {
            rep.mismatch = at + ": one side vanishes (morphism " + to_string(l) +
                           ", order * operator " + to_string(r) + ")";
            return rep;
        }
        if (rep.unit.is_zero()) {
            RingFrac u = l / r;
            if (!u.den.is_one() || !u.num.is_monomial_unit()) {
                rep.mismatch = at + ": ratio " + to_string(u) + " is not a unit";
                return rep;
            }
            rep.unit = u;
            continue;
        }
        if (l != rep.unit * r) {
            rep.mismatch = at + ": morphism " + to_string(l) + " is not " +
                           to_string(rep.unit) + " times " + to_string(r);
            return rep;
        }
    }
    rep.ok = true;
    rep.degenerate = rep.unit.is_zero();
    return rep;
}

inline FactorizationReport factorization_check(const CobPresentation& c, const Transversal& w) {
    return factorization_check(c, mag_kernel(c), w);
}

inline FactorizationReport factorization_check(const CobPresentation& c) {
    LagRelation rel = mag_kernel(c);
    return factorization_check(c, rel, default_transversal(rel));
}

// ---------------------------------------------------------------------------
// boundary-basis evaluation of the Alexander function
// ---------------------------------------------------------------------------

// Order along the transversal times the determinant of the coordinates of the
// given generator-basis vectors in the basis of classes of the transversal's
// images; zero when those images fail to span the rational homology.
inline RingFrac alexander_via_transversal(const CobPresentation& c, const Transversal& w,
                                          const std::vector<std::vector<LaurentPoly>>& y) {
    int g = c.g_minus + c.g_plus;
    if (static_cast<int>(y.size()) != g)
        throw invalid_input("alexander function: expected " + std::to_string(g) + " vectors");
    MatQ a = hstack(q_of_r(transversal_images(c, w)),
                    q_of_r(transpose(h1_presentation(c))));
    if (rank_q(a) < c.k) return RingFrac::zero(c.nvars);
    MatQ v(c.k, g, c.nvars);
    for (int j = 0; j < g; ++j) {
        if (static_cast<int>(y[static_cast<size_t>(j)].size()) != c.k)
            throw invalid_input("alexander function: vector length mismatch");
        for (int i = 0; i < c.k; ++i)
            v.at(i, j) = RingFrac(y[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    }
    auto sol = solve_multi(a, v);
    if (!sol) throw certification_error("boundary basis: solve failed after rank check");
    MatQ coords(g, g, c.nvars);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) coords.at(i, j) = sol->at(i, j);
    return RingFrac(ord_quotient(c, w)) * det_q(coords);
}

// strip the unit ambiguity of a fraction for gauge-insensitive comparisons
inline RingFrac gauge_normal(const RingFrac& x) {
    return RingFrac(unit_normalize(x.num).normal, x.den);
}

// ---------------------------------------------------------------------------
// the wedge of an integral relation basis
// ---------------------------------------------------------------------------

// primitive integer basis of the relation subspace (trivial coefficient group
// only): clear denominators, then saturate by a double orthogonal complement
inline MatZ relation_lattice(const LagRelation& rel) {
    if (rel.src.phi.nvars != 0)
        throw invalid_input("relation lattice: coefficient group must be trivial");
    const MatQ& b = rel.space.basis;
    MatZ m(b.rows, b.cols, 0);
    for (int j = 0; j < b.cols; ++j) {
        Int scale = 1;
        for (int i = 0; i < b.rows; ++i) {
            Int den = augment(b.at(i, j).den);
            scale = scale / int_gcd(scale, den) * den;
        }
        for (int i = 0; i < b.rows; ++i) {
            const RingFrac& e = b.at(i, j);
            m.at(i, j) = augment(e.num) * (scale / augment(e.den));
        }
    }
    MatZ sat = kernel_z(transpose(kernel_z(transpose(m))));
    if (sat.rows != b.rows || sat.cols != b.cols)
        throw certification_error("relation lattice: saturation changed the rank");
    return sat;
}

inline MultiVector<Int> pluecker_vector(const LagRelation& rel) {
    MatZ sat = relation_lattice(rel);
    MultiVector<Int> pl(sat.rows, 0, 0);
    pl.terms.emplace(0u, Int(1));
    for (int j = 0; j < sat.cols; ++j) {
        std::vector<Int> col(static_cast<size_t>(sat.rows));
        for (int i = 0; i < sat.rows; ++i) col[static_cast<size_t>(i)] = sat.at(i, j);
        pl = wedge(pl, single_vector<Int>(sat.rows, col, 0));
    }
    return pl;
}

// a lattice complement of the relation subspace, as a transversal
inline Transversal section_transversal(const LagRelation& rel) {
    MatZ w = complement_saturated(relation_lattice(rel));
    return Transversal{r_of_z(w, 0)};
}

// Reading of the relation wedge as a graded operator: a term carrying lower
// mask D and upper mask B feeds the input wedge on the complement of D, with
// the inversion sign of (D, complement).
// Operator form of the relation wedge, normalized to the same volume pairing
// as the transversal-projected operator: the coefficient at (B -> D) is the
// Laplace expansion of det [embedded basis columns | lattice basis] along the
// embedded columns, where the lower boundary embeds with a minus sign.  With
// R = B joined to the shifted complement of D, that expansion contributes
// (-1)^|B| merge_sign(D, ~D) merge_sign(R, ~R) times the wedge coefficient at
// the complement of R.  Any integral transversal then differs from this
// operator by one global sign times its lattice ratio.
inline GradedMap<Int> pluecker(const LagRelation& rel) {
    MultiVector<Int> pl = pluecker_vector(rel);
    int src = rel.src.rank(), tgt = rel.tgt.rank();
    GradedMap<Int> out{src, tgt, rel.tgt.genus - rel.src.genus, 0, {}};
    for (const auto& [m, c] : pl.terms) {
        Mask smask = m & full_mask(src);
        Mask dmask = static_cast<Mask>(m >> src) & full_mask(tgt);
        Mask bmask = ~smask & full_mask(src);
        Mask cmask = ~dmask & full_mask(tgt);
        Mask rmask = bmask | (cmask << src);
        int sign = merge_sign(dmask, cmask) * merge_sign(rmask, m);
        if (std::popcount(bmask) % 2 != 0) sign = -sign;
        out.set(bmask, dmask, sign < 0 ? Int(-c) : c);
    }
    return out;
}

} // namespace magnus
