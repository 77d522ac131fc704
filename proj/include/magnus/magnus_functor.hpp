// The Magnus functor: objects from the surface form, morphism values as
// pointed Lagrangian relations computed two independent ways (boundary kernel
// of a presentation, and composition of standard Heegaard factors), plus the
// Magnus representation of homology cobordisms.
#pragma once

#include "magnus/cobordism.hpp"
#include "magnus/lagrangian.hpp"

namespace magnus {

inline PointedHermModule mag_object(int g, const PhiValuation& phi) { return build_module(g, phi); }

// Valuations induced on the boundary surfaces of a presentation.
inline PhiValuation phi_minus_of(const CobPresentation& c) {
    PhiValuation p;
    p.ngens = 2 * c.g_minus;
    p.nvars = c.nvars;
    for (const Word& w : c.m_minus) p.val.push_back(phi_exponent(c.phi, w));
    return p;
}

inline PhiValuation phi_plus_of(const CobPresentation& c) {
    PhiValuation p;
    p.ngens = 2 * c.g_plus;
    p.nvars = c.nvars;
    for (const Word& w : c.m_plus) p.val.push_back(phi_exponent(c.phi, w));
    return p;
}

// Mag of a presented cobordism: the closure of the kernel of
// (-m_minus) + m_plus into the homology of the cobordism. A boundary pair
// (x, y) is in the kernel iff -M_lo x + M_hi y lands in the row space of the
// relator Fox matrix, so the kernel is computed on the augmented system and
// projected back to the boundary coordinates.
inline LagRelation mag_kernel(const CobPresentation& c) {
    auto [lo, hi] = boundary_matrices(c);
    MatR fox = h1_presentation(c);
    int nb = 2 * (c.g_minus + c.g_plus);
    MatQ a = hstack(hstack(q_of_r(-lo), q_of_r(hi)), q_of_r(transpose(fox)));
    MatQ raw = kernel_of(a);
    MatQ proj(nb, raw.cols, c.nvars);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < raw.cols; ++j) proj.at(i, j) = raw.at(i, j);
    LagRelation r{mag_object(c.g_minus, phi_minus_of(c)), mag_object(c.g_plus, phi_plus_of(c)),
                  echelon_space(nb, proj)};
    certify_relation(r);
    return r;
}

namespace detail {

// Mag of the compression piece C0^r joined with an identity cylinder: the
// r compressed handles die on the target side, the rest flows through.
inline LagRelation lower_handlebody_relation(const PointedHermModule& src,
                                             const PointedHermModule& mid, int r) {
    int g = src.genus, ghat = mid.genus, n = src.phi.nvars;
    MatQ gens(2 * g + 2 * ghat, r + 2 * g, n);
    RingFrac one = RingFrac::one(n);
    for (int i = 0; i < r; ++i) gens.at(2 * g + i, i) = one;               // (0; a_i)
    for (int j = 0; j < g; ++j) {
        gens.at(j, r + j) = one;                                           // a_j with
        gens.at(2 * g + r + j, r + j) = one;                               //   a_{r+j}
        gens.at(g + j, r + g + j) = one;                                   // b_j with
        gens.at(2 * g + ghat + r + j, r + g + j) = one;                    //   b_{r+j}
    }
    return make_relation(src, mid, gens);
}

// Mag of the capping piece C_r^0 joined with an identity cylinder: the first
// r upper b-handles die on the source side.
inline LagRelation upper_handlebody_relation(const PointedHermModule& mid,
                                             const PointedHermModule& tgt, int r) {
    int g = tgt.genus, ghat = mid.genus, n = tgt.phi.nvars;
    MatQ gens(2 * ghat + 2 * g, r + 2 * g, n);
    RingFrac one = RingFrac::one(n);
    for (int j = 0; j < r; ++j) gens.at(ghat + j, j) = one;                // (b_j; 0)
    for (int i = 0; i < g; ++i) {
        gens.at(r + i, r + i) = one;                                       // a_{r+i} with
        gens.at(2 * ghat + i, r + i) = one;                                //   a_i
        gens.at(ghat + r + i, r + g + i) = one;                            // b_{r+i} with
        gens.at(2 * ghat + g + i, r + g + i) = one;                        //   b_i
    }
    return make_relation(mid, tgt, gens);
}

} // namespace detail

// Mag through the Heegaard decomposition: compression piece, then the graph
// of the gluing Jacobian, then the capping piece. Entirely independent of
// the presentation route.
inline LagRelation mag_heegaard(const HeegaardData& h) {
    validate_heegaard(h);
    int ghat = h.ghat();
    PointedHermModule src = mag_object(h.g_minus, phi_minus_of(h));
    PointedHermModule tgt = mag_object(h.g_plus, phi_plus_of(h));
    PointedHermModule mid_lower = mag_object(ghat, pullback(h.phi_hat, h.f));
    PointedHermModule mid_upper = mag_object(ghat, h.phi_hat);
    LagRelation bottom = detail::lower_handlebody_relation(src, mid_lower, h.r_minus);
    LagRelation glue = graph_relation(mid_lower, mid_upper, q_of_r(jacobian(h.f, h.phi_hat)));
    LagRelation top = detail::upper_handlebody_relation(mid_upper, tgt, h.r_plus);
    return compose(top, compose(glue, bottom));
}

// Magnus representation of a homology cobordism: the matrix of
// (m_plus)^{-1} m_minus on rationalized twisted homology. Columns are
// obtained by solving M_hi z = M_lo e_j modulo the relator row space;
// existence for all j and uniqueness of the boundary part are exactly the
// homology-cobordism conditions.
inline MatQ magnus_rep(const CobPresentation& c) {
    if (c.g_minus != c.g_plus) throw invalid_input("magnus_rep: boundary genera differ");
    int g = c.g_plus;
    auto [lo, hi] = boundary_matrices(c);
    MatR fox = h1_presentation(c);
    MatQ a = hstack(q_of_r(hi), q_of_r(transpose(fox)));
    if (rank_q(a) != c.k)
        throw invalid_input("magnus_rep: upper boundary map is not surjective on homology");
    MatQ ker = kernel_of(a);
    for (int i = 0; i < 2 * g; ++i)
        for (int j = 0; j < ker.cols; ++j)
            if (!ker.at(i, j).is_zero())
                throw invalid_input("magnus_rep: upper boundary map is not injective on homology");
    auto sol = solve_multi(a, q_of_r(lo));
    if (!sol) throw invalid_input("magnus_rep: lower boundary does not factor through the upper map");
    MatQ r(2 * g, 2 * g, c.nvars);
    for (int i = 0; i < 2 * g; ++i)
        for (int j = 0; j < 2 * g; ++j) r.at(i, j) = sol->at(i, j);

    MatQ s_src = q_of_r(build_module(g, phi_minus_of(c)).s);
    MatQ s_tgt = q_of_r(build_module(g, phi_plus_of(c)).s);
    if (transpose(r) * s_tgt * involute(r) != s_src)
        throw certification_error("magnus_rep: representation is not unitary");
    return r;
}

} // namespace magnus
