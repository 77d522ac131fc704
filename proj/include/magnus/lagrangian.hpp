// Pointed Lagrangian relations between surface modules.
//
// A relation from H to H' is a subspace N of H_Q (+) H'_Q that is
// half-dimensional, isotropic for (-<,>_H) (+) <,>_H', and contains the pair
// of boundary points.  Relations compose by pullback over the shared middle
// module; composites and tensors are re-certified, so a failure here means a
// broken invariant rather than bad user input.
#pragma once

#include <string>
#include <vector>

#include "magnus/herm_module.hpp"
#include "magnus/matrix.hpp"

namespace magnus {

struct LagRelation {
    PointedHermModule src;
    PointedHermModule tgt;
    Subspace space; // ambient src.rank() + tgt.rank(), reduced column echelon

    friend bool operator==(const LagRelation& x, const LagRelation& y) {
        return x.src == y.src && x.tgt == y.tgt && x.space == y.space;
    }
    friend bool operator!=(const LagRelation& x, const LagRelation& y) { return !(x == y); }
};

// (-S_src) (+) S_tgt on the joined ambient space
inline MatQ big_form(const PointedHermModule& src, const PointedHermModule& tgt) {
    int n = src.phi.nvars;
    MatQ b(src.rank() + tgt.rank(), src.rank() + tgt.rank(), n);
    for (int i = 0; i < src.rank(); ++i)
        for (int j = 0; j < src.rank(); ++j) b.at(i, j) = RingFrac(-src.s.at(i, j));
    for (int i = 0; i < tgt.rank(); ++i)
        for (int j = 0; j < tgt.rank(); ++j)
            b.at(src.rank() + i, src.rank() + j) = RingFrac(tgt.s.at(i, j));
    return b;
}

inline std::vector<RingFrac> joined_point(const PointedHermModule& src, const PointedHermModule& tgt) {
    std::vector<RingFrac> v;
    v.reserve(static_cast<size_t>(src.rank() + tgt.rank()));
    for (const auto& p : src.nu) v.emplace_back(p);
    for (const auto& p : tgt.nu) v.emplace_back(p);
    return v;
}

inline void certify_relation(const LagRelation& r, bool pointed = true) {
    if (r.src.phi.nvars != r.tgt.phi.nvars)
        throw certification_error("relation: variable count mismatch");
    if (r.space.ambient != r.src.rank() + r.tgt.rank())
        throw certification_error("relation: ambient dimension mismatch");
    if (r.space.dim() != r.src.genus + r.tgt.genus)
        throw certification_error("relation: subspace is not half-dimensional (dim " +
                                  std::to_string(r.space.dim()) + ", expected " +
                                  std::to_string(r.src.genus + r.tgt.genus) + ")");
    MatQ gram = transpose(r.space.basis) * big_form(r.src, r.tgt) * involute(r.space.basis);
    for (const auto& e : gram.a)
        if (!e.is_zero()) throw certification_error("relation: subspace is not isotropic");
    // the point (nu, nu') lies in N iff (nu/2, nu'/2) does
    if (pointed && !span_contains(r.space, joined_point(r.src, r.tgt)))
        throw certification_error("relation: boundary point not contained");
}

inline LagRelation make_relation(const PointedHermModule& src, const PointedHermModule& tgt,
                                 const MatQ& gens, bool pointed = true) {
    LagRelation r{src, tgt, echelon_space(src.rank() + tgt.rank(), gens)};
    certify_relation(r, pointed);
    return r;
}

inline LagRelation identity_relation(const PointedHermModule& h) {
    int n = h.phi.nvars;
    MatQ gens(2 * h.rank(), h.rank(), n);
    for (int i = 0; i < h.rank(); ++i) {
        gens.at(i, i) = RingFrac::one(n);
        gens.at(h.rank() + i, i) = RingFrac::one(n);
    }
    return make_relation(h, h, gens);
}

// graph of an invertible, unitary, point-preserving map psi: H_src -> H_tgt
inline LagRelation graph_relation(const PointedHermModule& src, const PointedHermModule& tgt,
                                  const MatQ& psi) {
    if (psi.rows != tgt.rank() || psi.cols != src.rank())
        throw invalid_input("graph_relation: matrix shape mismatch");
    if (src.rank() != tgt.rank() || rank_q(psi) != psi.rows)
        throw certification_error("graph_relation: map is not invertible");
    if (transpose(psi) * q_of_r(tgt.s) * involute(psi) != q_of_r(src.s))
        throw certification_error("graph_relation: map is not unitary");
    std::vector<RingFrac> nu_src;
    for (const auto& p : src.nu) nu_src.emplace_back(p);
    std::vector<RingFrac> mapped = psi * nu_src;
    for (int i = 0; i < tgt.rank(); ++i)
        if (mapped[static_cast<size_t>(i)] != RingFrac(tgt.nu[static_cast<size_t>(i)]))
            throw certification_error("graph_relation: boundary point not preserved");
    int n = src.phi.nvars;
    MatQ gens(src.rank() + tgt.rank(), src.rank(), n);
    for (int j = 0; j < src.rank(); ++j) {
        gens.at(j, j) = RingFrac::one(n);
        for (int i = 0; i < tgt.rank(); ++i) gens.at(src.rank() + i, j) = psi.at(i, j);
    }
    return make_relation(src, tgt, gens);
}

// relation composition second(first): pairs (x, z) with (x, y) in first and
// (y, z) in second for some y
inline LagRelation compose(const LagRelation& second, const LagRelation& first) {
    if (first.tgt != second.src)
        throw invalid_input("compose: middle modules differ");
    int na = first.src.rank(), nb = first.tgt.rank(), nc = second.tgt.rank();
    int nvars = first.src.phi.nvars;
    int d1 = first.space.dim(), d2 = second.space.dim();
    // match middle coordinates: kernel of [V1 | -U2]
    MatQ match(nb, d1 + d2, nvars);
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < d1; ++j) match.at(i, j) = first.space.basis.at(na + i, j);
        for (int j = 0; j < d2; ++j) match.at(i, d1 + j) = -second.space.basis.at(i, j);
    }
    MatQ k = kernel_of(match);
    MatQ gens(na + nc, k.cols, nvars);
    for (int col = 0; col < k.cols; ++col) {
        for (int i = 0; i < na; ++i) {
            RingFrac acc = RingFrac::zero(nvars);
            for (int j = 0; j < d1; ++j) acc += first.space.basis.at(i, j) * k.at(j, col);
            gens.at(i, col) = acc;
        }
        for (int i = 0; i < nc; ++i) {
            RingFrac acc = RingFrac::zero(nvars);
            for (int j = 0; j < d2; ++j) acc += second.space.basis.at(nb + i, j) * k.at(d1 + j, col);
            gens.at(na + i, col) = acc;
        }
    }
    return make_relation(first.src, second.tgt, gens);
}

inline LagRelation tensor_relation(const LagRelation& x, const LagRelation& y) {
    PointedHermModule src = tensor_pointed(x.src, y.src);
    PointedHermModule tgt = tensor_pointed(x.tgt, y.tgt);
    int ga = x.src.genus, gb = y.src.genus, gc = x.tgt.genus, gd = y.tgt.genus;
    int nvars = src.phi.nvars;
    int off = src.rank();
    MatQ gens(src.rank() + tgt.rank(), x.space.dim() + y.space.dim(), nvars);
    for (int j = 0; j < x.space.dim(); ++j) {
        for (int i = 0; i < 2 * ga; ++i)
            gens.at(tensor_index_left(ga, gb, i), j) = x.space.basis.at(i, j);
        for (int i = 0; i < 2 * gc; ++i)
            gens.at(off + tensor_index_left(gc, gd, i), j) = x.space.basis.at(2 * ga + i, j);
    }
    for (int j = 0; j < y.space.dim(); ++j) {
        int col = x.space.dim() + j;
        for (int i = 0; i < 2 * gb; ++i)
            gens.at(tensor_index_right(ga, gb, i), col) = y.space.basis.at(i, j);
        for (int i = 0; i < 2 * gd; ++i)
            gens.at(off + tensor_index_right(gc, gd, i), col) = y.space.basis.at(2 * gb + i, j);
    }
    return make_relation(src, tgt, gens);
}

} // namespace magnus
