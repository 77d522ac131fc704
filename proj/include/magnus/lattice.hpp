// Exact integer lattice computations: saturated kernels, integer linear
// solves, and complements of saturated sublattices.  All transformations are
// unimodular, so the results are honest lattice bases.
#pragma once

#include <cstdlib>
#include <optional>
#include <vector>

#include "magnus/matrix.hpp"

namespace magnus {

namespace detail {

struct ColReduction {
    MatZ h;                      // column-reduced copy of the input
    MatZ u;                      // unimodular: input * u = h
    std::vector<int> pivot_cols; // in establishment order
    std::vector<int> pivot_rows; // pivot_rows[i] is the row of pivot_cols[i]
};

// clear each row left to right with unimodular column operations; after the
// pass, non-pivot columns of h are identically zero
inline ColReduction column_reduce(const MatZ& a) {
    ColReduction out;
    out.h = a;
    out.u = MatZ::identity(a.cols, 0);
    MatZ& h = out.h;
    MatZ& u = out.u;
    int npiv = 0;
    for (int r = 0; r < a.rows && npiv < a.cols; ++r) {
        while (true) {
            int best = -1;
            for (int c = npiv; c < a.cols; ++c) {
                if (h.at(r, c) == 0) continue;
                if (best < 0 || cmp(abs(h.at(r, c)), abs(h.at(r, best))) < 0) best = c;
            }
            if (best < 0) break; // row is clear
            if (best != npiv) {
                for (int i = 0; i < h.rows; ++i) std::swap(h.at(i, best), h.at(i, npiv));
                for (int i = 0; i < u.rows; ++i) std::swap(u.at(i, best), u.at(i, npiv));
            }
            if (h.at(r, npiv) < 0) {
                for (int i = 0; i < h.rows; ++i) h.at(i, npiv) = -h.at(i, npiv);
                for (int i = 0; i < u.rows; ++i) u.at(i, npiv) = -u.at(i, npiv);
            }
            bool clean = true;
            for (int c = npiv + 1; c < a.cols; ++c) {
                if (h.at(r, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(r, c).get_mpz_t(), h.at(r, npiv).get_mpz_t());
                if (q != 0) {
                    for (int i = 0; i < h.rows; ++i) h.at(i, c) -= q * h.at(i, npiv);
                    for (int i = 0; i < u.rows; ++i) u.at(i, c) -= q * u.at(i, npiv);
                }
                if (h.at(r, c) != 0) clean = false;
            }
            if (clean) {
                bool only_pivot = true;
                for (int c = npiv + 1; c < a.cols; ++c)
                    if (h.at(r, c) != 0) { only_pivot = false; break; }
                if (only_pivot) {
                    out.pivot_cols.push_back(npiv);
                    out.pivot_rows.push_back(r);
                    ++npiv;
                    break;
                }
            }
        }
    }
    return out;
}

} // namespace detail

// saturated basis of { x : a x = 0 } as matrix columns
inline MatZ kernel_z(const MatZ& a) {
    detail::ColReduction red = detail::column_reduce(a);
    int npiv = static_cast<int>(red.pivot_cols.size());
    MatZ k(a.cols, a.cols - npiv, 0);
    for (int j = npiv; j < a.cols; ++j)
        for (int i = 0; i < a.cols; ++i) k.at(i, j - npiv) = red.u.at(i, j);
    return k;
}

// some integer solution of a x = b, if one exists
inline std::optional<std::vector<Int>> solve_z(const MatZ& a, const std::vector<Int>& b) {
    if (a.rows != static_cast<int>(b.size())) throw invalid_input("solve_z: shape mismatch");
    detail::ColReduction red = detail::column_reduce(a);
    std::vector<Int> y(static_cast<size_t>(a.cols), 0);
    for (size_t k = 0; k < red.pivot_cols.size(); ++k) {
        int r = red.pivot_rows[k];
        int p = red.pivot_cols[k];
        Int acc = b[static_cast<size_t>(r)];
        for (size_t i = 0; i < k; ++i) acc -= red.h.at(r, red.pivot_cols[i]) * y[static_cast<size_t>(red.pivot_cols[i])];
        if (!int_divides(red.h.at(r, p), acc)) return std::nullopt;
        y[static_cast<size_t>(p)] = int_divexact(acc, red.h.at(r, p));
    }
    std::vector<Int> x(static_cast<size_t>(a.cols), 0);
    for (int i = 0; i < a.cols; ++i)
        for (int j = 0; j < a.cols; ++j) x[static_cast<size_t>(i)] += red.u.at(i, j) * y[static_cast<size_t>(j)];
    // consistency over the non-pivot rows
    for (int r = 0; r < a.rows; ++r) {
        Int acc = 0;
        for (int c = 0; c < a.cols; ++c) acc += a.at(r, c) * x[static_cast<size_t>(c)];
        if (acc != b[static_cast<size_t>(r)]) return std::nullopt;
    }
    return x;
}

// a complement of a saturated full-column-rank sublattice: columns w with
// span_Z(n) + span_Z(w) = Z^rows as a direct sum
inline MatZ complement_saturated(const MatZ& n) {
    int rows = n.rows, cols = n.cols;
    MatZ h = n;
    MatZ linv = MatZ::identity(rows, 0); // inverse of the accumulated row ops
    auto swap_rows = [&](int i, int j) {
        for (int c = 0; c < h.cols; ++c) std::swap(h.at(i, c), h.at(j, c));
        for (int r = 0; r < rows; ++r) std::swap(linv.at(r, i), linv.at(r, j));
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < h.cols; ++c) h.at(i, c) = -h.at(i, c);
        for (int r = 0; r < rows; ++r) linv.at(r, i) = -linv.at(r, i);
    };
    auto row_sub = [&](int i, const Int& q, int j) { // row_i -= q * row_j
        for (int c = 0; c < h.cols; ++c) h.at(i, c) -= q * h.at(j, c);
        for (int r = 0; r < rows; ++r) linv.at(r, j) += q * linv.at(r, i);
    };

    int top = 0;
    for (int c = 0; c < cols; ++c) {
        while (true) {
            int best = -1;
            for (int r = top; r < rows; ++r) {
                if (h.at(r, c) == 0) continue;
                if (best < 0 || cmp(abs(h.at(r, c)), abs(h.at(best, c))) < 0) best = r;
            }
            if (best < 0) throw invalid_input("complement_saturated: rank deficient");
            if (best != top) swap_rows(best, top);
            if (h.at(top, c) < 0) negate_row(top);
            bool clean = true;
            for (int r = top + 1; r < rows; ++r) {
                if (h.at(r, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(r, c).get_mpz_t(), h.at(top, c).get_mpz_t());
                if (q != 0) row_sub(r, q, top);
                if (h.at(r, c) != 0) clean = false;
            }
            if (clean) break;
        }
        ++top;
    }
    for (int c = 0; c < cols; ++c)
        if (h.at(c, c) != 1)
            throw certification_error("complement_saturated: sublattice is not saturated");
    for (int c = cols - 1; c >= 0; --c)
        for (int r = 0; r < c; ++r)
            if (h.at(r, c) != 0) {
                Int q = h.at(r, c); // copy: row_sub writes through this entry
                row_sub(r, q, c);
            }

    MatZ w(rows, rows - cols, 0);
    for (int j = cols; j < rows; ++j)
        for (int i = 0; i < rows; ++i) w.at(i, j - cols) = linv.at(i, j);
    return w;
}

inline MatQ q_of_z(const MatZ& m, int nvars) {
    MatQ r(m.rows, m.cols, nvars);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = RingFrac::constant(nvars, m.a[i]);
    return r;
}

inline MatR r_of_z(const MatZ& m, int nvars) {
    MatR r(m.rows, m.cols, nvars);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = LaurentPoly::constant(nvars, m.a[i]);
    return r;
}

} // namespace magnus
