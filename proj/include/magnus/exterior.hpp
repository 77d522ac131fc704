// Exterior algebra over the scalar rings in play (Laurent ring, its fraction
// field, plain integers).  Multivectors are kept homogeneous; a basis wedge
// e_{i1} ^ ... ^ e_{id} with i1 < ... < id is stored as the bitmask of its
// slots, and all signs come from counting inversions when masks merge.
#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "magnus/errors.hpp"
#include "magnus/fraction.hpp"
#include "magnus/laurent.hpp"
#include "magnus/matrix.hpp"

namespace magnus {

using Mask = std::uint32_t;

inline bool scalar_zero(const LaurentPoly& x) { return x.is_zero(); }
inline bool scalar_zero(const RingFrac& x) { return x.is_zero(); }
inline bool scalar_zero(const Int& x) { return x == 0; }

// sign of sorting the concatenation (a ascending, b ascending) into one
// ascending run: parity of the pairs i in a, j in b with i > j.  Masks must be
// disjoint for the wedge to survive, but the count itself never assumes it.
inline int merge_sign(Mask a, Mask b) {
    int inversions = 0;
    for (Mask t = b; t != 0; t &= t - 1) {
        int slot = std::countr_zero(t);
        inversions += std::popcount(a >> (slot + 1));
    }
    return (inversions & 1) ? -1 : 1;
}

inline Mask full_mask(int slots) { return (slots == 0) ? 0u : ((Mask{1} << slots) - 1); }

// all masks over `slots` bits with exactly `degree` bits set, ascending
inline std::vector<Mask> masks_of_degree(int slots, int degree) {
    std::vector<Mask> out;
    if (degree < 0 || degree > slots) return out;
    Mask top = full_mask(slots);
    for (Mask m = 0; ; ++m) {
        if (std::popcount(m) == degree) out.push_back(m);
        if (m == top) break;
    }
    return out;
}

template <class T>
struct MultiVector {
    int ambient = 0;
    int degree = 0;
    int nvars = 0;
    std::map<Mask, T> terms; // no zero coefficients stored

    MultiVector() = default;
    MultiVector(int ambient_, int degree_, int nvars_)
        : ambient(ambient_), degree(degree_), nvars(nvars_) {}

    bool is_zero() const { return terms.empty(); }

    void add_term(Mask m, const T& c) {
        if (scalar_zero(c)) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
            return;
        }
        it->second += c;
        if (scalar_zero(it->second)) terms.erase(it);
    }

    friend bool operator==(const MultiVector& x, const MultiVector& y) {
        return x.ambient == y.ambient && x.degree == y.degree && x.terms == y.terms;
    }
    friend bool operator!=(const MultiVector& x, const MultiVector& y) { return !(x == y); }
};

template <class T>
MultiVector<T> basis_multivector(int ambient, Mask m, int nvars) {
    MultiVector<T> v(ambient, std::popcount(m), nvars);
    v.terms.emplace(m, make_one<T>(nvars));
    return v;
}

template <class T>
MultiVector<T> single_vector(int ambient, const std::vector<T>& coords, int nvars) {
    if (static_cast<int>(coords.size()) != ambient)
        throw invalid_input("single_vector: coordinate count mismatch");
    MultiVector<T> v(ambient, 1, nvars);
    for (int i = 0; i < ambient; ++i) v.add_term(Mask{1} << i, coords[static_cast<size_t>(i)]);
    return v;
}

template <class T>
MultiVector<T> operator+(const MultiVector<T>& x, const MultiVector<T>& y) {
    if (x.ambient != y.ambient || x.degree != y.degree)
        throw invalid_input("multivector sum: shape mismatch");
    MultiVector<T> r = x;
    for (const auto& [m, c] : y.terms) r.add_term(m, c);
    return r;
}

template <class T>
MultiVector<T> operator*(const T& s, const MultiVector<T>& x) {
    MultiVector<T> r(x.ambient, x.degree, x.nvars);
    for (const auto& [m, c] : x.terms) r.add_term(m, s * c);
    return r;
}

template <class T>
MultiVector<T> wedge(const MultiVector<T>& x, const MultiVector<T>& y) {
    if (x.ambient != y.ambient) throw invalid_input("wedge: ambient mismatch");
    MultiVector<T> r(x.ambient, x.degree + y.degree, x.nvars);
    for (const auto& [ma, ca] : x.terms)
        for (const auto& [mb, cb] : y.terms) {
            if ((ma & mb) != 0) continue; // repeated slot, term dies
            T c = ca * cb;
            if (merge_sign(ma, mb) < 0) c = -c;
            r.add_term(ma | mb, c);
        }
    return r;
}

// coefficient of the top wedge e_0 ^ ... ^ e_{ambient-1}
template <class T>
T vol_coefficient(const MultiVector<T>& x) {
    auto it = x.terms.find(full_mask(x.ambient));
    return (it == x.terms.end()) ? make_zero<T>(x.nvars) : it->second;
}

// A graded linear map Lambda H_src -> Lambda H_tgt raising degree by `shift`.
// Coefficients are indexed by (source basis mask, target basis mask); entries
// with zero coefficient are absent, and map iteration order makes every
// flattening of the coefficients deterministic.
template <class T>
struct GradedMap {
    int src_rank = 0;
    int tgt_rank = 0;
    int shift = 0;
    int nvars = 0;
    std::map<std::pair<Mask, Mask>, T> coeff;

    void set(Mask in, Mask out, const T& c) {
        if (!scalar_zero(c)) coeff.emplace(std::make_pair(in, out), c);
    }

    bool is_zero() const { return coeff.empty(); }

    friend bool operator==(const GradedMap& x, const GradedMap& y) {
        return x.src_rank == y.src_rank && x.tgt_rank == y.tgt_rank && x.shift == y.shift &&
               x.coeff == y.coeff;
    }
    friend bool operator!=(const GradedMap& x, const GradedMap& y) { return !(x == y); }
};

template <class T>
GradedMap<T> operator*(const T& s, const GradedMap<T>& f) {
    GradedMap<T> r{f.src_rank, f.tgt_rank, f.shift, f.nvars, {}};
    for (const auto& [key, c] : f.coeff) r.set(key.first, key.second, s * c);
    return r;
}

template <class T>
MultiVector<T> apply(const GradedMap<T>& f, const MultiVector<T>& x) {
    if (x.ambient != f.src_rank) throw invalid_input("apply: ambient mismatch");
    MultiVector<T> r(f.tgt_rank, x.degree + f.shift, f.nvars);
    for (const auto& [key, c] : f.coeff) {
        auto it = x.terms.find(key.first);
        if (it != x.terms.end()) r.add_term(key.second, c * it->second);
    }
    return r;
}

// identity in every degree: Lambda of the identity map
template <class T>
GradedMap<T> lambda_identity(int rank, int nvars) {
    GradedMap<T> r{rank, rank, 0, nvars, {}};
    Mask top = full_mask(rank);
    for (Mask m = 0; ; ++m) {
        r.set(m, m, make_one<T>(nvars));
        if (m == top) break;
    }
    return r;
}

// Lambda of a linear map given by its matrix (columns = images of the source
// basis): the (in, out) coefficient is the minor with rows `out`, columns `in`.
template <class T>
GradedMap<T> lambda_of_matrix(const Mat<T>& psi);

namespace detail {

template <class T>
T minor_det(const Mat<T>& m, Mask rows, Mask cols);

template <>
inline RingFrac minor_det<RingFrac>(const MatQ& m, Mask rows, Mask cols) {
    int d = std::popcount(rows);
    MatQ sub(d, d, m.nvars);
    int i = 0;
    for (Mask rt = rows; rt != 0; rt &= rt - 1, ++i) {
        int r = std::countr_zero(rt);
        int j = 0;
        for (Mask ct = cols; ct != 0; ct &= ct - 1, ++j)
            sub.at(i, j) = m.at(r, std::countr_zero(ct));
    }
    return det_q(sub);
}

template <>
inline LaurentPoly minor_det<LaurentPoly>(const MatR& m, Mask rows, Mask cols) {
    int d = std::popcount(rows);
    MatR sub(d, d, m.nvars);
    int i = 0;
    for (Mask rt = rows; rt != 0; rt &= rt - 1, ++i) {
        int r = std::countr_zero(rt);
        int j = 0;
        for (Mask ct = cols; ct != 0; ct &= ct - 1, ++j)
            sub.at(i, j) = m.at(r, std::countr_zero(ct));
    }
    return det_bareiss(sub);
}

} // namespace detail

template <class T>
GradedMap<T> lambda_of_matrix(const Mat<T>& psi) {
    GradedMap<T> r{psi.cols, psi.rows, 0, psi.nvars, {}};
    if (psi.rows != psi.cols) throw invalid_input("lambda_of_matrix: matrix is not square");
    r.set(0, 0, make_one<T>(psi.nvars));
    for (int d = 1; d <= psi.cols; ++d)
        for (Mask in : masks_of_degree(psi.cols, d))
            for (Mask out : masks_of_degree(psi.rows, d))
                r.set(in, out, detail::minor_det<T>(psi, out, in));
    return r;
}

} // namespace magnus
