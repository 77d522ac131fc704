// Dense matrices over the Laurent ring and its fraction field.
//
// Over the ring: fraction-free Bareiss determinants and presentation orders
// (gcd of maximal minors).  Over the field: Gauss-Jordan elimination, kernels,
// linear solves, and subspaces in reduced column echelon form, which is a
// canonical representative so subspace equality is structural equality.
#pragma once

#include <optional>
#include <vector>

#include "magnus/fraction.hpp"
#include "magnus/laurent.hpp"

namespace magnus {

template <class T> T make_zero(int nvars);
template <class T> T make_one(int nvars);

template <> inline LaurentPoly make_zero<LaurentPoly>(int n) { return LaurentPoly::zero(n); }
template <> inline LaurentPoly make_one<LaurentPoly>(int n) { return LaurentPoly::constant(n, 1); }
template <> inline RingFrac make_zero<RingFrac>(int n) { return RingFrac::zero(n); }
template <> inline RingFrac make_one<RingFrac>(int n) { return RingFrac::one(n); }
template <> inline Int make_zero<Int>(int) { return 0; }
template <> inline Int make_one<Int>(int) { return 1; }

template <class T>
struct Mat {
    int rows = 0;
    int cols = 0;
    int nvars = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c, int n)
        : rows(r), cols(c), nvars(n),
          a(static_cast<size_t>(r) * static_cast<size_t>(c), make_zero<T>(n)) {}

    T& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int k, int n) {
        Mat m(k, k, n);
        for (int i = 0; i < k; ++i) m.at(i, i) = make_one<T>(n);
        return m;
    }

    std::vector<T> col(int j) const {
        std::vector<T> v;
        v.reserve(static_cast<size_t>(rows));
        for (int i = 0; i < rows; ++i) v.push_back(at(i, j));
        return v;
    }

    void set_col(int j, const std::vector<T>& v) {
        for (int i = 0; i < rows; ++i) at(i, j) = v[static_cast<size_t>(i)];
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.nvars == y.nvars && x.a == y.a;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
};

using MatR = Mat<LaurentPoly>;
using MatQ = Mat<RingFrac>;
using MatZ = Mat<Int>;

template <class T>
Mat<T> operator+(const Mat<T>& x, const Mat<T>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw invalid_input("matrix add: shape mismatch");
    Mat<T> r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
    return r;
}

template <class T>
Mat<T> operator-(const Mat<T>& x, const Mat<T>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw invalid_input("matrix sub: shape mismatch");
    Mat<T> r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
    return r;
}

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
    if (x.cols != y.rows) throw invalid_input("matrix mul: shape mismatch");
    Mat<T> r(x.rows, y.cols, x.nvars);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const T& xik = x.at(i, k);
            for (int j = 0; j < y.cols; ++j) r.at(i, j) = r.at(i, j) + xik * y.at(k, j);
        }
    return r;
}

template <class T>
std::vector<T> operator*(const Mat<T>& x, const std::vector<T>& v) {
    if (x.cols != static_cast<int>(v.size())) throw invalid_input("matrix vec mul: shape mismatch");
    std::vector<T> r(static_cast<size_t>(x.rows), make_zero<T>(x.nvars));
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r[static_cast<size_t>(i)] = r[static_cast<size_t>(i)] + x.at(i, j) * v[static_cast<size_t>(j)];
    return r;
}

template <class T>
Mat<T> transpose(const Mat<T>& x) {
    Mat<T> r(x.cols, x.rows, x.nvars);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

template <class T>
Mat<T> operator-(const Mat<T>& x) {
    Mat<T> r = x;
    for (auto& e : r.a) e = make_zero<T>(x.nvars) - e;
    return r;
}

inline MatR involute(const MatR& x) {
    MatR r = x;
    for (auto& e : r.a) e = involute(e);
    return r;
}

inline MatQ involute(const MatQ& x) {
    MatQ r = x;
    for (auto& e : r.a) e = involute(e);
    return r;
}

template <class T>
Mat<T> conj_transpose(const Mat<T>& x) { return transpose(involute(x)); }

template <class T>
Mat<T> hstack(const Mat<T>& x, const Mat<T>& y) {
    if (x.rows != y.rows) throw invalid_input("hstack: row mismatch");
    Mat<T> r(x.rows, x.cols + y.cols, x.nvars);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
    }
    return r;
}

template <class T>
Mat<T> vstack(const Mat<T>& x, const Mat<T>& y) {
    if (x.cols != y.cols) throw invalid_input("vstack: column mismatch");
    Mat<T> r(x.rows + y.rows, x.cols, x.nvars);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) r.at(x.rows + i, j) = y.at(i, j);
    return r;
}

inline MatQ q_of_r(const MatR& x) {
    MatQ r(x.rows, x.cols, x.nvars);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = RingFrac(x.a[i]);
    return r;
}

// fraction-free determinant over the ring (Bareiss)
inline LaurentPoly det_bareiss(const MatR& m) {
    if (m.rows != m.cols) throw invalid_input("det: not square");
    int n = m.rows;
    if (n == 0) return LaurentPoly::constant(m.nvars, 1);
    MatR w = m;
    LaurentPoly prev = LaurentPoly::constant(m.nvars, 1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        int p = k;
        while (p < n && w.at(p, k).is_zero()) ++p;
        if (p == n) return LaurentPoly::zero(m.nvars);
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(w.at(p, j), w.at(k, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w.at(i, j) = divide_exact(w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j), prev);
        prev = w.at(k, k);
    }
    LaurentPoly d = w.at(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

struct Rref {
    MatQ m;
    std::vector<int> pivot_cols;
    int rank = 0;
};

inline Rref rref(MatQ m) {
    Rref out;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = r;
        while (p < m.rows && m.at(p, c).is_zero()) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        RingFrac inv = RingFrac::one(m.nvars) / m.at(r, c);
        for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            RingFrac f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    out.m = std::move(m);
    return out;
}

inline int rank_q(const MatQ& m) { return rref(m).rank; }
inline int rank_r(const MatR& m) { return rref(q_of_r(m)).rank; }

// basis of the right kernel, one column per free variable (not canonicalized)
inline MatQ kernel_of(const MatQ& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
    for (int c : r.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
    int nfree = m.cols - r.rank;
    MatQ k(m.cols, nfree, m.nvars);
    int idx = 0;
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        k.at(f, idx) = RingFrac::one(m.nvars);
        for (int pr = 0; pr < r.rank; ++pr)
            k.at(r.pivot_cols[static_cast<size_t>(pr)], idx) =
                RingFrac::zero(m.nvars) - r.m.at(pr, f);
        ++idx;
    }
    return k;
}

// particular solution of A x = b with free coordinates zero
inline std::optional<MatQ> solve_multi(const MatQ& a, const MatQ& b) {
    if (a.rows != b.rows) throw invalid_input("solve: shape mismatch");
    Rref r = rref(hstack(a, b));
    for (int c : r.pivot_cols)
        if (c >= a.cols) return std::nullopt;
    MatQ x(a.cols, b.cols, a.nvars);
    for (size_t k = 0; k < r.pivot_cols.size(); ++k)
        for (int j = 0; j < b.cols; ++j)
            x.at(r.pivot_cols[k], j) = r.m.at(static_cast<int>(k), a.cols + j);
    return x;
}

inline std::optional<std::vector<RingFrac>> solve(const MatQ& a, const std::vector<RingFrac>& b) {
    MatQ bm(a.rows, 1, a.nvars);
    bm.set_col(0, b);
    auto x = solve_multi(a, bm);
    if (!x) return std::nullopt;
    return x->col(0);
}

inline std::optional<MatQ> inverse(const MatQ& a) {
    if (a.rows != a.cols) throw invalid_input("inverse: not square");
    auto x = solve_multi(a, MatQ::identity(a.rows, a.nvars));
    if (!x) return std::nullopt;
    if (rank_q(a) != a.rows) return std::nullopt;
    return x;
}

inline RingFrac det_q(MatQ m) {
    if (m.rows != m.cols) throw invalid_input("det: not square");
    RingFrac d = RingFrac::one(m.nvars);
    int n = m.rows;
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && m.at(p, k).is_zero()) ++p;
        if (p == n) return RingFrac::zero(m.nvars);
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(k, j));
            d = -d;
        }
        d = d * m.at(k, k);
        RingFrac inv = RingFrac::one(m.nvars) / m.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (m.at(i, k).is_zero()) continue;
            RingFrac f = m.at(i, k) * inv;
            for (int j = k; j < n; ++j) m.at(i, j) = m.at(i, j) - f * m.at(k, j);
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// subspaces of Q(R)^n in reduced column echelon form
// ---------------------------------------------------------------------------

struct Subspace {
    int ambient = 0;
    MatQ basis; // ambient x dim, reduced column echelon

    int dim() const { return basis.cols; }

    friend bool operator==(const Subspace& x, const Subspace& y) {
        return x.ambient == y.ambient && x.basis == y.basis;
    }
    friend bool operator!=(const Subspace& x, const Subspace& y) { return !(x == y); }
};

// canonicalize a spanning set of columns
inline Subspace echelon_space(int ambient, const MatQ& cols) {
    if (cols.rows != ambient) throw invalid_input("echelon_space: ambient mismatch");
    Rref r = rref(transpose(cols));
    MatQ basis(ambient, r.rank, cols.nvars);
    for (int k = 0; k < r.rank; ++k)
        for (int j = 0; j < ambient; ++j) basis.at(j, k) = r.m.at(k, j);
    return Subspace{ambient, std::move(basis)};
}

inline Subspace kernel_space(const MatQ& m) { return echelon_space(m.cols, kernel_of(m)); }

inline Subspace span_sum(const Subspace& x, const Subspace& y) {
    if (x.ambient != y.ambient) throw invalid_input("span_sum: ambient mismatch");
    return echelon_space(x.ambient, hstack(x.basis, y.basis));
}

inline Subspace span_intersect(const Subspace& x, const Subspace& y) {
    if (x.ambient != y.ambient) throw invalid_input("span_intersect: ambient mismatch");
    MatQ k = kernel_of(hstack(x.basis, -y.basis));
    // top block of each kernel column gives coefficients in x's basis
    MatQ top(x.basis.cols, k.cols, k.nvars);
    for (int i = 0; i < x.basis.cols; ++i)
        for (int j = 0; j < k.cols; ++j) top.at(i, j) = k.at(i, j);
    return echelon_space(x.ambient, x.basis * top);
}

inline bool span_contains(const Subspace& x, const std::vector<RingFrac>& v) {
    if (x.ambient != static_cast<int>(v.size())) throw invalid_input("span_contains: ambient mismatch");
    return solve(x.basis, v).has_value();
}

// order of the module presented by the rows of a (m relations, k generators):
// gcd of all k x k minors, zero when the rank over the fraction field is
// deficient, in canonical normal form
inline LaurentPoly ord_of_presentation(const MatR& a) {
    int k = a.cols;
    if (k == 0) return LaurentPoly::constant(a.nvars, 1);
    if (a.rows < k || rank_r(a) < k) return LaurentPoly::zero(a.nvars);
    std::vector<int> pick(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
    LaurentPoly g = LaurentPoly::zero(a.nvars);
    while (true) {
        MatR sub(k, k, a.nvars);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub.at(i, j) = a.at(pick[static_cast<size_t>(i)], j);
        g = gcd(g, det_bareiss(sub));
        if (g.is_one()) break;
        // next k-combination of row indices
        int i = k - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] == a.rows - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
    }
    return g;
}

} // namespace magnus
