// Free group words, endomorphisms, monomial valuations and Fox calculus.
//
// A word is a reduced sequence of nonzero letters; letter +i is the i-th
// generator (1-based), -i its inverse.  On a genus-g surface group the
// generators are ordered a1..ag, b1..bg, so bi has index g+i, and the
// boundary word is the product of commutators [bi, ai] = bi ai bi^-1 ai^-1.
// A valuation phi sends each generator to a monomial t^e in the Laurent ring;
// Fox derivatives are evaluated through phi, giving the homology coordinates
// row(w)_i = phi(dw/dxi) with the fundamental identity
// sum_i phi(dw/dxi) (phi(xi) - 1) = phi(w) - 1.
#pragma once

#include <string>
#include <vector>

#include "magnus/laurent.hpp"
#include "magnus/matrix.hpp"

namespace magnus {

struct Word {
    std::vector<int> letters; // reduced: no adjacent x x^-1

    bool empty() const { return letters.empty(); }
    int length() const { return static_cast<int>(letters.size()); }

    friend bool operator==(const Word& x, const Word& y) { return x.letters == y.letters; }
    friend bool operator!=(const Word& x, const Word& y) { return !(x == y); }
    friend bool operator<(const Word& x, const Word& y) { return x.letters < y.letters; }
};

inline Word reduce(const std::vector<int>& raw) {
    Word w;
    for (int l : raw) {
        if (l == 0) throw invalid_input("word: zero letter");
        if (!w.letters.empty() && w.letters.back() == -l) w.letters.pop_back();
        else w.letters.push_back(l);
    }
    return w;
}

inline Word inverse(const Word& w) {
    Word r;
    r.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(-*it);
    return r;
}

inline Word concat(const Word& x, const Word& y) {
    std::vector<int> raw = x.letters;
    raw.insert(raw.end(), y.letters.begin(), y.letters.end());
    return reduce(raw);
}

inline Word conjugate(const Word& u, const Word& w) { // u w u^-1
    return concat(u, concat(w, inverse(u)));
}

inline Word commutator(const Word& x, const Word& y) { // x y x^-1 y^-1
    return concat(x, concat(y, concat(inverse(x), inverse(y))));
}

inline int max_generator(const Word& w) {
    int m = 0;
    for (int l : w.letters) m = std::max(m, std::abs(l));
    return m;
}

// product over handles of [b_i, a_i]; fixed by mapping classes of the
// once-punctured surface
inline Word boundary_word(int genus) {
    std::vector<int> raw;
    raw.reserve(static_cast<size_t>(4 * genus));
    for (int i = 1; i <= genus; ++i) {
        raw.push_back(genus + i);
        raw.push_back(i);
        raw.push_back(-(genus + i));
        raw.push_back(-i);
    }
    return reduce(raw);
}

// ---------------------------------------------------------------------------
// endomorphisms of the rank-2g surface group
// ---------------------------------------------------------------------------

struct FreeEndo {
    int genus = 0;
    std::vector<Word> images; // one per generator, a's then b's

    int rank() const { return 2 * genus; }
};

inline FreeEndo identity_endo(int genus) {
    FreeEndo f;
    f.genus = genus;
    f.images.resize(static_cast<size_t>(2 * genus));
    for (int i = 1; i <= 2 * genus; ++i) f.images[static_cast<size_t>(i - 1)].letters = {i};
    return f;
}

inline Word endo_apply(const FreeEndo& f, const Word& w) {
    std::vector<int> raw;
    for (int l : w.letters) {
        int i = std::abs(l);
        if (i > f.rank()) throw invalid_input("endo_apply: letter out of range");
        const Word& im = f.images[static_cast<size_t>(i - 1)];
        if (l > 0) raw.insert(raw.end(), im.letters.begin(), im.letters.end());
        else {
            for (auto it = im.letters.rbegin(); it != im.letters.rend(); ++it) raw.push_back(-*it);
        }
    }
    return reduce(raw);
}

// (f then g applied outside-in): endo_compose(f, g) maps w to f(g(w))
inline FreeEndo endo_compose(const FreeEndo& f, const FreeEndo& g) {
    if (f.genus != g.genus) throw invalid_input("endo_compose: rank mismatch");
    FreeEndo r;
    r.genus = f.genus;
    r.images.reserve(g.images.size());
    for (const Word& w : g.images) r.images.push_back(endo_apply(f, w));
    return r;
}

inline bool check_boundary(const FreeEndo& f) {
    Word nu = boundary_word(f.genus);
    return endo_apply(f, nu) == nu;
}

// ---------------------------------------------------------------------------
// monomial valuations
// ---------------------------------------------------------------------------

// sends generator i to the monomial t^val[i-1] in n commuting variables
struct PhiValuation {
    int ngens = 0;
    int nvars = 0;
    std::vector<Exp> val;

    static PhiValuation trivial(int ngens, int nvars) {
        PhiValuation p;
        p.ngens = ngens;
        p.nvars = nvars;
        p.val.assign(static_cast<size_t>(ngens), Exp(static_cast<size_t>(nvars), 0));
        return p;
    }

    friend bool operator==(const PhiValuation& x, const PhiValuation& y) {
        return x.ngens == y.ngens && x.nvars == y.nvars && x.val == y.val;
    }
    friend bool operator!=(const PhiValuation& x, const PhiValuation& y) { return !(x == y); }
};

inline Exp phi_exponent(const PhiValuation& phi, const Word& w) {
    Exp e(static_cast<size_t>(phi.nvars), 0);
    for (int l : w.letters) {
        int i = std::abs(l);
        if (i > phi.ngens) throw invalid_input("phi: letter out of range");
        const Exp& v = phi.val[static_cast<size_t>(i - 1)];
        for (size_t k = 0; k < e.size(); ++k) e[k] += (l > 0 ? v[k] : -v[k]);
    }
    return e;
}

inline LaurentPoly phi_of_word(const PhiValuation& phi, const Word& w) {
    return LaurentPoly::monomial(phi.nvars, phi_exponent(phi, w), 1);
}

inline LaurentPoly phi_of_gen(const PhiValuation& phi, int i, int sign = 1) {
    Exp e = phi.val[static_cast<size_t>(i - 1)];
    if (sign < 0)
        for (int& x : e) x = -x;
    return LaurentPoly::monomial(phi.nvars, e, 1);
}

// ---------------------------------------------------------------------------
// Fox calculus
// ---------------------------------------------------------------------------

// phi(dw/dx_i): d(x)/dx = 1, d(x^-1)/dx = -x^-1, d(uv) = du + u dv
inline LaurentPoly fox_derivative(const PhiValuation& phi, const Word& w, int i) {
    LaurentPoly r(phi.nvars);
    Exp prefix(static_cast<size_t>(phi.nvars), 0);
    for (int l : w.letters) {
        int j = std::abs(l);
        if (j > phi.ngens) throw invalid_input("fox: letter out of range");
        const Exp& v = phi.val[static_cast<size_t>(j - 1)];
        if (l > 0) {
            if (j == i) r.add_term(prefix, 1);
            for (size_t k = 0; k < prefix.size(); ++k) prefix[k] += v[k];
        } else {
            for (size_t k = 0; k < prefix.size(); ++k) prefix[k] -= v[k];
            if (j == i) r.add_term(prefix, -1);
        }
    }
    return r;
}

inline std::vector<LaurentPoly> fox_row(const PhiValuation& phi, const Word& w) {
    std::vector<LaurentPoly> r;
    r.reserve(static_cast<size_t>(phi.ngens));
    for (int i = 1; i <= phi.ngens; ++i) r.push_back(fox_derivative(phi, w, i));
    return r;
}

// valuation x -> phi(f(x)) on the source of f
inline PhiValuation pullback(const PhiValuation& phi, const FreeEndo& f) {
    if (phi.ngens != f.rank()) throw invalid_input("pullback: rank mismatch");
    PhiValuation r;
    r.ngens = f.rank();
    r.nvars = phi.nvars;
    r.val.reserve(f.images.size());
    for (const Word& w : f.images) r.val.push_back(phi_exponent(phi, w));
    return r;
}

// entry (i, j) = phi(d f(x_j) / d x_i); for a boundary-preserving f this is
// the Magnus-representation matrix of the mapping cylinder
inline MatR jacobian(const FreeEndo& f, const PhiValuation& phi) {
    if (phi.ngens != f.rank()) throw invalid_input("jacobian: rank mismatch");
    MatR m(f.rank(), f.rank(), phi.nvars);
    for (int j = 0; j < f.rank(); ++j)
        for (int i = 0; i < f.rank(); ++i)
            m.at(i, j) = fox_derivative(phi, f.images[static_cast<size_t>(j)], i + 1);
    return m;
}

// ---------------------------------------------------------------------------
// text form: "a1 b2^-1 a1" on surface generators
// ---------------------------------------------------------------------------

inline std::string print_letter_surface(int l, int genus) {
    int i = std::abs(l);
    std::string s = (i <= genus) ? "a" + std::to_string(i) : "b" + std::to_string(i - genus);
    if (l < 0) s += "^-1";
    return s;
}

inline std::string to_string(const Word& w, int genus) {
    if (w.letters.empty()) return "1";
    std::string s;
    for (size_t k = 0; k < w.letters.size(); ++k) {
        if (k) s += " ";
        s += print_letter_surface(w.letters[k], genus);
    }
    return s;
}

inline Word parse_word(const std::string& text, int genus) {
    std::vector<int> raw;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        char kind = text[i];
        if (kind == '1' && raw.empty()) { // identity word
            ++i;
            skip_ws();
            if (i < text.size()) throw invalid_input("word parse: letters after '1'");
            break;
        }
        if (kind != 'a' && kind != 'b')
            throw invalid_input(std::string("word parse: expected 'a' or 'b', got '") + kind + "'");
        ++i;
        size_t j = i;
        while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
        if (j == i) throw invalid_input("word parse: generator needs an index");
        int idx = std::atoi(text.substr(i, j - i).c_str());
        if (idx < 1 || idx > genus)
            throw invalid_input("word parse: generator index " + std::to_string(idx) +
                                " out of range for genus " + std::to_string(genus));
        i = j;
        int letter = (kind == 'a') ? idx : genus + idx;
        int p = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            int sign = 1;
            if (i < text.size() && text[i] == '-') { sign = -1; ++i; }
            size_t k = i;
            while (k < text.size() && text[k] >= '0' && text[k] <= '9') ++k;
            if (k == i) throw invalid_input("word parse: expected exponent after '^'");
            p = sign * std::atoi(text.substr(i, k - i).c_str());
            i = k;
        }
        for (int r = 0; r < std::abs(p); ++r) raw.push_back(p > 0 ? letter : -letter);
    }
    return reduce(raw);
}

} // namespace magnus
