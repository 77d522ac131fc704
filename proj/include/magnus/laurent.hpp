// Multivariate Laurent polynomials Z[t1^-1, t1, ..., tn^-1, tn] with
// arbitrary-precision integer coefficients.
//
// Monomials are ordered lexicographically on exponent vectors with t1 having
// highest priority.  The ring carries the bar involution ti -> ti^-1, the
// augmentation (sum of coefficients), exact division, a gcd (content /
// primitive-part recursion with a subresultant remainder sequence), and a
// canonical unit decomposition: every nonzero element factors as
// (+/- monomial) * normal where the normal part has lex-minimal exponent
// vector zero and positive leading coefficient.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "magnus/errors.hpp"

namespace magnus {

using Int = mpz_class;
using Exp = std::vector<int>; // exponent vector, one entry per variable

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool int_divides(const Int& d, const Int& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int int_divexact(const Int& a, const Int& d) {
    Int r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return r;
}

class LaurentPoly {
public:
    int nvars = 0;
    // invariant: no zero coefficients stored; map order is the monomial order
    std::map<Exp, Int> terms;

    LaurentPoly() = default;
    explicit LaurentPoly(int n) : nvars(n) {}

    static LaurentPoly zero(int n) { return LaurentPoly(n); }

    static LaurentPoly constant(int n, Int c) {
        LaurentPoly p(n);
        if (c != 0) p.terms.emplace(Exp(static_cast<size_t>(n), 0), std::move(c));
        return p;
    }

    static LaurentPoly monomial(int n, Exp e, Int c) {
        if (static_cast<int>(e.size()) != n) throw invalid_input("monomial: exponent vector size mismatch");
        LaurentPoly p(n);
        if (c != 0) p.terms.emplace(std::move(e), std::move(c));
        return p;
    }

    // ti^power, i zero-based
    static LaurentPoly variable(int n, int i, int power = 1) {
        if (i < 0 || i >= n) throw invalid_input("variable index out of range");
        Exp e(static_cast<size_t>(n), 0);
        e[static_cast<size_t>(i)] = power;
        return monomial(n, std::move(e), 1);
    }

    bool is_zero() const { return terms.empty(); }

    bool is_constant() const {
        if (terms.empty()) return true;
        if (terms.size() != 1) return false;
        const Exp& e = terms.begin()->first;
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }

    bool is_one() const { return is_constant() && !terms.empty() && terms.begin()->second == 1; }

    // single term with coefficient +1 or -1
    bool is_monomial_unit() const {
        return terms.size() == 1 && (terms.begin()->second == 1 || terms.begin()->second == -1);
    }

    const Exp& lead_exp() const { return terms.rbegin()->first; }   // lex-greatest
    const Int& lead_coeff() const { return terms.rbegin()->second; }
    const Exp& trail_exp() const { return terms.begin()->first; }   // lex-least

    void add_term(const Exp& e, const Int& c) {
        if (c == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    LaurentPoly operator-() const {
        LaurentPoly r(nvars);
        for (const auto& [e, c] : terms) r.terms.emplace(e, -c);
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        check_compatible(a, b);
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        check_compatible(a, b);
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, -c);
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        check_compatible(a, b);
        LaurentPoly r(a.nvars);
        Exp e(static_cast<size_t>(a.nvars));
        for (const auto& [ea, ca] : a.terms) {
            for (const auto& [eb, cb] : b.terms) {
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const Int& c) {
        LaurentPoly r(a.nvars);
        if (c == 0) return r;
        for (const auto& [e, k] : a.terms) r.terms.emplace(e, k * c);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& b) { *this = *this + b; return *this; }
    LaurentPoly& operator-=(const LaurentPoly& b) { *this = *this - b; return *this; }
    LaurentPoly& operator*=(const LaurentPoly& b) { *this = *this * b; return *this; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.nvars == b.nvars && a.terms == b.terms;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
        return std::tie(a.nvars, a.terms) < std::tie(b.nvars, b.terms);
    }

private:
    static void check_compatible(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.nvars != b.nvars) throw invalid_input("laurent: variable count mismatch");
    }
};

// bar involution: ti -> ti^-1
inline LaurentPoly involute(const LaurentPoly& p) {
    LaurentPoly r(p.nvars);
    for (const auto& [e, c] : p.terms) {
        Exp m = e;
        for (int& x : m) x = -x;
        r.terms.emplace(std::move(m), c);
    }
    return r;
}

// augmentation ti -> 1
inline Int augment(const LaurentPoly& p) {
    Int s = 0;
    for (const auto& [e, c] : p.terms) s += c;
    return s;
}

inline LaurentPoly pow(const LaurentPoly& p, int k) {
    if (k < 0) throw invalid_input("pow: negative exponent");
    LaurentPoly r = LaurentPoly::constant(p.nvars, 1);
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

// multiply by the monomial t^e
inline LaurentPoly shift(const LaurentPoly& p, const Exp& e) {
    LaurentPoly r(p.nvars);
    for (const auto& [m, c] : p.terms) {
        Exp s = m;
        for (size_t i = 0; i < s.size(); ++i) s[i] += e[i];
        r.terms.emplace(std::move(s), c);
    }
    return r;
}

// componentwise minimum of all exponent vectors (p nonzero)
inline Exp min_exponents(const LaurentPoly& p) {
    Exp m = p.terms.begin()->first;
    for (const auto& [e, c] : p.terms)
        for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    return m;
}

namespace detail {

// view of an ordinary polynomial as univariate in variable v with
// polynomial coefficients (v-exponent zero inside each coefficient)
struct UniPoly {
    int var = 0;
    std::vector<LaurentPoly> c; // c[d] = coefficient of tv^d, c.back() nonzero

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const LaurentPoly& lc() const { return c.back(); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
};

inline UniPoly uni_from(const LaurentPoly& p, int v) {
    UniPoly u;
    u.var = v;
    for (const auto& [e, k] : p.terms) {
        int d = e[static_cast<size_t>(v)];
        if (d < 0) throw invalid_input("uni_from: negative exponent");
        if (d >= static_cast<int>(u.c.size()))
            u.c.resize(static_cast<size_t>(d) + 1, LaurentPoly(p.nvars));
        Exp m = e;
        m[static_cast<size_t>(v)] = 0;
        u.c[static_cast<size_t>(d)].add_term(m, k);
    }
    u.trim();
    return u;
}

inline LaurentPoly uni_to_poly(const UniPoly& u, int nvars) {
    LaurentPoly p(nvars);
    for (size_t d = 0; d < u.c.size(); ++d) {
        for (const auto& [e, k] : u.c[d].terms) {
            Exp m = e;
            m[static_cast<size_t>(u.var)] = static_cast<int>(d);
            p.add_term(m, k);
        }
    }
    return p;
}

} // namespace detail

// exact division in the Laurent ring; throws if the division is not exact
inline LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars != b.nvars) throw invalid_input("divide_exact: variable count mismatch");
    if (b.is_zero()) throw invalid_input("divide_exact: division by zero");
    if (a.is_zero()) return LaurentPoly(a.nvars);

    // reduce to ordinary polynomials with min exponent zero in each variable;
    // the quotient then has min exponent zero too, and lex long division by a
    // single divisor terminates
    Exp ea = min_exponents(a), eb = min_exponents(b);
    Exp na = ea, nb = eb;
    for (int& x : na) x = -x;
    for (int& x : nb) x = -x;
    LaurentPoly r = shift(a, na);
    const LaurentPoly bs = shift(b, nb);
    LaurentPoly q(a.nvars);

    const Exp& lb = bs.lead_exp();
    const Int& cb = bs.lead_coeff();
    while (!r.is_zero()) {
        const Exp& lr = r.lead_exp();
        Exp qe(static_cast<size_t>(a.nvars));
        for (size_t i = 0; i < qe.size(); ++i) {
            qe[i] = lr[i] - lb[i];
            if (qe[i] < 0) throw invalid_input("divide_exact: not divisible");
        }
        if (!int_divides(cb, r.lead_coeff())) throw invalid_input("divide_exact: not divisible");
        LaurentPoly qt = LaurentPoly::monomial(a.nvars, qe, int_divexact(r.lead_coeff(), cb));
        q += qt;
        r -= qt * bs;
    }
    Exp back(static_cast<size_t>(a.nvars));
    for (size_t i = 0; i < back.size(); ++i) back[i] = ea[i] - eb[i];
    return shift(q, back);
}

namespace detail {

// pseudo-remainder lc(G)^(deg F - deg G + 1) * F mod G, fraction-free
inline UniPoly uni_prem(const UniPoly& F, const UniPoly& G) {
    UniPoly R = F;
    const LaurentPoly& d = G.lc();
    int e = F.deg() - G.deg() + 1;
    while (!R.is_zero() && R.deg() >= G.deg()) {
        int k = R.deg() - G.deg();
        LaurentPoly lr = R.lc();
        for (size_t i = 0; i < R.c.size(); ++i) R.c[i] = R.c[i] * d;
        for (int i = 0; i <= G.deg(); ++i) {
            size_t j = static_cast<size_t>(i + k);
            R.c[j] = R.c[j] - lr * G.c[static_cast<size_t>(i)];
        }
        R.trim();
        --e;
    }
    for (int i = 0; i < e; ++i)
        for (auto& cc : R.c) cc = cc * d;
    R.trim();
    return R;
}

inline LaurentPoly gcd_poly(const LaurentPoly& a, const LaurentPoly& b);

// flip sign so the lex-leading coefficient is positive
inline LaurentPoly sign_norm(const LaurentPoly& p) {
    if (!p.is_zero() && p.lead_coeff() < 0) return -p;
    return p;
}

inline LaurentPoly uni_content(const UniPoly& u, int nvars) {
    LaurentPoly g(nvars);
    for (const auto& cc : u.c)
        if (!cc.is_zero()) g = gcd_poly(g, cc);
    return g;
}

inline UniPoly uni_divide(const UniPoly& u, const LaurentPoly& d) {
    UniPoly r = u;
    for (auto& cc : r.c)
        if (!cc.is_zero()) cc = divide_exact(cc, d);
    return r;
}

// gcd of ordinary polynomials (all exponents nonnegative); the result has a
// positive lex-leading coefficient
inline LaurentPoly gcd_poly(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return sign_norm(b);
    if (b.is_zero()) return sign_norm(a);
    if (a.is_constant() && b.is_constant())
        return LaurentPoly::constant(a.nvars, int_gcd(a.terms.begin()->second, b.terms.begin()->second));

    int v = -1;
    for (int i = 0; i < a.nvars && v < 0; ++i) {
        for (const auto& [e, c] : a.terms)
            if (e[static_cast<size_t>(i)] != 0) { v = i; break; }
        if (v < 0)
            for (const auto& [e, c] : b.terms)
                if (e[static_cast<size_t>(i)] != 0) { v = i; break; }
    }
    if (v < 0) // both constant in every variable
        return LaurentPoly::constant(a.nvars, int_gcd(a.terms.begin()->second, b.terms.begin()->second));

    UniPoly A = uni_from(a, v), B = uni_from(b, v);
    LaurentPoly contA = uni_content(A, a.nvars), contB = uni_content(B, a.nvars);
    LaurentPoly c = gcd_poly(contA, contB);
    UniPoly F = uni_divide(A, contA), G = uni_divide(B, contB);
    if (F.deg() < G.deg()) std::swap(F, G);
    if (G.deg() == 0) return sign_norm(c); // G is a unit after removing content

    LaurentPoly g = LaurentPoly::constant(a.nvars, 1);
    LaurentPoly h = LaurentPoly::constant(a.nvars, 1);
    while (true) {
        int delta = F.deg() - G.deg();
        UniPoly R = uni_prem(F, G);
        if (R.is_zero()) break;
        if (R.deg() == 0) return sign_norm(c); // primitive parts are coprime
        LaurentPoly divisor = g * pow(h, delta);
        F = G;
        G = uni_divide(R, divisor);
        g = F.lc();
        if (delta == 1) h = g;
        else if (delta > 1) h = divide_exact(pow(g, delta), pow(h, delta - 1));
    }
    LaurentPoly gg = uni_to_poly(uni_divide(G, uni_content(G, a.nvars)), a.nvars);
    return sign_norm(c * gg);
}

} // namespace detail

// gcd up to units, returned in canonical normal form
inline LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

// canonical decomposition p = unit * normal with unit = +/- monomial,
// normal with lex-minimal exponent vector zero and positive leading coefficient
struct UnitNormal {
    LaurentPoly unit;
    LaurentPoly normal;
};

inline UnitNormal unit_normalize(const LaurentPoly& p) {
    if (p.is_zero()) return {LaurentPoly::constant(p.nvars, 1), LaurentPoly(p.nvars)};
    Exp e0 = p.trail_exp();
    Exp neg = e0;
    for (int& x : neg) x = -x;
    LaurentPoly n = shift(p, neg);
    Int sign = 1;
    if (n.lead_coeff() < 0) {
        n = -n;
        sign = -1;
    }
    return {LaurentPoly::monomial(p.nvars, e0, sign), n};
}

inline bool is_unit(const LaurentPoly& p) { return p.is_monomial_unit(); }

inline LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars != b.nvars) throw invalid_input("gcd: variable count mismatch");
    if (a.is_zero() && b.is_zero()) return LaurentPoly(a.nvars);
    if (a.is_zero()) return unit_normalize(b).normal;
    if (b.is_zero()) return unit_normalize(a).normal;
    Exp na = min_exponents(a), nb = min_exponents(b);
    for (int& x : na) x = -x;
    for (int& x : nb) x = -x;
    LaurentPoly g = detail::gcd_poly(shift(a, na), shift(b, nb));
    return unit_normalize(g).normal;
}

// ---------------------------------------------------------------------------
// text form: "3*t1^2*t2^-1 - 1", lex-descending terms
// ---------------------------------------------------------------------------

inline std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const Exp& e = it->first;
        const Int& c = it->second;
        std::string vars;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += "t" + std::to_string(i + 1);
            if (e[i] != 1) vars += "^" + std::to_string(e[i]);
        }
        Int mag = abs(c);
        std::string core;
        if (vars.empty()) core = mag.get_str();
        else if (mag == 1) core = vars;
        else core = mag.get_str() + "*" + vars;
        if (first) {
            s += (c < 0 ? "-" : "") + core;
            first = false;
        } else {
            s += (c < 0 ? " - " : " + ") + core;
        }
    }
    return s;
}

namespace detail {

struct LexToken {
    enum Kind { Num, Var, Plus, Minus, Star, Caret, End } kind;
    Int num;
    int var = 0; // zero-based
    size_t pos = 0;
};

inline std::vector<LexToken> lex_poly(const std::string& s, int nvars) {
    std::vector<LexToken> out;
    size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') { ++i; continue; }
        if (ch == '+') { out.push_back({LexToken::Plus, 0, 0, i}); ++i; continue; }
        if (ch == '-') { out.push_back({LexToken::Minus, 0, 0, i}); ++i; continue; }
        if (ch == '*') { out.push_back({LexToken::Star, 0, 0, i}); ++i; continue; }
        if (ch == '^') { out.push_back({LexToken::Caret, 0, 0, i}); ++i; continue; }
        if (ch >= '0' && ch <= '9') {
            size_t j = i;
            while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
            out.push_back({LexToken::Num, Int(s.substr(i, j - i)), 0, i});
            i = j;
            continue;
        }
        if (ch == 't') {
            size_t j = i + 1;
            while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
            if (j == i + 1)
                throw invalid_input("laurent parse: variable needs an index at offset " + std::to_string(i));
            int idx = std::atoi(s.substr(i + 1, j - i - 1).c_str());
            if (idx < 1 || idx > nvars)
                throw invalid_input("laurent parse: variable t" + std::to_string(idx) +
                                    " out of range (have " + std::to_string(nvars) + ") at offset " +
                                    std::to_string(i));
            out.push_back({LexToken::Var, 0, idx - 1, i});
            i = j;
            continue;
        }
        throw invalid_input(std::string("laurent parse: unexpected character '") + ch +
                            "' at offset " + std::to_string(i));
    }
    out.push_back({LexToken::End, 0, 0, s.size()});
    return out;
}

} // namespace detail

// parse the textual form; accepts the output of to_string plus optional
// implicit multiplication between factors
inline LaurentPoly parse_laurent(const std::string& s, int nvars) {
    using detail::LexToken;
    std::vector<LexToken> toks = detail::lex_poly(s, nvars);
    size_t i = 0;
    LaurentPoly result(nvars);

    auto parse_factor = [&](Int& coeff, Exp& e) {
        const LexToken& t = toks[i];
        if (t.kind == LexToken::Num) {
            coeff *= t.num;
            ++i;
            return;
        }
        if (t.kind == LexToken::Var) {
            int v = t.var;
            ++i;
            int p = 1;
            if (toks[i].kind == LexToken::Caret) {
                ++i;
                int sign = 1;
                if (toks[i].kind == LexToken::Minus) { sign = -1; ++i; }
                if (toks[i].kind != LexToken::Num)
                    throw invalid_input("laurent parse: expected exponent at offset " +
                                        std::to_string(toks[i].pos));
                p = sign * static_cast<int>(toks[i].num.get_si());
                ++i;
            }
            e[static_cast<size_t>(v)] += p;
            return;
        }
        throw invalid_input("laurent parse: expected factor at offset " + std::to_string(t.pos));
    };

    bool expect_term = true;
    Int sign = 1;
    while (toks[i].kind != LexToken::End) {
        if (!expect_term) {
            if (toks[i].kind == LexToken::Plus) { sign = 1; ++i; }
            else if (toks[i].kind == LexToken::Minus) { sign = -1; ++i; }
            else throw invalid_input("laurent parse: expected '+' or '-' at offset " +
                                     std::to_string(toks[i].pos));
            expect_term = true;
            continue;
        }
        if (toks[i].kind == LexToken::Minus) { sign = -sign; ++i; continue; }
        if (toks[i].kind == LexToken::Plus) { ++i; continue; }
        Int coeff = sign;
        Exp e(static_cast<size_t>(nvars), 0);
        parse_factor(coeff, e);
        while (toks[i].kind == LexToken::Star || toks[i].kind == LexToken::Num ||
               toks[i].kind == LexToken::Var) {
            if (toks[i].kind == LexToken::Star) ++i;
            parse_factor(coeff, e);
        }
        result.add_term(e, coeff);
        sign = 1;
        expect_term = false;
    }
    if (expect_term && !result.is_zero())
        throw invalid_input("laurent parse: dangling sign");
    return result;
}

} // namespace magnus
