// Fraction field of the Laurent polynomial ring.
//
// Every fraction is kept reduced (gcd of numerator and denominator is a unit)
// with the denominator in canonical normal form (lex-minimal exponent vector
// zero, positive leading coefficient); the monomial unit is absorbed into the
// numerator.  Equality of canonical representatives is structural.
#pragma once

#include <string>

#include "magnus/laurent.hpp"

namespace magnus {

class RingFrac {
public:
    LaurentPoly num;
    LaurentPoly den;

    RingFrac() : num(LaurentPoly::zero(0)), den(LaurentPoly::constant(0, 1)) {}
    explicit RingFrac(int nvars)
        : num(LaurentPoly::zero(nvars)), den(LaurentPoly::constant(nvars, 1)) {}
    explicit RingFrac(const LaurentPoly& p) : num(p), den(LaurentPoly::constant(p.nvars, 1)) {}

    RingFrac(const LaurentPoly& n, const LaurentPoly& d) : num(n), den(d) { reduce(); }

    static RingFrac zero(int nvars) { return RingFrac(nvars); }
    static RingFrac one(int nvars) { return RingFrac(LaurentPoly::constant(nvars, 1)); }
    static RingFrac constant(int nvars, const Int& c) {
        return RingFrac(LaurentPoly::constant(nvars, c));
    }

    int nvars() const { return num.nvars; }
    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }
    bool is_integral() const { return den.is_one(); }

    friend RingFrac operator+(const RingFrac& a, const RingFrac& b) {
        LaurentPoly g = gcd(a.den, b.den);
        if (g.is_zero() || g.is_one())
            return RingFrac(a.num * b.den + b.num * a.den, a.den * b.den);
        LaurentPoly bq = divide_exact(b.den, g);
        LaurentPoly aq = divide_exact(a.den, g);
        return RingFrac(a.num * bq + b.num * aq, a.den * bq);
    }

    friend RingFrac operator-(const RingFrac& a, const RingFrac& b) { return a + (-b); }

    RingFrac operator-() const {
        RingFrac r = *this;
        r.num = -r.num;
        return r;
    }

    friend RingFrac operator*(const RingFrac& a, const RingFrac& b) {
        // cross-reduce first to keep intermediates small
        LaurentPoly g1 = gcd(a.num, b.den);
        LaurentPoly g2 = gcd(b.num, a.den);
        LaurentPoly an = a.num, bd = b.den, bn = b.num, ad = a.den;
        if (!g1.is_zero() && !g1.is_one()) { an = divide_exact(an, g1); bd = divide_exact(bd, g1); }
        if (!g2.is_zero() && !g2.is_one()) { bn = divide_exact(bn, g2); ad = divide_exact(ad, g2); }
        return RingFrac(an * bn, ad * bd);
    }

    friend RingFrac operator/(const RingFrac& a, const RingFrac& b) {
        if (b.is_zero()) throw invalid_input("fraction: division by zero");
        return a * RingFrac(b.den, b.num);
    }

    RingFrac& operator+=(const RingFrac& b) { *this = *this + b; return *this; }
    RingFrac& operator-=(const RingFrac& b) { *this = *this - b; return *this; }
    RingFrac& operator*=(const RingFrac& b) { *this = *this * b; return *this; }
    RingFrac& operator/=(const RingFrac& b) { *this = *this / b; return *this; }

    friend bool operator==(const RingFrac& a, const RingFrac& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const RingFrac& a, const RingFrac& b) { return !(a == b); }

private:
    void reduce() {
        if (num.nvars != den.nvars) throw invalid_input("fraction: variable count mismatch");
        if (den.is_zero()) throw invalid_input("fraction: zero denominator");
        if (num.is_zero()) {
            den = LaurentPoly::constant(num.nvars, 1);
            return;
        }
        LaurentPoly g = gcd(num, den);
        if (!g.is_one()) {
            num = divide_exact(num, g);
            den = divide_exact(den, g);
        }
        UnitNormal un = unit_normalize(den);
        den = un.normal;
        // divide numerator by the +/- monomial unit
        Exp e = un.unit.trail_exp();
        for (int& x : e) x = -x;
        num = shift(num, e);
        if (un.unit.lead_coeff() < 0) num = -num;
    }
};

inline RingFrac involute(const RingFrac& a) {
    return RingFrac(involute(a.num), involute(a.den));
}

inline std::string to_string(const RingFrac& a) {
    if (a.is_integral()) return to_string(a.num);
    return "(" + to_string(a.num) + ")/(" + to_string(a.den) + ")";
}

// parse "num" or "(num)/(den)"
inline RingFrac parse_fraction(const std::string& s, int nvars) {
    size_t depth = 0, slash = std::string::npos;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') { if (depth == 0) throw invalid_input("fraction parse: unbalanced ')'"); --depth; }
        else if (s[i] == '/' && depth == 0) {
            if (slash != std::string::npos) throw invalid_input("fraction parse: multiple '/'");
            slash = i;
        }
    }
    if (depth != 0) throw invalid_input("fraction parse: unbalanced '('");
    auto strip = [](std::string t) {
        size_t b = t.find_first_not_of(" \t");
        size_t e = t.find_last_not_of(" \t");
        if (b == std::string::npos) return std::string();
        t = t.substr(b, e - b + 1);
        if (t.size() >= 2 && t.front() == '(' && t.back() == ')') {
            // strip only if the outer parentheses match each other
            size_t d = 0;
            bool outer = true;
            for (size_t i = 0; i < t.size(); ++i) {
                if (t[i] == '(') ++d;
                else if (t[i] == ')') { --d; if (d == 0 && i + 1 != t.size()) { outer = false; break; } }
            }
            if (outer) t = t.substr(1, t.size() - 2);
        }
        return t;
    };
    if (slash == std::string::npos) return RingFrac(parse_laurent(strip(s), nvars));
    return RingFrac(parse_laurent(strip(s.substr(0, slash)), nvars),
                    parse_laurent(strip(s.substr(slash + 1)), nvars));
}

} // namespace magnus
