// Seeded runtime verification suites.
//
// Each suite replays a battery of structural identities on deterministic
// pseudo-random data and reports one result per named check.  The suites are
// the user-facing counterpart of the test corpus: the command-line frontend
// exposes them behind the `verify` verb, so an installation can re-certify
// the arithmetic on demand.  Given the same seed the data, the evaluation
// order, and therefore the output are identical run to run.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "magnus/alexander.hpp"
#include "magnus/sampling.hpp"

namespace magnus {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string detail; // first failing case, empty when ok
};

namespace verify_detail {

inline LaurentPoly random_poly(std::mt19937_64& rng, int nvars, int max_terms) {
    LaurentPoly p(nvars);
    int nt = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_terms));
    for (int k = 0; k < nt; ++k) {
        Exp e(static_cast<size_t>(nvars));
        for (int& x : e) x = rnd_int(rng, -3, 3);
        p.add_term(e, Int(rnd_int(rng, -4, 4)));
    }
    return p;
}

inline RingFrac random_frac(std::mt19937_64& rng, int nvars, int max_terms) {
    LaurentPoly den = random_poly(rng, nvars, max_terms);
    while (den.is_zero()) den = random_poly(rng, nvars, max_terms);
    return RingFrac(random_poly(rng, nvars, max_terms), den);
}

// run `body` over numbered cases; the first failure is recorded, and an
// unexpected exception counts as a failure of the check, not of the runner
template <class F>
CheckResult check_cases(const std::string& name, int cases, F body) {
    CheckResult r{name, true, ""};
    for (int i = 0; i < cases; ++i) {
        std::string why;
        try {
            why = body(i);
        } catch (const std::exception& e) {
            why = std::string("threw: ") + e.what();
        }
        if (!why.empty()) {
            r.ok = false;
            r.detail = "case " + std::to_string(i) + ": " + why;
            break;
        }
    }
    return r;
}

} // namespace verify_detail

inline std::vector<CheckResult> verify_rings(std::uint64_t seed) {
    using verify_detail::check_cases;
    using verify_detail::random_frac;
    using verify_detail::random_poly;
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    out.push_back(check_cases("laurent ring axioms", 25, [&](int) -> std::string {
        int n = rnd_int(rng, 0, 2);
        LaurentPoly a = random_poly(rng, n, 4), b = random_poly(rng, n, 4),
                    c = random_poly(rng, n, 4);
        if ((a + b) * c != a * c + b * c) return "distributivity";
        if (a * b != b * a) return "commutativity";
        if ((a * b) * c != a * (b * c)) return "associativity";
        return "";
    }));

    out.push_back(check_cases("involution is a ring morphism", 25, [&](int) -> std::string {
        int n = rnd_int(rng, 1, 2);
        LaurentPoly a = random_poly(rng, n, 4), b = random_poly(rng, n, 4);
        if (involute(a * b) != involute(a) * involute(b)) return "multiplicativity";
        if (involute(a + b) != involute(a) + involute(b)) return "additivity";
        if (involute(involute(a)) != a) return "involutivity";
        return "";
    }));

    out.push_back(check_cases("gcd divides with exact quotients", 20, [&](int) -> std::string {
        int n = rnd_int(rng, 1, 2);
        LaurentPoly a = random_poly(rng, n, 3), b = random_poly(rng, n, 3),
                    m = random_poly(rng, n, 2);
        if (a.is_zero() || b.is_zero() || m.is_zero()) return "";
        LaurentPoly am = a * m, bm = b * m;
        LaurentPoly g = gcd(am, bm);
        if (divide_exact(am, g) * g != am) return "quotient of first argument";
        if (divide_exact(bm, g) * g != bm) return "quotient of second argument";
        // the forced common factor must divide the gcd
        LaurentPoly h = gcd(g, m);
        if (unit_normalize(h).normal != unit_normalize(m).normal)
            return "common factor not absorbed";
        return "";
    }));

    out.push_back(check_cases("unit normalization splits a monomial unit", 25, [&](int) -> std::string {
        int n = rnd_int(rng, 1, 2);
        LaurentPoly a = random_poly(rng, n, 4);
        if (a.is_zero()) return "";
        UnitNormal un = unit_normalize(a);
        if (!un.unit.is_monomial_unit()) return "unit part is not +/- monomial";
        if (un.unit * un.normal != a) return "parts do not multiply back";
        if (unit_normalize(un.normal).normal != un.normal) return "not idempotent";
        return "";
    }));

    out.push_back(check_cases("text form round-trips", 25, [&](int) -> std::string {
        int n = rnd_int(rng, 0, 2);
        LaurentPoly a = random_poly(rng, n, 5);
        if (parse_laurent(to_string(a), n) != a) return "parse(print) changed the element";
        return "";
    }));

    out.push_back(check_cases("fraction field axioms", 20, [&](int) -> std::string {
        int n = rnd_int(rng, 1, 2);
        RingFrac a = random_frac(rng, n, 3), b = random_frac(rng, n, 3),
                 c = random_frac(rng, n, 3);
        if (a * (b + c) != a * b + a * c) return "distributivity";
        if (!b.is_zero() && (a / b) * b != a) return "division inverse";
        if (a - a != RingFrac::zero(n)) return "subtraction";
        return "";
    }));

    return out;
}

inline std::vector<CheckResult> verify_forms(std::uint64_t seed) {
    using verify_detail::check_cases;
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    out.push_back(check_cases("surface form is skew-Hermitian with determinant 4^g", 18,
                              [&](int i) -> std::string {
        int g = 1 + i % 3;
        PointedHermModule h = build_module(g, random_phi(rng, 2 * g, 2));
        if (conj_transpose(h.s) != -h.s) return "conjugate transpose";
        LaurentPoly four_g = LaurentPoly::constant(2, 1);
        for (int k = 0; k < g; ++k) four_g = four_g * LaurentPoly::constant(2, 4);
        if (det_bareiss(h.s) != four_g) return "determinant";
        return "";
    }));

    out.push_back(check_cases("augmentation of the form is the doubled symplectic pairing", 12,
                              [&](int i) -> std::string {
        int g = 1 + i % 3;
        PointedHermModule h = build_module(g, random_phi(rng, 2 * g, 2));
        for (int r = 0; r < 2 * g; ++r)
            for (int c = 0; c < 2 * g; ++c) {
                Int expect = 0;
                if (c == r + g) expect = 2;
                if (r == c + g) expect = -2;
                if (augment(h.s.at(r, c)) != expect) return "entry mismatch";
            }
        return "";
    }));

    out.push_back(check_cases("boundary point satisfies S conj(nu) = 2 del", 12,
                              [&](int i) -> std::string {
        int g = 1 + i % 3;
        PointedHermModule h = build_module(g, random_phi(rng, 2 * g, 2));
        for (int r = 0; r < 2 * g; ++r) {
            LaurentPoly acc(2);
            for (int c = 0; c < 2 * g; ++c)
                acc += h.s.at(r, c) * involute(h.nu[static_cast<size_t>(c)]);
            if (acc != h.del[static_cast<size_t>(r)] * Int(2)) return "row identity";
        }
        return "";
    }));

    out.push_back(check_cases("boundary-fixing generators act unitarily", 6,
                              [&](int i) -> std::string {
        int g = 2 + i % 2;
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        PointedHermModule tgt = build_module(g, phi);
        std::vector<FreeEndo> gens = {twist_a(g, 1), twist_b(g, g, -1), handle_swap(g, 1),
                                      boundary_twist(g), s_move(g, 1)};
        for (const auto& f : gens) {
            if (!check_boundary(f)) return "generator moves the boundary word";
            MatR j = jacobian(f, phi);
            if (transpose(j) * tgt.s * involute(j) != build_module(g, pullback(phi, f)).s)
                return "pulled-back form mismatch";
        }
        return "";
    }));

    out.push_back(check_cases("pointed tensor agrees with the joined surface", 8,
                              [&](int) -> std::string {
        int g = rnd_int(rng, 1, 2), h = rnd_int(rng, 1, 2);
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        PhiValuation psi = random_phi(rng, 2 * h, 2);
        PointedHermModule join = tensor_pointed(build_module(g, phi), build_module(h, psi));
        PhiValuation merged = PhiValuation::trivial(2 * (g + h), 2);
        for (int i = 0; i < g; ++i) {
            merged.val[static_cast<size_t>(i)] = phi.val[static_cast<size_t>(i)];
            merged.val[static_cast<size_t>(g + h + i)] = phi.val[static_cast<size_t>(g + i)];
        }
        for (int i = 0; i < h; ++i) {
            merged.val[static_cast<size_t>(g + i)] = psi.val[static_cast<size_t>(i)];
            merged.val[static_cast<size_t>(g + h + g + i)] = psi.val[static_cast<size_t>(h + i)];
        }
        if (join != build_module(g + h, merged)) return "module mismatch";
        return "";
    }));

    return out;
}

inline std::vector<CheckResult> verify_functoriality(std::uint64_t seed) {
    using verify_detail::check_cases;
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    out.push_back(check_cases("two evaluation paths agree", 15, [&](int) -> std::string {
        HeegaardData h = random_heegaard(rng, 2);
        if (mag_heegaard(h) != mag_kernel(compile(h))) return "kernel vs handlebody path";
        return "";
    }));

    out.push_back(check_cases("amalgamation matches relation composition", 10,
                              [&](int) -> std::string {
        auto [bottom, top] = random_composable_pair(rng, 2);
        CobPresentation cb = compile(bottom), ct = compile(top);
        if (mag_kernel(amalgamate(cb, ct)) != compose(mag_kernel(ct), mag_kernel(cb)))
            return "composite relation mismatch";
        return "";
    }));

    out.push_back(check_cases("identity cylinders evaluate to identity relations", 8,
                              [&](int i) -> std::string {
        int g = 1 + i % 3;
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        LagRelation r = mag_kernel(compile(identity_cylinder(g, phi)));
        if (r != identity_relation(mag_object(g, phi))) return "not the diagonal";
        return "";
    }));

    out.push_back(check_cases("representation is multiplicative over gluing", 6,
                              [&](int) -> std::string {
        int g = rnd_int(rng, 1, 2);
        FreeEndo f1 = random_mcg(rng, g), f2 = random_mcg(rng, g);
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        CobPresentation top = compile(mapping_cylinder(f2, phi));
        CobPresentation bottom = compile(mapping_cylinder(f1, pullback(phi, f2)));
        MatQ glued = magnus_rep(amalgamate(bottom, top));
        if (glued != magnus_rep(top) * magnus_rep(bottom)) return "product mismatch";
        return "";
    }));

    return out;
}

inline std::vector<CheckResult> verify_monoidality(std::uint64_t seed) {
    using verify_detail::check_cases;
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    out.push_back(check_cases("connected sum matches relation tensor", 10, [&](int) -> std::string {
        HeegaardData x = random_heegaard(rng, 2, 2);
        HeegaardData y = random_heegaard(rng, 2, 2);
        CobPresentation cx = compile(x), cy = compile(y);
        if (mag_kernel(tensor_cob(cx, cy)) !=
            tensor_relation(mag_kernel(cx), mag_kernel(cy)))
            return "tensor relation mismatch";
        return "";
    }));

    out.push_back(check_cases("empty surface is a tensor unit", 6, [&](int i) -> std::string {
        int g = 1 + i % 3;
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        CobPresentation c = compile(identity_cylinder(g, phi));
        CobPresentation unit = compile(identity_cylinder(0, PhiValuation::trivial(0, 2)));
        if (mag_kernel(tensor_cob(c, unit)) != mag_kernel(c)) return "right unit";
        if (mag_kernel(tensor_cob(unit, c)) != mag_kernel(c)) return "left unit";
        return "";
    }));

    out.push_back(check_cases("interchange of tensor and composition", 5, [&](int) -> std::string {
        auto [b1, t1] = random_composable_pair(rng, 2, 2);
        auto [b2, t2] = random_composable_pair(rng, 2, 2);
        CobPresentation left = amalgamate(tensor_cob(compile(b1), compile(b2)),
                                          tensor_cob(compile(t1), compile(t2)));
        LagRelation right = tensor_relation(
            mag_kernel(amalgamate(compile(b1), compile(t1))),
            mag_kernel(amalgamate(compile(b2), compile(t2))));
        if (mag_kernel(left) != right) return "square does not commute";
        return "";
    }));

    return out;
}

inline std::vector<CheckResult> verify_factorization(std::uint64_t seed) {
    using verify_detail::check_cases;
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    out.push_back(check_cases("morphism factors through the projected operator", 8,
                              [&](int) -> std::string {
        CobPresentation c = compile(random_heegaard(rng, 1));
        FactorizationReport rep = factorization_check(c);
        if (!rep.ok) return rep.mismatch;
        return "";
    }));

    out.push_back(check_cases("transversal change scales order and operator inversely", 6,
                              [&](int) -> std::string {
        CobPresentation c = compile(random_heegaard(rng, 1));
        LagRelation rel = mag_kernel(c);
        Transversal w0 = default_transversal(rel);
        Transversal w1 = random_transversal(rng, rel);
        if (!factorization_check(c, rel, w1).ok) return "second transversal fails";
        RingFrac d = transversal_ratio(rel, w1, w0);
        if (mag_w_operator(rel, w1) != d * mag_w_operator(rel, w0))
            return "operator ratio mismatch";
        LaurentPoly o0 = ord_quotient(c, w0);
        if (o0.is_zero()) {
            if (!ord_quotient(c, w1).is_zero()) return "order vanishing mismatch";
        } else if (gauge_normal(RingFrac(ord_quotient(c, w1)) * d) !=
                   gauge_normal(RingFrac(o0))) {
            return "order ratio mismatch";
        }
        return "";
    }));

    out.push_back(check_cases("degenerate fillings vanish on both sides", 1,
                              [&](int) -> std::string {
        HeegaardData h;
        h.r_minus = 1;
        h.r_plus = 1;
        h.nvars = 1;
        h.f = s_move(1, 1);
        h.phi_hat = PhiValuation::trivial(2, 1);
        h.phi_hat.val[0] = Exp{1};
        CobPresentation c = compile(h);
        if (!alexander_vanishes(c)) return "function does not vanish";
        FactorizationReport rep = factorization_check(c);
        if (!rep.ok || !rep.degenerate) return "factorization not degenerate";
        if (!ord_quotient(c, default_transversal(mag_kernel(c))).is_zero())
            return "order not zero";
        return "";
    }));

    out.push_back(check_cases("integral wedge matches the morphism up to sign", 10,
                              [&](int) -> std::string {
        CobPresentation c = compile(random_heegaard(rng, 0, 2));
        LagRelation rel = mag_kernel(c);
        Transversal s = section_transversal(rel);
        GradedMap<Int> pl = pluecker(rel);
        LaurentPoly ord = ord_quotient(c, s);
        GradedMap<LaurentPoly> lhs = alex_morphism(c);
        // compare entrywise; the global unit must be +/-1 over plain integers
        int sign = 0;
        auto il = lhs.coeff.begin();
        auto ir = pl.coeff.begin();
        while (il != lhs.coeff.end() || ir != pl.coeff.end()) {
            bool left_only = ir == pl.coeff.end() ||
                             (il != lhs.coeff.end() && il->first < ir->first);
            bool right_only = il == lhs.coeff.end() ||
                              (ir != pl.coeff.end() && ir->first < il->first);
            if (left_only) return "morphism entry without wedge entry";
            if (right_only) {
                if (!ord.is_zero()) return "wedge entry without morphism entry";
                ++ir;
                continue;
            }
            LaurentPoly rhs = ord * LaurentPoly::constant(0, ir->second);
            if (sign == 0) sign = (il->second == rhs) ? 1 : (il->second == -rhs ? -1 : 0);
            if (sign == 0) return "entries differ by a non-sign factor";
            if (il->second != (sign > 0 ? rhs : -rhs)) return "global sign not constant";
            ++il;
            ++ir;
        }
        if (lhs.is_zero() && !ord.is_zero()) return "zero morphism with nonzero order";
        return "";
    }));

    return out;
}

inline std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "rings") return verify_rings(seed);
    if (name == "forms") return verify_forms(seed);
    if (name == "functoriality") return verify_functoriality(seed);
    if (name == "monoidality") return verify_monoidality(seed);
    if (name == "factorization") return verify_factorization(seed);
    throw invalid_input("verify: unknown suite '" + name +
                        "' (expected rings, forms, functoriality, monoidality, factorization)");
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"rings", "forms", "functoriality",
                                                "monoidality", "factorization"};
    return names;
}

} // namespace magnus
