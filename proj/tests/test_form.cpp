// Surface form: matrix entries, skew-Hermitian symmetry, determinant,
// boundary point identities, pointed tensor.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "magnus/herm_module.hpp"
#include "magnus/sampling.hpp"

using namespace magnus;

namespace {

std::vector<RingFrac> basis_vec(int n, int k, int nvars) {
    std::vector<RingFrac> v(static_cast<size_t>(n), RingFrac::zero(nvars));
    v[static_cast<size_t>(k)] = RingFrac::one(nvars);
    return v;
}

} // namespace

TEST_CASE("genus one matrices are the pinned ones", "[form]") {
    // trivial valuation
    PointedHermModule h0 = build_module(1, PhiValuation::trivial(2, 0));
    CHECK(h0.s.at(0, 0).is_zero());
    CHECK(h0.s.at(0, 1) == LaurentPoly::constant(0, 2));
    CHECK(h0.s.at(1, 0) == LaurentPoly::constant(0, -2));
    CHECK(h0.s.at(1, 1).is_zero());
    CHECK(form_eval(h0, basis_vec(2, 0, 0), basis_vec(2, 1, 0)) == RingFrac::constant(0, 2));

    // free valuation phi(a1) = x = t1, phi(b1) = y = t2
    PhiValuation phi;
    phi.ngens = 2;
    phi.nvars = 2;
    phi.val = {{1, 0}, {0, 1}};
    PointedHermModule h = build_module(1, phi);
    LaurentPoly x = LaurentPoly::variable(2, 0), y = LaurentPoly::variable(2, 1);
    LaurentPoly one = LaurentPoly::constant(2, 1), two = LaurentPoly::constant(2, 2);
    LaurentPoly q = (x + one) * (involute(y) + one) - two;
    CHECK(h.s.at(0, 0) == involute(x) - x);
    CHECK(h.s.at(0, 1) == q);
    CHECK(h.s.at(1, 0) == -involute(q));
    CHECK(h.s.at(1, 1) == y - involute(y));
    CHECK(h.del == std::vector<LaurentPoly>{x - one, y - one});
    CHECK(h.nu == std::vector<LaurentPoly>{y - one, one - x});
}

TEST_CASE("skew symmetry and determinant", "[form]") {
    std::mt19937_64 rng(97);
    for (int g = 1; g <= 3; ++g) {
        for (int rep = 0; rep < 8; ++rep) {
            PhiValuation phi = random_phi(rng, 2 * g, 2);
            PointedHermModule h = build_module(g, phi);
            CHECK(conj_transpose(h.s) == -h.s);
            LaurentPoly four_g = LaurentPoly::constant(2, 1);
            for (int i = 0; i < g; ++i) four_g = four_g * LaurentPoly::constant(2, 4);
            CHECK(det_bareiss(h.s) == four_g);
            // augmentation sends S to the standard symplectic pairing doubled
            for (int i = 0; i < 2 * g; ++i)
                for (int j = 0; j < 2 * g; ++j) {
                    Int expect = 0;
                    if (j == i + g) expect = 2;
                    if (i == j + g) expect = -2;
                    CHECK(augment(h.s.at(i, j)) == expect);
                }
        }
    }
}

TEST_CASE("the boundary point pairs to the augmentation ideal", "[form]") {
    std::mt19937_64 rng(101);
    for (int g = 1; g <= 3; ++g) {
        for (int rep = 0; rep < 10; ++rep) {
            PhiValuation phi = random_phi(rng, 2 * g, 2);
            PointedHermModule h = build_module(g, phi);

            // S involute(nu) = 2 del
            for (int i = 0; i < 2 * g; ++i) {
                LaurentPoly acc(2);
                for (int j = 0; j < 2 * g; ++j) acc += h.s.at(i, j) * involute(h.nu[static_cast<size_t>(j)]);
                CHECK(acc == h.del[static_cast<size_t>(i)] * Int(2));
            }

            // form_eval(e_i, nu/2) = del_i and form_eval(nu/2, e_i) = -involute(del_i)
            std::vector<RingFrac> half_nu;
            for (const auto& p : h.nu)
                half_nu.push_back(RingFrac(p, LaurentPoly::constant(2, 2)));
            for (int i = 0; i < 2 * g; ++i) {
                CHECK(form_eval(h, basis_vec(2 * g, i, 2), half_nu) == RingFrac(h.del[static_cast<size_t>(i)]));
                CHECK(form_eval(h, half_nu, basis_vec(2 * g, i, 2)) ==
                      -involute(RingFrac(h.del[static_cast<size_t>(i)])));
            }
        }
    }
}

TEST_CASE("form is sesquilinear", "[form]") {
    std::mt19937_64 rng(103);
    PhiValuation phi = random_phi(rng, 4, 2);
    PointedHermModule h = build_module(2, phi);
    RingFrac lam(LaurentPoly::variable(2, 0) - LaurentPoly::constant(2, 3));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            auto x = basis_vec(4, i, 2), y = basis_vec(4, j, 2);
            RingFrac base = form_eval(h, x, y);
            auto xs = x, ys = y;
            for (auto& e : xs) e = e * lam;
            for (auto& e : ys) e = e * lam;
            CHECK(form_eval(h, xs, y) == lam * base);
            CHECK(form_eval(h, x, ys) == involute(lam) * base);
        }
}

TEST_CASE("pointed tensor equals the joined surface", "[form]") {
    std::mt19937_64 rng(107);
    for (int rep = 0; rep < 12; ++rep) {
        int g = 1 + static_cast<int>(rng() % 2);
        int h = 1 + static_cast<int>(rng() % 2);
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        PhiValuation psi = random_phi(rng, 2 * h, 2);
        PointedHermModule join = tensor_pointed(build_module(g, phi), build_module(h, psi));

        PhiValuation merged;
        merged.ngens = 2 * (g + h);
        merged.nvars = 2;
        merged.val.assign(static_cast<size_t>(2 * (g + h)), Exp(2, 0));
        for (int i = 0; i < g; ++i) {
            merged.val[static_cast<size_t>(i)] = phi.val[static_cast<size_t>(i)];
            merged.val[static_cast<size_t>(g + h + i)] = phi.val[static_cast<size_t>(g + i)];
        }
        for (int i = 0; i < h; ++i) {
            merged.val[static_cast<size_t>(g + i)] = psi.val[static_cast<size_t>(i)];
            merged.val[static_cast<size_t>(g + h + g + i)] = psi.val[static_cast<size_t>(h + i)];
        }
        CHECK(join == build_module(g + h, merged));
    }
}

TEST_CASE("tensor unit and associativity", "[form]") {
    std::mt19937_64 rng(109);
    PointedHermModule unit = build_module(0, PhiValuation::trivial(0, 2));
    PointedHermModule a = build_module(1, random_phi(rng, 2, 2));
    PointedHermModule b = build_module(1, random_phi(rng, 2, 2));
    PointedHermModule c = build_module(2, random_phi(rng, 4, 2));
    CHECK(tensor_pointed(unit, a) == a);
    CHECK(tensor_pointed(a, unit) == a);
    CHECK(tensor_pointed(tensor_pointed(a, b), c) == tensor_pointed(a, tensor_pointed(b, c)));
}

TEST_CASE("twist Jacobian is unitary between pulled-back forms", "[form]") {
    // f: a1 -> a1, b1 -> b1 a1 with free target valuation
    FreeEndo f = identity_endo(1);
    f.images[1] = reduce({2, 1});
    PhiValuation phi;
    phi.ngens = 2;
    phi.nvars = 2;
    phi.val = {{1, 0}, {0, 1}};
    MatR j = jacobian(f, phi);
    PointedHermModule tgt = build_module(1, phi);
    PointedHermModule src = build_module(1, pullback(phi, f));
    CHECK(transpose(j) * tgt.s * involute(j) == src.s);
}

TEST_CASE("boundary-fixing automorphisms act unitarily", "[form]") {
    std::mt19937_64 rng(271);
    for (int g = 2; g <= 3; ++g) {
        std::vector<FreeEndo> gens = {twist_a(g, 1), twist_a(g, g, -1), twist_b(g, 2),
                                      handle_swap(g, 1), boundary_twist(g), s_move(g, 1),
                                      s_move(g, g)};
        if (g == 3) gens.push_back(handle_swap(g, 2));
        for (int rep = 0; rep < 3; ++rep) {
            PhiValuation phi = random_phi(rng, 2 * g, 2);
            PointedHermModule tgt = build_module(g, phi);
            for (const auto& f : gens) {
                REQUIRE(check_boundary(f));
                MatR j = jacobian(f, phi);
                CHECK(transpose(j) * tgt.s * involute(j) == build_module(g, pullback(phi, f)).s);
            }
        }
    }
}
