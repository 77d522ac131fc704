// Magnus functor: kernel evaluation against the standard pieces, the
// two-path oracle on random Heegaard data, functoriality, monoidality, and
// the Magnus representation.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "magnus/magnus_functor.hpp"
#include "magnus/sampling.hpp"

using namespace magnus;

TEST_CASE("identity cylinder evaluates to the identity relation", "[magnus]") {
    std::mt19937_64 rng(73);
    for (int g = 0; g <= 2; ++g) {
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        LagRelation r = mag_kernel(compile(identity_cylinder(g, phi)));
        CHECK(r == identity_relation(mag_object(g, phi)));
    }
}

TEST_CASE("handlebody evaluates to the compressed-handle relation", "[magnus]") {
    // cup of genus g: target-side span of the a-classes
    std::mt19937_64 rng(79);
    for (int g = 1; g <= 2; ++g) {
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        for (int i = 0; i < g; ++i) phi.val[static_cast<size_t>(i)] = Exp(2, 0);
        LagRelation r = mag_kernel(compile(cup_data(g, phi)));
        PointedHermModule tgt = mag_object(g, phi);
        MatQ gens(2 * g, g, 2);
        for (int i = 0; i < g; ++i) gens.at(i, i) = RingFrac::one(2);
        CHECK(r == make_relation(mag_object(0, PhiValuation::trivial(0, 2)), tgt, gens));

        // cap of genus g: source-side span of the b-classes
        PhiValuation psi = random_phi(rng, 2 * g, 2);
        for (int i = 0; i < g; ++i) psi.val[static_cast<size_t>(g + i)] = Exp(2, 0);
        LagRelation q = mag_kernel(compile(cap_data(g, psi)));
        MatQ bgens(2 * g, g, 2);
        for (int i = 0; i < g; ++i) bgens.at(g + i, i) = RingFrac::one(2);
        CHECK(q == make_relation(mag_object(g, psi), mag_object(0, PhiValuation::trivial(0, 2)), bgens));
    }
}

TEST_CASE("mapping cylinder evaluates to the Jacobian graph", "[magnus]") {
    std::mt19937_64 rng(83);
    for (int rep = 0; rep < 8; ++rep) {
        int g = 1 + static_cast<int>(rng() % 3);
        FreeEndo f = random_mcg(rng, g);
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        LagRelation r = mag_kernel(compile(mapping_cylinder(f, phi)));
        LagRelation expected = graph_relation(mag_object(g, pullback(phi, f)), mag_object(g, phi),
                                              q_of_r(jacobian(f, phi)));
        CHECK(r == expected);
    }
}

TEST_CASE("two-path oracle: Heegaard composition equals the kernel", "[magnus]") {
    std::mt19937_64 rng(89);
    for (int rep = 0; rep < 30; ++rep) {
        HeegaardData h = random_heegaard(rng, 2);
        CHECK(mag_heegaard(h) == mag_kernel(compile(h)));
    }
}

TEST_CASE("functoriality: amalgamation matches relation composition", "[magnus]") {
    std::mt19937_64 rng(97);
    for (int rep = 0; rep < 15; ++rep) {
        auto [bottom, top] = random_composable_pair(rng, 2);
        CobPresentation cb = compile(bottom), ct = compile(top);
        CHECK(mag_kernel(amalgamate(cb, ct)) == compose(mag_kernel(ct), mag_kernel(cb)));
    }
}

TEST_CASE("monoidality: connected sum matches relation tensor", "[magnus]") {
    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 15; ++rep) {
        HeegaardData x = random_heegaard(rng, 2, 2);
        HeegaardData y = random_heegaard(rng, 2, 2);
        CobPresentation cx = compile(x), cy = compile(y);
        CHECK(mag_kernel(tensor_cob(cx, cy)) == tensor_relation(mag_kernel(cx), mag_kernel(cy)));
    }
}

TEST_CASE("Magnus representation of cylinders", "[magnus]") {
    std::mt19937_64 rng(103);
    PhiValuation phi = random_phi(rng, 4, 2);
    CHECK(magnus_rep(compile(identity_cylinder(2, phi))) == MatQ::identity(4, 2));

    for (int rep = 0; rep < 6; ++rep) {
        int g = 1 + static_cast<int>(rng() % 2);
        FreeEndo f = random_mcg(rng, g);
        PhiValuation psi = random_phi(rng, 2 * g, 2);
        CHECK(magnus_rep(compile(mapping_cylinder(f, psi))) == q_of_r(jacobian(f, psi)));
    }
}

TEST_CASE("Magnus representation is multiplicative over gluing", "[magnus]") {
    std::mt19937_64 rng(107);
    for (int rep = 0; rep < 6; ++rep) {
        int g = 1 + static_cast<int>(rng() % 2);
        FreeEndo f = random_mcg(rng, g), e = random_mcg(rng, g);
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        CobPresentation bottom = compile(mapping_cylinder(e, pullback(phi, f)));
        CobPresentation top = compile(mapping_cylinder(f, phi));
        CobPresentation glued = amalgamate(bottom, top);
        CHECK(magnus_rep(glued) == q_of_r(jacobian(f, phi)) * magnus_rep(bottom));
        CHECK(magnus_rep(glued) == q_of_r(jacobian(endo_compose(f, e), phi)));
    }
}

TEST_CASE("Magnus representation rejects non homology cobordisms", "[magnus]") {
    PhiValuation kill_a = PhiValuation::trivial(2, 1);
    CHECK_THROWS_AS(magnus_rep(compile(cup_data(1, kill_a))), invalid_input);

    // a piece with a surviving circle factor: surjectivity onto homology fails
    FreeEndo s = s_move(1, 1);
    PhiValuation phi;
    phi.ngens = 2;
    phi.nvars = 1;
    phi.val = {{1}, {0}};
    HeegaardData h;
    h.r_minus = 1;
    h.r_plus = 1;
    h.nvars = 1;
    h.f = s;
    h.phi_hat = phi;
    CHECK_THROWS_AS(magnus_rep(compile(h)), invalid_input);
    CHECK(mag_heegaard(h) == mag_kernel(compile(h))); // Mag itself is still defined
}
