// Cobordism model: compilation of Heegaard data, boundary matrices,
// amalgamation, boundary connected sum, and the text format.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "magnus/cobordism.hpp"
#include "magnus/sampling.hpp"

using namespace magnus;

namespace {

PhiValuation make_phi(int ngens, int nvars, std::vector<Exp> val) {
    PhiValuation p;
    p.ngens = ngens;
    p.nvars = nvars;
    p.val = std::move(val);
    return p;
}

CobPresentation apply_gen_perm(const CobPresentation& c, const std::vector<int>& perm) {
    auto map_word = [&](const Word& w) {
        Word out;
        for (int letter : w.letters) {
            int target = perm[static_cast<size_t>(std::abs(letter) - 1)];
            out.letters.push_back(letter > 0 ? target : -target);
        }
        return out;
    };
    CobPresentation out = c;
    for (auto& r : out.relators) r = map_word(r);
    for (auto& w : out.m_minus) w = map_word(w);
    for (auto& w : out.m_plus) w = map_word(w);
    for (int i = 0; i < c.k; ++i)
        out.phi.val[static_cast<size_t>(perm[static_cast<size_t>(i)] - 1)] =
            c.phi.val[static_cast<size_t>(i)];
    return out;
}

bool same_presentation(const CobPresentation& x, const CobPresentation& y) {
    return x.k == y.k && x.nvars == y.nvars && x.g_minus == y.g_minus && x.g_plus == y.g_plus &&
           x.relators == y.relators && x.phi == y.phi && x.m_minus == y.m_minus &&
           x.m_plus == y.m_plus;
}

} // namespace

TEST_CASE("identity cylinder compiles to the free presentation", "[cobordism]") {
    PhiValuation phi = make_phi(2, 2, {{1, 0}, {0, 1}});
    CobPresentation c = compile(identity_cylinder(1, phi));
    CHECK(c.k == 2);
    CHECK(c.relators.empty());
    CHECK(c.m_minus == std::vector<Word>{Word{{1}}, Word{{2}}});
    CHECK(c.m_plus == std::vector<Word>{Word{{1}}, Word{{2}}});
    auto [lo, hi] = boundary_matrices(c);
    CHECK(lo == MatR::identity(2, 2));
    CHECK(hi == MatR::identity(2, 2));
}

TEST_CASE("genus-1 handlebody pieces compile as expected", "[cobordism]") {
    // cup: one relator a1, empty lower boundary
    PhiValuation phi = make_phi(2, 1, {{0}, {1}});
    CobPresentation cup = compile(cup_data(1, phi));
    CHECK(cup.g_minus == 0);
    CHECK(cup.g_plus == 1);
    CHECK(cup.relators == std::vector<Word>{Word{{1}}});
    CHECK(cup.m_minus.empty());
    CHECK(cup.m_plus == std::vector<Word>{Word{{1}}, Word{{2}}});
    MatR fox = h1_presentation(cup);
    REQUIRE(fox.rows == 1);
    CHECK(fox.at(0, 0) == LaurentPoly::constant(1, 1));
    CHECK(fox.at(0, 1) == LaurentPoly(1));
    auto [lo, hi] = boundary_matrices(cup);
    CHECK(lo.cols == 0);
    CHECK(hi == MatR::identity(2, 1));

    // cap: one relator b1, empty upper boundary
    PhiValuation psi = make_phi(2, 1, {{1}, {0}});
    CobPresentation cap = compile(cap_data(1, psi));
    CHECK(cap.relators == std::vector<Word>{Word{{2}}});
    CHECK(cap.m_plus.empty());
    CHECK(cap.m_minus == std::vector<Word>{Word{{1}}, Word{{2}}});
}

TEST_CASE("mapping cylinder carries the gluing on its lower boundary", "[cobordism]") {
    FreeEndo f = twist_a(1, 1);
    PhiValuation phi = make_phi(2, 2, {{1, 0}, {0, 1}});
    CobPresentation c = compile(mapping_cylinder(f, phi));
    CHECK(c.relators.empty());
    CHECK(c.m_minus == f.images);
    CHECK(c.m_plus == std::vector<Word>{Word{{1}}, Word{{2}}});
    auto [lo, hi] = boundary_matrices(c);
    CHECK(lo == jacobian(f, phi));
    CHECK(hi == MatR::identity(2, 2));
    CHECK(phi_minus_of(mapping_cylinder(f, phi)) == pullback(phi, f));
    CHECK(phi_plus_of(mapping_cylinder(f, phi)) == phi);
}

TEST_CASE("compile output has deficiency g_minus + g_plus", "[cobordism]") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        int g = 1 + static_cast<int>(rng() % 3);
        FreeEndo f = random_mcg(rng, g);
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        CobPresentation c = compile(mapping_cylinder(f, phi));
        CHECK(c.k - static_cast<int>(c.relators.size()) == c.g_minus + c.g_plus);
    }
    PhiValuation kill_a = make_phi(4, 1, {{0}, {0}, {1}, {2}});
    CobPresentation c = compile(cup_data(2, kill_a));
    CHECK(c.k - static_cast<int>(c.relators.size()) == c.g_minus + c.g_plus);
}

TEST_CASE("relator rows satisfy the fundamental Fox identity", "[cobordism]") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 10; ++rep) {
        int g = 1 + static_cast<int>(rng() % 2);
        PhiValuation phi = random_phi(rng, 2 * g, 2);
        for (int i = 0; i < g; ++i) phi.val[static_cast<size_t>(i)] = Exp(2, 0);
        CobPresentation c = compile(cup_data(g, phi));
        MatR fox = h1_presentation(c);
        LaurentPoly one = LaurentPoly::constant(2, 1);
        for (int r = 0; r < fox.rows; ++r) {
            LaurentPoly acc(2);
            for (int j = 0; j < c.k; ++j)
                acc += fox.at(r, j) * (phi_of_gen(c.phi, j + 1) - one);
            CHECK(acc == LaurentPoly(2));
        }
    }
}

TEST_CASE("boundary-word relator has the pinned Fox row", "[cobordism]") {
    CobPresentation c;
    c.k = 2;
    c.nvars = 2;
    c.phi = make_phi(2, 2, {{1, 0}, {0, 1}});
    c.relators = {boundary_word(1)};
    validate_presentation(c);
    MatR fox = h1_presentation(c);
    // nu = b a b^-1 a^-1: row (y - 1, 1 - x)
    CHECK(fox.at(0, 0) == parse_laurent("t2 - 1", 2));
    CHECK(fox.at(0, 1) == parse_laurent("1 - t1", 2));
}

TEST_CASE("amalgamating cup and cap closes off the genus-1 piece", "[cobordism]") {
    PhiValuation trivial = PhiValuation::trivial(2, 1);
    CobPresentation closed = amalgamate(compile(cup_data(1, trivial)), compile(cap_data(1, trivial)));
    CHECK(closed.k == 4);
    CHECK(closed.g_minus == 0);
    CHECK(closed.g_plus == 0);
    std::vector<Word> expected = {Word{{1}}, Word{{4}}, Word{{1, -3}}, Word{{2, -4}}};
    CHECK(closed.relators == expected);
    CHECK(rank_r(h1_presentation(closed)) == 4); // H vanishes: this piece is simply connected
}

TEST_CASE("amalgamate rejects mismatched interfaces", "[cobordism]") {
    PhiValuation trivial1 = PhiValuation::trivial(2, 1);
    PhiValuation trivial2 = PhiValuation::trivial(4, 1);
    CobPresentation cyl1 = compile(identity_cylinder(1, trivial1));
    CobPresentation cyl2 = compile(identity_cylinder(2, trivial2));
    CHECK_THROWS_AS(amalgamate(cyl1, cyl2), invalid_input);

    PhiValuation nontrivial = make_phi(2, 1, {{1}, {0}});
    CobPresentation cylphi = compile(identity_cylinder(1, nontrivial));
    CHECK_THROWS_WITH(amalgamate(cyl1, cylphi),
                      Catch::Matchers::ContainsSubstring("middle valuations disagree"));
}

TEST_CASE("tensor with a cylinder matches the combined Heegaard data", "[cobordism]") {
    // cup of genus 1 joined with an identity cylinder, as one splitting
    Exp pa = {2}, pb = {-1};
    PhiValuation combined = make_phi(4, 1, {{0}, pa, {1}, pb});
    HeegaardData joined;
    joined.g_minus = 1;
    joined.g_plus = 2;
    joined.r_minus = 1;
    joined.nvars = 1;
    joined.f = identity_endo(2);
    joined.phi_hat = combined;
    CobPresentation direct = compile(joined);

    PhiValuation cup_phi = make_phi(2, 1, {{0}, {1}});
    PhiValuation cyl_phi = make_phi(2, 1, {pa, pb});
    CobPresentation tensored =
        tensor_cob(compile(cup_data(1, cup_phi)), compile(identity_cylinder(1, cyl_phi)));
    CHECK(tensored.g_minus == 1);
    CHECK(tensored.g_plus == 2);

    // generator order differs by the handle interleaving only
    std::vector<int> perm = {1, 3, 2, 4};
    CHECK(same_presentation(apply_gen_perm(tensored, perm), direct));
}

TEST_CASE("tensor with the empty cobordism reindexes nothing", "[cobordism]") {
    PhiValuation phi = make_phi(2, 1, {{1}, {0}});
    CobPresentation cyl = compile(identity_cylinder(1, phi));
    CobPresentation empty = compile(identity_cylinder(0, PhiValuation::trivial(0, 1)));
    CHECK(same_presentation(tensor_cob(cyl, empty), cyl));
    CHECK(same_presentation(tensor_cob(empty, cyl), cyl));
}

TEST_CASE("random Heegaard data is valid and compiles", "[cobordism]") {
    std::mt19937_64 rng(59);
    for (int rep = 0; rep < 20; ++rep) {
        HeegaardData h = random_heegaard(rng, 2);
        CobPresentation c = compile(h); // construction validates all invariants
        CHECK(c.k - static_cast<int>(c.relators.size()) == c.g_minus + c.g_plus);
    }
}

TEST_CASE("random composable pairs share their middle interface", "[cobordism]") {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 10; ++rep) {
        auto [bottom, top] = random_composable_pair(rng, 2);
        REQUIRE(bottom.g_plus == top.g_minus);
        REQUIRE(phi_plus_of(bottom) == phi_minus_of(top));
        CobPresentation glued = amalgamate(compile(bottom), compile(top));
        CHECK(glued.g_minus == bottom.g_minus);
        CHECK(glued.g_plus == top.g_plus);
    }
}

TEST_CASE("text format round-trips the worked example", "[cobordism]") {
    std::string text =
        "cobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 G_rank=1\n"
        "  phi { a1 -> t1 ; b1 -> 1 }\n"
        "  f { a1 -> a1 ; b1 -> b1 a1 } }";
    HeegaardData h = parse_cobordism(text);
    CHECK(h.g_minus == 1);
    CHECK(h.g_plus == 1);
    CHECK(h.nvars == 1);
    CHECK(h.f.images == twist_a(1, 1).images);
    CHECK(h.phi_hat.val == std::vector<Exp>{{1}, {0}});

    // defaults: omitted blocks mean the identity gluing and trivial valuation
    HeegaardData plain = parse_cobordism("cobordism { g_minus=2 g_plus=2 r_minus=0 r_plus=0 G_rank=1 }");
    CHECK(plain.f.images == identity_endo(2).images);
    CHECK(plain.phi_hat == PhiValuation::trivial(4, 1));
}

TEST_CASE("text format reports errors with positions and invariant names", "[cobordism]") {
    CHECK_THROWS_WITH(parse_cobordism("cobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 }"),
                      Catch::Matchers::ContainsSubstring("missing mandatory key 'G_rank'"));
    CHECK_THROWS_WITH(parse_cobordism("cobordism { g_minus=1 g_plus=2 r_minus=0 r_plus=0 G_rank=1 }"),
                      Catch::Matchers::ContainsSubstring("genus balance"));
    CHECK_THROWS_WITH(parse_cobordism("cobordism { g_minus=1\n  oops=1 g_plus=1 r_minus=0 r_plus=0 G_rank=1 }"),
                      Catch::Matchers::ContainsSubstring("dsl:2:3"));
    CHECK_THROWS_WITH(parse_cobordism("cobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 G_rank=1\n"
                                      "  phi { a1 -> t1 + 1 } }"),
                      Catch::Matchers::ContainsSubstring("single monomial"));
    CHECK_THROWS_WITH(parse_cobordism("cobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 G_rank=1\n"
                                      "  f { a1 -> b1 } }"),
                      Catch::Matchers::ContainsSubstring("does not fix the boundary word"));
    CHECK_THROWS_WITH(parse_cobordism("cobordism { g_minus=0 g_plus=1 r_minus=1 r_plus=0 G_rank=1\n"
                                      "  phi { a1 -> t1 } }"),
                      Catch::Matchers::ContainsSubstring("does not kill"));
}
