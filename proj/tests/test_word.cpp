// Words, endomorphisms, valuations, Fox derivatives, the boundary word.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "magnus/word.hpp"

using namespace magnus;

namespace {

Word random_word(std::mt19937_64& rng, int ngens, int maxlen) {
    std::vector<int> raw;
    int len = static_cast<int>(rng() % static_cast<unsigned>(maxlen + 1));
    for (int i = 0; i < len; ++i) {
        int l = 1 + static_cast<int>(rng() % static_cast<unsigned>(ngens));
        raw.push_back((rng() & 1) ? l : -l);
    }
    return reduce(raw);
}

PhiValuation free_phi(int genus) {
    // each generator gets its own variable
    PhiValuation p;
    p.ngens = 2 * genus;
    p.nvars = 2 * genus;
    for (int i = 0; i < 2 * genus; ++i) {
        Exp e(static_cast<size_t>(2 * genus), 0);
        e[static_cast<size_t>(i)] = 1;
        p.val.push_back(e);
    }
    return p;
}

FreeEndo twist_a(int genus, int i) { // b_i -> b_i a_i
    FreeEndo f = identity_endo(genus);
    f.images[static_cast<size_t>(genus + i - 1)] = reduce({genus + i, i});
    return f;
}

FreeEndo twist_b(int genus, int i) { // a_i -> a_i b_i
    FreeEndo f = identity_endo(genus);
    f.images[static_cast<size_t>(i - 1)] = reduce({i, genus + i});
    return f;
}

} // namespace

TEST_CASE("reduction cancels adjacent inverses", "[word]") {
    CHECK(reduce({1, 2, -2, 1}).letters == std::vector<int>{1, 1});
    CHECK(reduce({1, -1}).empty());
    CHECK(reduce({2, 1, -1, -2, 3}).letters == std::vector<int>{3});
    CHECK(concat(reduce({1, 2}), reduce({-2, -1})).empty());
    CHECK_THROWS_AS(reduce({1, 0}), invalid_input);

    std::mt19937_64 rng(61);
    for (int i = 0; i < 40; ++i) {
        Word w = random_word(rng, 4, 10);
        CHECK(concat(w, inverse(w)).empty());
        CHECK(inverse(inverse(w)) == w);
    }
}

TEST_CASE("boundary word and its stability", "[word]") {
    CHECK(boundary_word(1).letters == std::vector<int>{2, 1, -2, -1});
    CHECK(boundary_word(2).letters == std::vector<int>{3, 1, -3, -1, 4, 2, -4, -2});

    for (int g = 1; g <= 3; ++g) {
        CHECK(check_boundary(identity_endo(g)));
        for (int i = 1; i <= g; ++i) {
            CHECK(check_boundary(twist_a(g, i)));
            CHECK(check_boundary(twist_b(g, i)));
        }
    }

    // exchanging a1 and b1 without conjugation breaks the boundary
    FreeEndo swap_bad = identity_endo(1);
    swap_bad.images[0] = reduce({2});
    swap_bad.images[1] = reduce({1});
    CHECK(!check_boundary(swap_bad));

    // boundary preservation is closed under composition
    FreeEndo f = endo_compose(twist_a(2, 1), endo_compose(twist_b(2, 2), twist_a(2, 2)));
    CHECK(check_boundary(f));
}

TEST_CASE("endomorphism composition acts by substitution", "[word]") {
    std::mt19937_64 rng(67);
    FreeEndo f = endo_compose(twist_a(2, 1), twist_b(2, 1));
    FreeEndo g = endo_compose(twist_b(2, 2), twist_a(2, 1));
    for (int i = 0; i < 30; ++i) {
        Word w = random_word(rng, 4, 8);
        CHECK(endo_apply(endo_compose(f, g), w) == endo_apply(f, endo_apply(g, w)));
    }
    FreeEndo h = twist_a(2, 2);
    CHECK(endo_compose(endo_compose(f, g), h).images == endo_compose(f, endo_compose(g, h)).images);
    CHECK(endo_compose(f, identity_endo(2)).images == f.images);
    CHECK(endo_compose(identity_endo(2), f).images == f.images);
}

TEST_CASE("valuations are multiplicative", "[word]") {
    PhiValuation phi = free_phi(2);
    std::mt19937_64 rng(71);
    for (int i = 0; i < 30; ++i) {
        Word u = random_word(rng, 4, 8), v = random_word(rng, 4, 8);
        CHECK(phi_of_word(phi, concat(u, v)) == phi_of_word(phi, u) * phi_of_word(phi, v));
        CHECK(phi_of_word(phi, inverse(u)) == involute(phi_of_word(phi, u)));
    }
    CHECK(phi_of_word(phi, Word{}).is_one());
}

TEST_CASE("Fox derivatives on the pinned examples", "[word][fox]") {
    PhiValuation phi = free_phi(1); // phi(a1) = t1, phi(b1) = t2
    Word xy = reduce({1, 2});
    CHECK(fox_derivative(phi, xy, 1) == LaurentPoly::constant(2, 1));
    CHECK(fox_derivative(phi, xy, 2) == LaurentPoly::variable(2, 0));

    Word xinv = reduce({-1});
    CHECK(fox_derivative(phi, xinv, 1) == -LaurentPoly::variable(2, 0, -1));

    // boundary word coordinates: (phi(b_i) - 1, 1 - phi(a_i)) per handle
    PhiValuation phi2 = free_phi(2);
    auto row = fox_row(phi2, boundary_word(2));
    auto tv = [&](int i) { return LaurentPoly::variable(4, i); };
    auto one = LaurentPoly::constant(4, 1);
    CHECK(row[0] == tv(2) - one);
    CHECK(row[1] == tv(3) - one);
    CHECK(row[2] == one - tv(0));
    CHECK(row[3] == one - tv(1));
}

TEST_CASE("fundamental identity of Fox calculus", "[word][fox]") {
    PhiValuation phi = free_phi(3);
    std::mt19937_64 rng(73);
    for (int i = 0; i < 40; ++i) {
        Word w = random_word(rng, 6, 12);
        LaurentPoly acc(6);
        for (int j = 1; j <= 6; ++j)
            acc += fox_derivative(phi, w, j) * (phi_of_gen(phi, j) - LaurentPoly::constant(6, 1));
        CHECK(acc == phi_of_word(phi, w) - LaurentPoly::constant(6, 1));
    }
}

TEST_CASE("product rule for Fox derivatives", "[word][fox]") {
    PhiValuation phi = free_phi(2);
    std::mt19937_64 rng(79);
    for (int i = 0; i < 40; ++i) {
        Word u = random_word(rng, 4, 8), v = random_word(rng, 4, 8);
        Word uv = concat(u, v);
        for (int j = 1; j <= 4; ++j) {
            LaurentPoly expect = fox_derivative(phi, u, j) + phi_of_word(phi, u) * fox_derivative(phi, v, j);
            CHECK(fox_derivative(phi, uv, j) == expect);
        }
    }
}

TEST_CASE("Jacobian of the elementary twist", "[word][fox]") {
    PhiValuation phi = free_phi(1);
    MatR j = jacobian(twist_a(1, 1), phi);
    CHECK(j.at(0, 0).is_one());
    CHECK(j.at(0, 1) == LaurentPoly::variable(2, 1)); // phi(b1)
    CHECK(j.at(1, 0).is_zero());
    CHECK(j.at(1, 1).is_one());
}

TEST_CASE("chain rule for Jacobians", "[word][fox]") {
    PhiValuation phi = free_phi(2);
    std::vector<FreeEndo> pool = {twist_a(2, 1), twist_b(2, 1), twist_a(2, 2), twist_b(2, 2)};
    std::mt19937_64 rng(83);
    for (int i = 0; i < 20; ++i) {
        FreeEndo f = pool[rng() % pool.size()];
        FreeEndo g = pool[rng() % pool.size()];
        FreeEndo h = pool[rng() % pool.size()];
        f = endo_compose(f, h);
        CHECK(jacobian(endo_compose(f, g), phi) == jacobian(f, phi) * jacobian(g, pullback(phi, f)));
    }
}

TEST_CASE("word text round-trip", "[word]") {
    Word w = reduce({1, 4, -1, -3});
    CHECK(to_string(w, 2) == "a1 b2 a1^-1 b1^-1");
    CHECK(parse_word(to_string(w, 2), 2) == w);
    CHECK(parse_word("1", 2).empty());
    CHECK(to_string(Word{}, 2) == "1");
    CHECK(parse_word("a1^3", 1).letters == std::vector<int>{1, 1, 1});
    CHECK(parse_word("b1^-2", 1).letters == std::vector<int>{-2, -2});
    CHECK_THROWS_AS(parse_word("c1", 2), invalid_input);
    CHECK_THROWS_AS(parse_word("a9", 2), invalid_input);
    CHECK_THROWS_AS(parse_word("a", 2), invalid_input);

    std::mt19937_64 rng(89);
    for (int i = 0; i < 40; ++i) {
        Word x = random_word(rng, 6, 10);
        CHECK(parse_word(to_string(x, 3), 3) == x);
    }
}
