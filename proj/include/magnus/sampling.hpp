// Deterministic random generators for property checks: words, valuations,
// and a library of boundary-preserving surface-group automorphisms built from
// elementary twists, conjugated handle swaps, and the boundary twist.
// Everything is driven by a caller-owned mt19937_64 so runs are reproducible
// from a seed.
#pragma once

#include <random>
#include <vector>

#include "magnus/alexander.hpp"
#include "magnus/cobordism.hpp"
#include "magnus/herm_module.hpp"
#include "magnus/lattice.hpp"
#include "magnus/word.hpp"

namespace magnus {

inline int rnd_int(std::mt19937_64& rng, int lo, int hi) { // inclusive bounds
    return lo + static_cast<int>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

inline Word random_word(std::mt19937_64& rng, int ngens, int maxlen) {
    std::vector<int> raw;
    int len = rnd_int(rng, 0, maxlen);
    for (int i = 0; i < len; ++i) {
        int l = rnd_int(rng, 1, ngens);
        raw.push_back((rng() & 1) ? l : -l);
    }
    return reduce(raw);
}

inline PhiValuation random_phi(std::mt19937_64& rng, int ngens, int nvars, int spread = 2) {
    PhiValuation p;
    p.ngens = ngens;
    p.nvars = nvars;
    for (int i = 0; i < ngens; ++i) {
        Exp e(static_cast<size_t>(nvars));
        for (int& x : e) x = rnd_int(rng, -spread, spread);
        p.val.push_back(e);
    }
    return p;
}

// valuation sending each generator to its own variable
inline PhiValuation free_phi(int genus) {
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

// ---------------------------------------------------------------------------
// boundary-preserving automorphisms
// ---------------------------------------------------------------------------

inline FreeEndo twist_a(int genus, int i, int dir = 1) { // b_i -> b_i a_i^dir
    FreeEndo f = identity_endo(genus);
    f.images[static_cast<size_t>(genus + i - 1)] = reduce({genus + i, dir > 0 ? i : -i});
    return f;
}

inline FreeEndo twist_b(int genus, int i, int dir = 1) { // a_i -> a_i b_i^dir
    FreeEndo f = identity_endo(genus);
    f.images[static_cast<size_t>(i - 1)] = reduce({i, dir > 0 ? genus + i : -(genus + i)});
    return f;
}

// exchange handles i and i+1; the second handle comes back conjugated by its
// own commutator so the boundary word is fixed on the nose
inline FreeEndo handle_swap(int genus, int i) {
    if (i < 1 || i >= genus) throw invalid_input("handle_swap: index out of range");
    FreeEndo f = identity_endo(genus);
    Word c = commutator(reduce({genus + i + 1}), reduce({i + 1})); // [b_{i+1}, a_{i+1}]
    f.images[static_cast<size_t>(i - 1)] = reduce({i + 1});
    f.images[static_cast<size_t>(genus + i - 1)] = reduce({genus + i + 1});
    f.images[static_cast<size_t>(i)] = conjugate(inverse(c), reduce({i}));
    f.images[static_cast<size_t>(genus + i)] = conjugate(inverse(c), reduce({genus + i}));
    return f;
}

// conjugation by the boundary word
inline FreeEndo boundary_twist(int genus) {
    FreeEndo f = identity_endo(genus);
    Word nu = boundary_word(genus);
    for (auto& w : f.images) w = conjugate(nu, w);
    return f;
}

// quarter rotation of one handle: a_i -> b_i^-1, b_i -> b_i a_i b_i^-1;
// fixes [b_i, a_i] and therefore the boundary word
inline FreeEndo s_move(int genus, int i) {
    if (i < 1 || i > genus) throw invalid_input("s_move: index out of range");
    FreeEndo f = identity_endo(genus);
    f.images[static_cast<size_t>(i - 1)] = Word{{-(genus + i)}};
    f.images[static_cast<size_t>(genus + i - 1)] = Word{{genus + i, i, -(genus + i)}};
    return f;
}

// random composition of the generators above, capped so images stay short
inline FreeEndo random_mcg(std::mt19937_64& rng, int genus, int max_factors = 4,
                           int max_image_len = 12) {
    FreeEndo f = identity_endo(genus);
    if (genus == 0) return f;
    int nf = rnd_int(rng, 0, max_factors);
    for (int k = 0; k < nf; ++k) {
        FreeEndo gen;
        int kind = rnd_int(rng, 0, genus > 1 ? 3 : 2);
        if (kind == 0) gen = twist_a(genus, rnd_int(rng, 1, genus), (rng() & 1) ? 1 : -1);
        else if (kind == 1) gen = twist_b(genus, rnd_int(rng, 1, genus), (rng() & 1) ? 1 : -1);
        else if (kind == 2) gen = s_move(genus, rnd_int(rng, 1, genus));
        else gen = handle_swap(genus, rnd_int(rng, 1, genus - 1));
        FreeEndo next = endo_compose(f, gen);
        bool ok = true;
        for (const auto& w : next.images)
            if (w.length() > max_image_len) ok = false;
        if (ok) f = next;
    }
    return f;
}

// abelianized exponent vector of a word, as a lattice column
inline std::vector<Int> abelianize(const Word& w, int ngens) {
    std::vector<Int> v(static_cast<size_t>(ngens), 0);
    for (int letter : w.letters) {
        int i = std::abs(letter);
        if (i < 1 || i > ngens) throw invalid_input("abelianize: letter out of range");
        v[static_cast<size_t>(i - 1)] += (letter > 0) ? 1 : -1;
    }
    return v;
}

// random valuation that kills the classes of the given words: each variable
// row is a small random combination of the saturated kernel of the
// abelianized constraint rows
inline PhiValuation random_phi_killing(std::mt19937_64& rng, int ngens, int nvars,
                                       const std::vector<Word>& killed, int spread = 1) {
    MatZ a(static_cast<int>(killed.size()), ngens, 0);
    for (size_t r = 0; r < killed.size(); ++r) {
        auto v = abelianize(killed[r], ngens);
        for (int j = 0; j < ngens; ++j) a.at(static_cast<int>(r), j) = v[static_cast<size_t>(j)];
    }
    MatZ k = kernel_z(a);
    PhiValuation phi = PhiValuation::trivial(ngens, nvars);
    for (int v = 0; v < nvars; ++v) {
        std::vector<Int> row(static_cast<size_t>(ngens), 0);
        for (int d = 0; d < k.cols; ++d) {
            int c = rnd_int(rng, -spread, spread);
            for (int g = 0; g < ngens; ++g) row[static_cast<size_t>(g)] += k.at(g, d) * c;
        }
        for (int g = 0; g < ngens; ++g) {
            Int x = row[static_cast<size_t>(g)];
            if (!x.fits_sint_p()) throw invalid_input("random_phi_killing: exponent overflow");
            phi.val[static_cast<size_t>(g)][static_cast<size_t>(v)] = static_cast<int>(x.get_si());
        }
    }
    return phi;
}

// random valid Heegaard data: splitting genus, handle counts, a random
// boundary-fixing gluing, and a compatible valuation
inline HeegaardData random_heegaard(std::mt19937_64& rng, int nvars, int max_ghat = 3,
                                    int max_factors = 4, int max_image_len = 12) {
    int ghat = rnd_int(rng, 1, max_ghat);
    HeegaardData h;
    h.r_minus = rnd_int(rng, 0, ghat);
    h.r_plus = rnd_int(rng, 0, ghat);
    h.g_minus = ghat - h.r_minus;
    h.g_plus = ghat - h.r_plus;
    h.nvars = nvars;
    h.f = random_mcg(rng, ghat, max_factors, max_image_len);
    std::vector<Word> killed;
    for (int i = 1; i <= h.r_minus; ++i) killed.push_back(h.f.images[static_cast<size_t>(i - 1)]);
    for (int j = 1; j <= h.r_plus; ++j) killed.push_back(gen_word(ghat + j));
    h.phi_hat = random_phi_killing(rng, 2 * ghat, nvars, killed);
    validate_heegaard(h);
    return h;
}

// random pair (bottom, top) with matching middle surface and valuation; the
// top is drawn with free shape parameters and its valuation is solved from
// the interface and kill constraints over the integers, retrying on shapes
// with no solution
inline std::pair<HeegaardData, HeegaardData> random_composable_pair(
    std::mt19937_64& rng, int nvars, int max_ghat = 3, int max_factors = 4,
    int max_image_len = 12) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        HeegaardData bottom = random_heegaard(rng, nvars, max_ghat, max_factors, max_image_len);
        int gmid = bottom.g_plus;
        PhiValuation target = phi_plus_of(bottom);

        HeegaardData top;
        int ghat = rnd_int(rng, std::max(gmid, 1), std::max(gmid, max_ghat));
        top.r_minus = ghat - gmid;
        top.r_plus = rnd_int(rng, 0, ghat);
        top.g_minus = gmid;
        top.g_plus = ghat - top.r_plus;
        top.nvars = nvars;
        top.f = random_mcg(rng, ghat, max_factors, max_image_len);

        // constraint rows: abelianized killed classes must vanish, lower
        // boundary classes must hit the prescribed exponents
        std::vector<std::vector<Int>> rows;
        std::vector<std::vector<Int>> rhs; // per row, one value per variable
        auto push_row = [&](const Word& w, const Exp& want) {
            rows.push_back(abelianize(w, 2 * ghat));
            std::vector<Int> t;
            for (int v = 0; v < nvars; ++v) t.push_back(want[static_cast<size_t>(v)]);
            rhs.push_back(t);
        };
        Exp zero(static_cast<size_t>(nvars), 0);
        for (int i = 1; i <= top.r_minus; ++i)
            push_row(top.f.images[static_cast<size_t>(i - 1)], zero);
        for (int j = 1; j <= top.r_plus; ++j) push_row(gen_word(ghat + j), zero);
        for (int i = 0; i < 2 * gmid; ++i) {
            Word x = gen_word(i < gmid ? i + 1 : gmid + (i - gmid) + 1);
            Word image = endo_apply(top.f, embed_surface_word(x, gmid, ghat, top.r_minus));
            push_row(image, target.val[static_cast<size_t>(i)]);
        }
        int m = static_cast<int>(rows.size());
        MatZ c(m, 2 * ghat, 0);
        for (int r = 0; r < m; ++r)
            for (int g = 0; g < 2 * ghat; ++g) c.at(r, g) = rows[static_cast<size_t>(r)][static_cast<size_t>(g)];

        MatZ hom = kernel_z(c);
        top.phi_hat = PhiValuation::trivial(2 * ghat, nvars);
        bool ok = true;
        for (int v = 0; v < nvars && ok; ++v) {
            std::vector<Int> b;
            for (int r = 0; r < m; ++r) b.push_back(rhs[static_cast<size_t>(r)][static_cast<size_t>(v)]);
            auto x = solve_z(c, b);
            if (!x) { ok = false; break; }
            for (int d = 0; d < hom.cols; ++d) {
                int coeff = rnd_int(rng, -1, 1);
                for (int g = 0; g < 2 * ghat; ++g)
                    (*x)[static_cast<size_t>(g)] += hom.at(g, d) * coeff;
            }
            for (int g = 0; g < 2 * ghat; ++g) {
                Int e = (*x)[static_cast<size_t>(g)];
                if (!e.fits_sint_p()) { ok = false; break; }
                top.phi_hat.val[static_cast<size_t>(g)][static_cast<size_t>(v)] =
                    static_cast<int>(e.get_si());
            }
        }
        if (!ok) continue;
        validate_heegaard(top);
        if (phi_minus_of(top) != target) continue; // abelianized solve missed: should not happen
        return {bottom, top};
    }
    throw certification_error("random_composable_pair: no solvable shape found");
}

// small-entry integer transversal of a relation, retried until the columns
// span the quotient
inline Transversal random_transversal(std::mt19937_64& rng, const LagRelation& rel,
                                      int spread = 2, int max_attempts = 64) {
    int ambient = rel.src.rank() + rel.tgt.rank();
    int g = rel.src.genus + rel.tgt.genus;
    int n = rel.src.phi.nvars;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        MatR w(ambient, g, n);
        for (int i = 0; i < ambient; ++i)
            for (int j = 0; j < g; ++j)
                w.at(i, j) = LaurentPoly::constant(n, rnd_int(rng, -spread, spread));
        Transversal t{w};
        if (rank_q(hstack(q_of_r(t.w), rel.space.basis)) == ambient) return t;
    }
    throw certification_error("random_transversal: no spanning choice found");
}

} // namespace magnus
