// Combinatorial cobordisms: Heegaard-splitting data, compilation to a
// fundamental-group presentation with boundary word-maps, composition by
// amalgamation, tensor by boundary connected sum, and the text format.
#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "magnus/errors.hpp"
#include "magnus/word.hpp"

namespace magnus {

// A cobordism of genus-g boundaries presented by a Heegaard surface of genus
// ghat = g_minus + r_minus = g_plus + r_plus, a boundary-fixing gluing
// endomorphism f of the surface group, and a valuation phi_hat that kills the
// compressed handle classes.
struct HeegaardData {
    int g_minus = 0;
    int g_plus = 0;
    int r_minus = 0;
    int r_plus = 0;
    int nvars = 0;
    FreeEndo f;
    PhiValuation phi_hat;

    int ghat() const { return g_minus + r_minus; }
};

inline void validate_heegaard(const HeegaardData& h) {
    if (h.g_minus < 0 || h.g_plus < 0 || h.r_minus < 0 || h.r_plus < 0)
        throw invalid_input("heegaard: negative genus or handle count");
    if (h.g_minus + h.r_minus != h.g_plus + h.r_plus)
        throw invalid_input("heegaard: genus balance g_minus + r_minus = g_plus + r_plus violated");
    int ghat = h.ghat();
    if (h.f.genus != ghat) throw invalid_input("heegaard: gluing map rank is not 2*ghat");
    if (h.phi_hat.ngens != 2 * ghat) throw invalid_input("heegaard: valuation generator count is not 2*ghat");
    if (h.phi_hat.nvars != h.nvars) throw invalid_input("heegaard: valuation variable count mismatch");
    if (!check_boundary(h.f)) throw invalid_input("heegaard: gluing map does not fix the boundary word");
    Exp zero(static_cast<size_t>(h.nvars), 0);
    for (int i = 1; i <= h.r_minus; ++i)
        if (phi_exponent(h.phi_hat, h.f.images[static_cast<size_t>(i - 1)]) != zero)
            throw invalid_input("heegaard: valuation does not kill a compressed lower handle class");
    for (int j = 1; j <= h.r_plus; ++j)
        if (h.phi_hat.val[static_cast<size_t>(ghat + j - 1)] != zero)
            throw invalid_input("heegaard: valuation does not kill a compressed upper handle class");
}

// Finite presentation of the fundamental group of a cobordism relative to the
// basepoint, with boundary parametrizations as words in the generators.
struct CobPresentation {
    int k = 0;      // number of generators
    int nvars = 0;
    int g_minus = 0;
    int g_plus = 0;
    std::vector<Word> relators;
    PhiValuation phi;            // on the k generators
    std::vector<Word> m_minus;   // images of the 2*g_minus lower basis curves
    std::vector<Word> m_plus;    // images of the 2*g_plus upper basis curves
};

inline void validate_presentation(const CobPresentation& c) {
    if (c.k < 0 || c.g_minus < 0 || c.g_plus < 0) throw invalid_input("presentation: negative size");
    if (c.phi.ngens != c.k || c.phi.nvars != c.nvars)
        throw invalid_input("presentation: valuation shape mismatch");
    if (static_cast<int>(c.m_minus.size()) != 2 * c.g_minus ||
        static_cast<int>(c.m_plus.size()) != 2 * c.g_plus)
        throw invalid_input("presentation: boundary word count mismatch");
    auto check_word = [&](const Word& w) {
        for (int letter : w.letters)
            if (letter == 0 || std::abs(letter) > c.k)
                throw invalid_input("presentation: word letter out of range");
    };
    Exp zero(static_cast<size_t>(c.nvars), 0);
    for (const Word& r : c.relators) {
        check_word(r);
        if (phi_exponent(c.phi, r) != zero)
            throw invalid_input("presentation: relator class not killed by the valuation");
    }
    for (const Word& w : c.m_minus) check_word(w);
    for (const Word& w : c.m_plus) check_word(w);
}

// Embed a surface word of genus g into the genus-ghat surface group, placing
// the g handles at positions offset+1 .. offset+g.
inline Word embed_surface_word(const Word& w, int g, int ghat, int offset) {
    Word out;
    out.letters.reserve(w.letters.size());
    for (int letter : w.letters) {
        int i = std::abs(letter);
        int target = (i <= g) ? offset + i : ghat + offset + (i - g);
        out.letters.push_back(letter > 0 ? target : -target);
    }
    return out;
}

inline Word shift_word(const Word& w, int shift) {
    Word out;
    out.letters.reserve(w.letters.size());
    for (int letter : w.letters)
        out.letters.push_back(letter > 0 ? letter + shift : letter - shift);
    return out;
}

inline Word gen_word(int flat_index) { return Word{{flat_index}}; }

// Valuations induced on the two boundary surfaces.
inline PhiValuation phi_minus_of(const HeegaardData& h) {
    PhiValuation p;
    p.ngens = 2 * h.g_minus;
    p.nvars = h.nvars;
    int ghat = h.ghat();
    for (int i = 0; i < 2 * h.g_minus; ++i) {
        Word x = embed_surface_word(gen_word(i < h.g_minus ? i + 1 : h.g_minus + (i - h.g_minus) + 1),
                                    h.g_minus, ghat, h.r_minus);
        p.val.push_back(phi_exponent(h.phi_hat, endo_apply(h.f, x)));
    }
    return p;
}

inline PhiValuation phi_plus_of(const HeegaardData& h) {
    PhiValuation p;
    p.ngens = 2 * h.g_plus;
    p.nvars = h.nvars;
    int ghat = h.ghat();
    for (int i = 0; i < 2 * h.g_plus; ++i) {
        int flat = (i < h.g_plus) ? h.r_plus + i + 1 : ghat + h.r_plus + (i - h.g_plus) + 1;
        p.val.push_back(h.phi_hat.val[static_cast<size_t>(flat - 1)]);
    }
    return p;
}

// Compile Heegaard data into a presentation: the lower handlebody kills the
// f-images of the first r_minus a-curves, the upper one kills the first
// r_plus b-curves, and the boundary surfaces embed into the remaining handles
// (through f on the bottom).
inline CobPresentation compile(const HeegaardData& h) {
    validate_heegaard(h);
    int ghat = h.ghat();
    CobPresentation c;
    c.k = 2 * ghat;
    c.nvars = h.nvars;
    c.g_minus = h.g_minus;
    c.g_plus = h.g_plus;
    c.phi = h.phi_hat;
    for (int i = 1; i <= h.r_minus; ++i) c.relators.push_back(h.f.images[static_cast<size_t>(i - 1)]);
    for (int j = 1; j <= h.r_plus; ++j) c.relators.push_back(gen_word(ghat + j));
    for (int i = 0; i < 2 * h.g_minus; ++i) {
        Word x = gen_word(i < h.g_minus ? i + 1 : h.g_minus + (i - h.g_minus) + 1);
        c.m_minus.push_back(endo_apply(h.f, embed_surface_word(x, h.g_minus, ghat, h.r_minus)));
    }
    for (int i = 0; i < 2 * h.g_plus; ++i) {
        Word x = gen_word(i < h.g_plus ? i + 1 : h.g_plus + (i - h.g_plus) + 1);
        c.m_plus.push_back(embed_surface_word(x, h.g_plus, ghat, h.r_plus));
    }
    validate_presentation(c);
    return c;
}

// Glue top onto the upper boundary of bottom: disjoint generators, both
// relator lists, plus one gluing relator per middle-surface basis curve.
inline CobPresentation amalgamate(const CobPresentation& bottom, const CobPresentation& top) {
    if (bottom.nvars != top.nvars) throw invalid_input("amalgamate: variable count mismatch");
    if (bottom.g_plus != top.g_minus) throw invalid_input("amalgamate: middle genus mismatch");
    for (size_t i = 0; i < bottom.m_plus.size(); ++i)
        if (phi_exponent(bottom.phi, bottom.m_plus[i]) != phi_exponent(top.phi, top.m_minus[i]))
            throw invalid_input("amalgamate: middle valuations disagree");
    CobPresentation c;
    c.k = bottom.k + top.k;
    c.nvars = bottom.nvars;
    c.g_minus = bottom.g_minus;
    c.g_plus = top.g_plus;
    c.phi.ngens = c.k;
    c.phi.nvars = c.nvars;
    c.phi.val = bottom.phi.val;
    c.phi.val.insert(c.phi.val.end(), top.phi.val.begin(), top.phi.val.end());
    c.relators = bottom.relators;
    for (const Word& r : top.relators) c.relators.push_back(shift_word(r, bottom.k));
    for (size_t i = 0; i < bottom.m_plus.size(); ++i)
        c.relators.push_back(concat(bottom.m_plus[i], inverse(shift_word(top.m_minus[i], bottom.k))));
    c.m_minus = bottom.m_minus;
    for (const Word& w : top.m_plus) c.m_plus.push_back(shift_word(w, bottom.k));
    validate_presentation(c);
    return c;
}

// Boundary connected sum: disjoint union of the groups; boundary curves of
// the joined surfaces indexed by the standard handle interleaving.
inline CobPresentation tensor_cob(const CobPresentation& x, const CobPresentation& y) {
    if (x.nvars != y.nvars) throw invalid_input("tensor_cob: variable count mismatch");
    CobPresentation c;
    c.k = x.k + y.k;
    c.nvars = x.nvars;
    c.g_minus = x.g_minus + y.g_minus;
    c.g_plus = x.g_plus + y.g_plus;
    c.phi.ngens = c.k;
    c.phi.nvars = c.nvars;
    c.phi.val = x.phi.val;
    c.phi.val.insert(c.phi.val.end(), y.phi.val.begin(), y.phi.val.end());
    c.relators = x.relators;
    for (const Word& r : y.relators) c.relators.push_back(shift_word(r, x.k));
    auto joined = [&](const std::vector<Word>& left, const std::vector<Word>& right,
                      int gl, int gr) {
        std::vector<Word> out(static_cast<size_t>(2 * (gl + gr)));
        for (int i = 0; i < 2 * gl; ++i) {
            int pi = (i < gl) ? i : (gl + gr) + (i - gl);
            out[static_cast<size_t>(pi)] = left[static_cast<size_t>(i)];
        }
        for (int i = 0; i < 2 * gr; ++i) {
            int pi = (i < gr) ? gl + i : (gl + gr) + gl + (i - gr);
            out[static_cast<size_t>(pi)] = shift_word(right[static_cast<size_t>(i)], x.k);
        }
        return out;
    };
    c.m_minus = joined(x.m_minus, y.m_minus, x.g_minus, y.g_minus);
    c.m_plus = joined(x.m_plus, y.m_plus, x.g_plus, y.g_plus);
    validate_presentation(c);
    return c;
}

// Presentation matrix of the twisted first homology relative to the
// basepoint: one Fox-derivative row per relator; the module is the quotient
// of the free module on the generators by the row space.
inline MatR h1_presentation(const CobPresentation& c) {
    MatR m(static_cast<int>(c.relators.size()), c.k, c.nvars);
    for (size_t r = 0; r < c.relators.size(); ++r) {
        auto row = fox_row(c.phi, c.relators[r]);
        for (int j = 0; j < c.k; ++j) m.at(static_cast<int>(r), j) = row[static_cast<size_t>(j)];
    }
    return m;
}

// Matrices of the boundary maps on twisted homology: column j holds the Fox
// coordinates of the j-th boundary basis word.
inline std::pair<MatR, MatR> boundary_matrices(const CobPresentation& c) {
    MatR lo(c.k, 2 * c.g_minus, c.nvars), hi(c.k, 2 * c.g_plus, c.nvars);
    for (int j = 0; j < 2 * c.g_minus; ++j) {
        auto col = fox_row(c.phi, c.m_minus[static_cast<size_t>(j)]);
        for (int i = 0; i < c.k; ++i) lo.at(i, j) = col[static_cast<size_t>(i)];
    }
    for (int j = 0; j < 2 * c.g_plus; ++j) {
        auto col = fox_row(c.phi, c.m_plus[static_cast<size_t>(j)]);
        for (int i = 0; i < c.k; ++i) hi.at(i, j) = col[static_cast<size_t>(i)];
    }
    return {lo, hi};
}

// Standard pieces.
inline HeegaardData identity_cylinder(int g, const PhiValuation& phi) {
    HeegaardData h;
    h.g_minus = h.g_plus = g;
    h.nvars = phi.nvars;
    h.f = identity_endo(g);
    h.phi_hat = phi;
    validate_heegaard(h);
    return h;
}

inline HeegaardData mapping_cylinder(const FreeEndo& f, const PhiValuation& phi) {
    HeegaardData h;
    h.g_minus = h.g_plus = f.genus;
    h.nvars = phi.nvars;
    h.f = f;
    h.phi_hat = phi;
    validate_heegaard(h);
    return h;
}

// Genus-g handlebody as a cobordism from the empty surface: the a-curves
// bound disks, so phi must kill them.
inline HeegaardData cup_data(int g, const PhiValuation& phi) {
    HeegaardData h;
    h.g_plus = g;
    h.r_minus = g;
    h.nvars = phi.nvars;
    h.f = identity_endo(g);
    h.phi_hat = phi;
    validate_heegaard(h);
    return h;
}

// Genus-g handlebody as a cobordism to the empty surface: kills the b-curves.
inline HeegaardData cap_data(int g, const PhiValuation& phi) {
    HeegaardData h;
    h.g_minus = g;
    h.r_plus = g;
    h.nvars = phi.nvars;
    h.f = identity_endo(g);
    h.phi_hat = phi;
    validate_heegaard(h);
    return h;
}

namespace dsl {

struct Token {
    std::string text;
    int line = 1;
    int col = 1;
};

inline std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](char ch) {
        if (ch == '\n') { ++line; col = 1; } else ++col;
    };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') { advance(ch); ++i; continue; }
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n') { advance(text[i]); ++i; }
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (ch == '{' || ch == '}' || ch == '=' || ch == ';') {
            t.text = std::string(1, ch);
            advance(ch); ++i;
        } else if (ch == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            t.text = "->";
            advance('-'); advance('>'); i += 2;
        } else {
            while (i < text.size()) {
                char c = text[i];
                if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '{' || c == '}' ||
                    c == '=' || c == ';' || c == '#')
                    break;
                if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') break;
                t.text.push_back(c);
                advance(c); ++i;
            }
        }
        out.push_back(t);
    }
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    HeegaardData parse() {
        expect("cobordism");
        expect("{");
        std::optional<int> g_minus, g_plus, r_minus, r_plus, rank;
        std::vector<std::pair<Token, std::string>> phi_entries, f_entries;
        bool saw_phi = false, saw_f = false;
        while (!at("}")) {
            Token t = peek("a key, 'phi', 'f', or '}'");
            if (t.text == "phi" || t.text == "f") {
                bool& seen = (t.text == "phi") ? saw_phi : saw_f;
                if (seen) fail(t, "duplicate block '" + t.text + "'");
                seen = true;
                auto& entries = (t.text == "phi") ? phi_entries : f_entries;
                next();
                expect("{");
                while (!at("}")) {
                    Token lhs = next("a generator name");
                    expect("->");
                    std::string rhs;
                    while (!at(";") && !at("}")) {
                        Token piece = next("a value");
                        if (piece.text == "{" || piece.text == "=" || piece.text == "->")
                            fail(piece, "unexpected '" + piece.text + "' in a value");
                        if (!rhs.empty()) rhs += ' ';
                        rhs += piece.text;
                    }
                    if (rhs.empty()) fail(lhs, "empty value for '" + lhs.text + "'");
                    entries.emplace_back(lhs, rhs);
                    if (at(";")) next();
                }
                expect("}");
                continue;
            }
            next();
            expect("=");
            Token v = next("an integer");
            int value = parse_int(v);
            std::optional<int>* slot = nullptr;
            if (t.text == "g_minus") slot = &g_minus;
            else if (t.text == "g_plus") slot = &g_plus;
            else if (t.text == "r_minus") slot = &r_minus;
            else if (t.text == "r_plus") slot = &r_plus;
            else if (t.text == "G_rank") slot = &rank;
            else fail(t, "unknown key '" + t.text + "'");
            if (slot->has_value()) fail(t, "duplicate key '" + t.text + "'");
            *slot = value;
        }
        expect("}");
        if (pos_ < toks_.size()) fail(toks_[pos_], "trailing input after the cobordism block");
        for (auto [slot, name] : {std::pair<std::optional<int>*, const char*>{&g_minus, "g_minus"},
                                  {&g_plus, "g_plus"}, {&r_minus, "r_minus"},
                                  {&r_plus, "r_plus"}, {&rank, "G_rank"}})
            if (!slot->has_value()) throw invalid_input("dsl: missing mandatory key '" + std::string(name) + "'");

        HeegaardData h;
        h.g_minus = *g_minus;
        h.g_plus = *g_plus;
        h.r_minus = *r_minus;
        h.r_plus = *r_plus;
        h.nvars = *rank;
        if (h.g_minus + h.r_minus != h.g_plus + h.r_plus)
            throw invalid_input("heegaard: genus balance g_minus + r_minus = g_plus + r_plus violated");
        int ghat = h.ghat();
        h.f = identity_endo(ghat);
        h.phi_hat = PhiValuation::trivial(2 * ghat, h.nvars);
        for (const auto& [lhs, rhs] : f_entries)
            h.f.images[static_cast<size_t>(gen_index(lhs, ghat) - 1)] = parse_image(lhs, rhs, ghat);
        for (const auto& [lhs, rhs] : phi_entries)
            h.phi_hat.val[static_cast<size_t>(gen_index(lhs, ghat) - 1)] = parse_monomial(lhs, rhs, h.nvars);
        validate_heegaard(h);
        return h;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        std::ostringstream os;
        os << "dsl:" << t.line << ":" << t.col << ": " << msg;
        throw invalid_input(os.str());
    }
    [[noreturn]] void fail_eof(const std::string& wanted) const {
        Token last = toks_.empty() ? Token{} : toks_.back();
        std::ostringstream os;
        os << "dsl:" << last.line << ":" << last.col << ": unexpected end of input, expected " << wanted;
        throw invalid_input(os.str());
    }
    Token peek(const std::string& wanted) const {
        if (pos_ >= toks_.size()) fail_eof(wanted);
        return toks_[pos_];
    }
    Token next(const std::string& wanted = "a token") {
        Token t = peek(wanted);
        ++pos_;
        return t;
    }
    bool at(const std::string& s) const { return pos_ < toks_.size() && toks_[pos_].text == s; }
    void expect(const std::string& s) {
        Token t = peek("'" + s + "'");
        if (t.text != s) fail(t, "expected '" + s + "', found '" + t.text + "'");
        ++pos_;
    }
    int parse_int(const Token& t) const {
        try {
            size_t used = 0;
            int v = std::stoi(t.text, &used);
            if (used != t.text.size()) throw std::invalid_argument(t.text);
            return v;
        } catch (const std::exception&) {
            fail(t, "expected an integer, found '" + t.text + "'");
        }
    }
    int gen_index(const Token& t, int ghat) const {
        const std::string& s = t.text;
        if (s.size() < 2 || (s[0] != 'a' && s[0] != 'b'))
            fail(t, "expected a generator a1..a" + std::to_string(ghat) + " or b1..b" +
                        std::to_string(ghat) + ", found '" + s + "'");
        int idx = 0;
        for (size_t i = 1; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') fail(t, "malformed generator name '" + s + "'");
            idx = idx * 10 + (s[i] - '0');
        }
        if (idx < 1 || idx > ghat) fail(t, "generator index out of range in '" + s + "'");
        return (s[0] == 'a') ? idx : ghat + idx;
    }
    Word parse_image(const Token& lhs, const std::string& rhs, int ghat) const {
        try {
            return parse_word(rhs, ghat);
        } catch (const std::exception& e) {
            fail(lhs, "bad image for '" + lhs.text + "': " + e.what());
        }
    }
    Exp parse_monomial(const Token& lhs, const std::string& rhs, int nvars) const {
        LaurentPoly p(nvars);
        try {
            p = parse_laurent(rhs, nvars);
        } catch (const std::exception& e) {
            fail(lhs, "bad valuation for '" + lhs.text + "': " + e.what());
        }
        if (!p.is_monomial_unit() || p.lead_coeff() != 1)
            fail(lhs, "valuation of '" + lhs.text + "' must be a single monomial with coefficient 1");
        return p.lead_exp();
    }
};

} // namespace dsl

inline HeegaardData parse_cobordism(const std::string& text) { return dsl::Parser(text).parse(); }

} // namespace magnus
