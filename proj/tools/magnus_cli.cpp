// Command-line frontend.
//
// Verbs:
//   form-matrix <file>                 boundary surface forms of a cobordism
//   mag eval <file>                    kernel relation of a cobordism
//   mag rep <file>                     Magnus representation of a cylinder
//   mag compose <bottom> <top>         glue two cobordisms bottom-to-top
//   mag tensor <left> <right>          boundary connected sum
//   alex eval <file>                   graded evaluation blocks
//   alex factorize <file>              order-times-operator factorization
//   alex pluecker <file>               integral relation wedge (G trivial)
//   verify <suite> [--seed N]          seeded property suites
//
// Global flags: --json for machine-readable output with a schema marker,
// --validate-only to stop after input validation.  Exit codes: 0 success,
// 1 malformed or inconsistent input, 2 failed internal certification.
//
// The composite verbs evaluate both sides of the corresponding structural
// identity (composition law, tensor law, factorization) and refuse to print
// an uncertified result, so a nonzero exit from them is meaningful evidence,
// not just a crash.

#include <bit>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "magnus/alexander.hpp"
#include "magnus/verify.hpp"

using json = nlohmann::ordered_json;
using namespace magnus;

namespace {

// ---------------------------------------------------------------------------
// input loading
// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot read file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

HeegaardData load_cobordism(const std::string& path) {
    try {
        return parse_cobordism(read_file(path));
    } catch (const invalid_input& e) {
        throw invalid_input(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// serialization helpers
// ---------------------------------------------------------------------------

std::string to_string(const Int& v) { return v.get_str(); }

std::string monomial_string(const Exp& e) {
    return to_string(LaurentPoly::monomial(static_cast<int>(e.size()), e, 1));
}

json phi_json(const PhiValuation& phi) {
    json arr = json::array();
    int g = phi.ngens / 2;
    for (int i = 0; i < phi.ngens; ++i) {
        std::string name = (i < g) ? "a" + std::to_string(i + 1)
                                   : "b" + std::to_string(i - g + 1);
        arr.push_back(json{{"class", name},
                           {"value", monomial_string(phi.val[static_cast<size_t>(i)])}});
    }
    return arr;
}

json object_json(int genus, const PhiValuation& phi) {
    return json{{"genus", genus}, {"coefficient_rank", phi.nvars}, {"phi", phi_json(phi)}};
}

template <class T>
json matrix_json(const Mat<T>& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json relation_json(const LagRelation& r) {
    return json{{"source", object_json(r.src.genus, r.src.phi)},
                {"target", object_json(r.tgt.genus, r.tgt.phi)},
                {"basis", matrix_json(r.space.basis)}};
}

json mask_json(Mask m) {
    json arr = json::array();
    for (Mask t = m; t != 0; t &= t - 1) arr.push_back(std::countr_zero(t) + 1);
    return arr;
}

template <class T>
json blocks_json(const GradedMap<T>& f) {
    json arr = json::array();
    for (const auto& [key, c] : f.coeff)
        arr.push_back(json{{"in", mask_json(key.first)},
                           {"out", mask_json(key.second)},
                           {"value", to_string(c)}});
    return arr;
}

// aligned text matrix
template <class T>
void print_matrix(std::ostream& os, const Mat<T>& m, const std::string& indent) {
    std::vector<std::string> cells;
    std::vector<size_t> width(static_cast<size_t>(m.cols), 0);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            cells.push_back(to_string(m.at(i, j)));
            width[static_cast<size_t>(j)] =
                std::max(width[static_cast<size_t>(j)], cells.back().size());
        }
    for (int i = 0; i < m.rows; ++i) {
        os << indent << "[ ";
        for (int j = 0; j < m.cols; ++j) {
            const std::string& s = cells[static_cast<size_t>(i * m.cols + j)];
            os << s << std::string(width[static_cast<size_t>(j)] - s.size() + 2, ' ');
        }
        os << "]\n";
    }
}

std::string slots_text(Mask m) {
    if (m == 0) return "()";
    std::string s = "(";
    for (Mask t = m; t != 0; t &= t - 1) {
        s += "e" + std::to_string(std::countr_zero(t) + 1);
        if ((t & (t - 1)) != 0) s += " ";
    }
    return s + ")";
}

template <class T>
void print_blocks(std::ostream& os, const GradedMap<T>& f) {
    for (const auto& [key, c] : f.coeff)
        os << "  " << slots_text(key.first) << " -> " << slots_text(key.second) << ": "
           << to_string(c) << "\n";
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// options shared by the verbs
// ---------------------------------------------------------------------------

struct Options {
    bool json_out = false;
    bool validate_only = false;
    std::vector<std::string> files;
    std::string transversal_text; // for `alex factorize`
    std::string suite;            // for `verify`
    std::uint64_t seed = 7;
};

// returns true when the verb should stop after validation
bool handle_validate_only(const Options& opt) {
    if (!opt.validate_only) return false;
    if (opt.json_out) {
        json j{{"schema", 1}, {"valid", true}, {"files", opt.files}};
        emit(j);
    } else {
        for (const auto& f : opt.files) std::cout << f << ": valid\n";
    }
    return true;
}

// ---------------------------------------------------------------------------
// verbs
// ---------------------------------------------------------------------------

int run_form_matrix(const Options& opt) {
    HeegaardData h = load_cobordism(opt.files[0]);
    if (handle_validate_only(opt)) return 0;
    PointedHermModule lower = build_module(h.g_minus, phi_minus_of(h));
    PointedHermModule upper = build_module(h.g_plus, phi_plus_of(h));
    if (opt.json_out) {
        json j{{"schema", 1},
               {"lower", object_json(lower.genus, lower.phi)},
               {"upper", object_json(upper.genus, upper.phi)}};
        j["lower"]["matrix"] = matrix_json(lower.s);
        j["upper"]["matrix"] = matrix_json(upper.s);
        emit(j);
    } else {
        std::cout << "lower boundary: genus " << lower.genus << "\n";
        print_matrix(std::cout, lower.s, "  ");
        std::cout << "upper boundary: genus " << upper.genus << "\n";
        print_matrix(std::cout, upper.s, "  ");
    }
    return 0;
}

void print_relation_text(const LagRelation& r) {
    std::cout << "source: genus " << r.src.genus << ", target: genus " << r.tgt.genus
              << ", coefficient rank " << r.src.phi.nvars << "\n";
    std::cout << "relation basis (" << r.space.basis.rows << " x " << r.space.basis.cols
              << ", source coordinates first):\n";
    print_matrix(std::cout, r.space.basis, "  ");
}

int run_mag_eval(const Options& opt) {
    HeegaardData h = load_cobordism(opt.files[0]);
    if (handle_validate_only(opt)) return 0;
    LagRelation r = mag_kernel(compile(h));
    if (opt.json_out) {
        json j{{"schema", 1}};
        j.update(relation_json(r));
        emit(j);
    } else {
        print_relation_text(r);
    }
    return 0;
}

int run_mag_rep(const Options& opt) {
    HeegaardData h = load_cobordism(opt.files[0]);
    if (handle_validate_only(opt)) return 0;
    CobPresentation c = compile(h);
    MatQ r = magnus_rep(c);
    if (opt.json_out) {
        json j{{"schema", 1},
               {"genus", c.g_plus},
               {"coefficient_rank", c.nvars},
               {"matrix", matrix_json(r)}};
        emit(j);
    } else {
        std::cout << "representation on the upper boundary basis (genus " << c.g_plus << "):\n";
        print_matrix(std::cout, r, "  ");
    }
    return 0;
}

int run_mag_compose(const Options& opt) {
    HeegaardData bottom = load_cobordism(opt.files[0]);
    HeegaardData top = load_cobordism(opt.files[1]);
    if (handle_validate_only(opt)) return 0;
    CobPresentation cb = compile(bottom), ct = compile(top);
    CobPresentation glued = amalgamate(cb, ct);
    LagRelation direct = mag_kernel(glued);
    LagRelation composed = compose(mag_kernel(ct), mag_kernel(cb));
    if (direct != composed)
        throw certification_error(
            "composition law violated: glued evaluation differs from relation composition");
    if (opt.json_out) {
        json j{{"schema", 1}, {"certified", "glued evaluation equals relation composition"}};
        j.update(relation_json(direct));
        emit(j);
    } else {
        std::cout << "certified: glued evaluation equals relation composition\n";
        print_relation_text(direct);
    }
    return 0;
}

int run_mag_tensor(const Options& opt) {
    HeegaardData left = load_cobordism(opt.files[0]);
    HeegaardData right = load_cobordism(opt.files[1]);
    if (handle_validate_only(opt)) return 0;
    CobPresentation cl = compile(left), cr = compile(right);
    LagRelation direct = mag_kernel(tensor_cob(cl, cr));
    LagRelation split = tensor_relation(mag_kernel(cl), mag_kernel(cr));
    if (direct != split)
        throw certification_error(
            "tensor law violated: joined evaluation differs from relation tensor");
    if (opt.json_out) {
        json j{{"schema", 1}, {"certified", "joined evaluation equals relation tensor"}};
        j.update(relation_json(direct));
        emit(j);
    } else {
        std::cout << "certified: joined evaluation equals relation tensor\n";
        print_relation_text(direct);
    }
    return 0;
}

// shared gauge for a family of ring coefficients: the unit part of the first
// nonzero entry, divided out of every entry
std::pair<LaurentPoly, GradedMap<LaurentPoly>> gauge_split(const GradedMap<LaurentPoly>& f) {
    LaurentPoly unit = LaurentPoly::constant(f.nvars, 1);
    for (const auto& [key, c] : f.coeff) {
        unit = unit_normalize(c).unit;
        break;
    }
    GradedMap<LaurentPoly> out{f.src_rank, f.tgt_rank, f.shift, f.nvars, {}};
    for (const auto& [key, c] : f.coeff)
        out.set(key.first, key.second, divide_exact(c, unit));
    return {unit, out};
}

int run_alex_eval(const Options& opt) {
    HeegaardData h = load_cobordism(opt.files[0]);
    if (handle_validate_only(opt)) return 0;
    CobPresentation c = compile(h);
    auto [gauge, blocks] = gauge_split(alex_morphism(c));
    if (opt.json_out) {
        json j{{"schema", 1},
               {"source_rank", 2 * c.g_minus},
               {"target_rank", 2 * c.g_plus},
               {"vanishes", blocks.is_zero()},
               {"gauge", to_string(gauge)},
               {"blocks", blocks_json(blocks)}};
        emit(j);
    } else {
        if (blocks.is_zero()) {
            std::cout << "evaluation vanishes identically\n";
        } else {
            std::cout << "graded blocks, normalized by the unit " << to_string(gauge)
                      << " (source slots e1..e" << 2 * c.g_minus << ", target slots e1..e"
                      << 2 * c.g_plus << "):\n";
            print_blocks(std::cout, blocks);
        }
    }
    return 0;
}

Transversal parse_transversal(const std::string& text, int ambient, int g, int nvars) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw invalid_input(std::string("transversal: not valid JSON: ") + e.what());
    }
    if (!j.is_array()) throw invalid_input("transversal: expected an array of rows");
    if (static_cast<int>(j.size()) != ambient)
        throw invalid_input("transversal: expected " + std::to_string(ambient) + " rows, got " +
                            std::to_string(j.size()));
    MatR w(ambient, g, nvars);
    for (int i = 0; i < ambient; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != g)
            throw invalid_input("transversal: row " + std::to_string(i + 1) + " must hold " +
                                std::to_string(g) + " entries");
        for (int k = 0; k < g; ++k) {
            const json& cell = row[static_cast<size_t>(k)];
            if (cell.is_number_integer())
                w.at(i, k) = LaurentPoly::constant(nvars, Int(cell.get<long>()));
            else if (cell.is_string())
                w.at(i, k) = parse_laurent(cell.get<std::string>(), nvars);
            else
                throw invalid_input("transversal: entries must be integers or ring strings");
        }
    }
    return Transversal{w};
}

int run_alex_factorize(const Options& opt) {
    HeegaardData h = load_cobordism(opt.files[0]);
    if (handle_validate_only(opt)) return 0;
    CobPresentation c = compile(h);
    LagRelation rel = mag_kernel(c);
    int ambient = 2 * (c.g_minus + c.g_plus), g = c.g_minus + c.g_plus;
    Transversal w = opt.transversal_text.empty()
                        ? default_transversal(rel)
                        : parse_transversal(opt.transversal_text, ambient, g, c.nvars);
    check_transversal(rel, w);
    FactorizationReport rep = factorization_check(c, rel, w);
    LaurentPoly ord = ord_quotient(c, w);
    if (!rep.ok)
        throw certification_error("factorization failed: " + rep.mismatch);
    if (opt.json_out) {
        json j{{"schema", 1},
               {"ok", true},
               {"degenerate", rep.degenerate},
               {"unit", to_string(rep.unit)},
               {"order", to_string(ord)},
               {"transversal", matrix_json(w.w)}};
        emit(j);
    } else {
        if (rep.degenerate)
            std::cout << "degenerate: evaluation and order both vanish\n";
        else
            std::cout << "unit matched: " << to_string(rep.unit) << "\n";
        std::cout << "order: " << to_string(ord) << "\n";
    }
    return 0;
}

int run_alex_pluecker(const Options& opt) {
    HeegaardData h = load_cobordism(opt.files[0]);
    if (handle_validate_only(opt)) return 0;
    CobPresentation c = compile(h);
    LagRelation rel = mag_kernel(c);
    MultiVector<Int> v = pluecker_vector(rel);
    GradedMap<Int> op = pluecker(rel);
    if (opt.json_out) {
        json terms = json::array();
        for (const auto& [m, coef] : v.terms)
            terms.push_back(json{{"slots", mask_json(m)}, {"value", to_string(coef)}});
        json j{{"schema", 1},
               {"ambient", v.ambient},
               {"degree", v.degree},
               {"wedge", terms},
               {"blocks", blocks_json(op)}};
        emit(j);
    } else {
        std::cout << "relation wedge (ambient " << v.ambient << ", degree " << v.degree
                  << ", source coordinates first):\n";
        for (const auto& [m, coef] : v.terms)
            std::cout << "  " << slots_text(m) << ": " << to_string(coef) << "\n";
        std::cout << "operator blocks:\n";
        print_blocks(std::cout, op);
    }
    return 0;
}

int run_verify(const Options& opt) {
    std::vector<CheckResult> results = run_suite(opt.suite, opt.seed);
    bool all_ok = true;
    for (const auto& r : results) all_ok = all_ok && r.ok;
    if (opt.json_out) {
        json checks = json::array();
        for (const auto& r : results)
            checks.push_back(json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
        json j{{"schema", 1},
               {"suite", opt.suite},
               {"seed", opt.seed},
               {"ok", all_ok},
               {"checks", checks}};
        emit(j);
    } else {
        for (const auto& r : results) {
            if (r.ok)
                std::cout << "pass  " << r.name << "\n";
            else
                std::cout << "FAIL  " << r.name << " (" << r.detail << ")\n";
        }
        std::cout << "suite " << opt.suite << ": "
                  << (all_ok ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    return all_ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"exact evaluation of surface forms, kernel relations, and "
                 "factorization data for combinatorial cobordisms"};
    app.require_subcommand(1);
    app.add_flag("--json", opt.json_out, "emit machine-readable JSON (schema 1)");
    app.add_flag("--validate-only", opt.validate_only,
                 "parse and validate the inputs, then stop");

    int (*handler)(const Options&) = nullptr;
    auto file_verb = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                         int nfiles, int (*fn)(const Options&)) {
        CLI::App* sub = parent->add_subcommand(name, desc);
        sub->fallthrough();
        if (nfiles == 1)
            sub->add_option("file", opt.files, "cobordism file")->required()->expected(1);
        else
            sub->add_option("files", opt.files, "cobordism files")->required()->expected(nfiles);
        sub->callback([&handler, fn] { handler = fn; });
        return sub;
    };

    file_verb(&app, "form-matrix", "print the surface forms of both boundaries", 1,
              run_form_matrix);

    CLI::App* mag = app.add_subcommand("mag", "evaluate the kernel-relation functor");
    mag->require_subcommand(1);
    mag->fallthrough();
    file_verb(mag, "eval", "kernel relation of one cobordism", 1, run_mag_eval);
    file_verb(mag, "rep", "matrix representation of a cylinder", 1, run_mag_rep);
    file_verb(mag, "compose", "glue bottom then top and certify the composition law", 2,
              run_mag_compose);
    file_verb(mag, "tensor", "boundary connected sum, certified against the tensor law", 2,
              run_mag_tensor);

    CLI::App* alex = app.add_subcommand("alex", "evaluate the determinant functor");
    alex->require_subcommand(1);
    alex->fallthrough();
    file_verb(alex, "eval", "graded evaluation blocks", 1, run_alex_eval);
    CLI::App* fact = file_verb(alex, "factorize",
                               "factor the evaluation as order times projected operator", 1,
                               run_alex_factorize);
    fact->add_option("--transversal", opt.transversal_text,
                     "JSON rows of a transversal to use instead of the default");
    file_verb(alex, "pluecker", "integral relation wedge (trivial coefficient group)", 1,
              run_alex_pluecker);

    CLI::App* verify = app.add_subcommand("verify", "run a seeded property suite");
    verify->fallthrough();
    verify->add_option("suite", opt.suite,
                       "one of: rings, forms, functoriality, monoidality, factorization")
        ->required();
    verify->add_option("--seed", opt.seed, "seed for the pseudo-random cases");
    verify->callback([&handler] { handler = run_verify; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    if (handler == nullptr) {
        std::cerr << app.help();
        return 1;
    }

    try {
        return handler(opt);
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const certification_error& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
