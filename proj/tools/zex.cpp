#include "zex/extensions.hpp"
#include "zex/invariants.hpp"
#include "zex/report.hpp"
#include "zex/symbolic_action.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace zex;

namespace {

constexpr int kOk = 0, kMathFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    unsigned precision = 128;
    std::string tol = "1e-20";
    std::string format = "md";
    std::optional<std::uint64_t> seed;

    Rational tolerance() const {
        Rational t;
        if (!try_parse_rational(tol, t) || sgn(t) <= 0) throw UsageError("--tol must be a positive rational, got '" + tol + "'");
        return t;
    }
    std::uint64_t seed_value() const {
        if (seed) return *seed;
        if (const char* env = std::getenv("ZEX_SEED")) {
            try {
                return std::stoull(env);
            } catch (const std::exception&) {
                throw UsageError(std::string("ZEX_SEED is not an integer: '") + env + "'");
            }
        }
        return 42;
    }
    bool csv() const { return format == "csv"; }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

// A file path or a family id such as "F1 7" or "MU2 7 1/2".
Algebra load_algebra(const std::string& ref) {
    if (std::filesystem::exists(ref)) return parse_zalg(read_file(ref));
    return make(FamilyId::parse(ref));
}

FamilyKind filiform_family(const std::string& s) {
    auto k = parse_kind(s);
    if (!k || *k == FamilyKind::F0 || *k == FamilyKind::MU) throw UsageError("--family must be F1, F2 or F3");
    return *k;
}

std::string quoted(const std::string& f) {
    if (f.find_first_of(",\"\n") == std::string::npos) return f;
    std::string o = "\"";
    for (char ch : f) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return o + "\"";
}

std::string cell(const Globals& g, const std::vector<std::string>& cols) {
    std::string s;
    for (std::size_t i = 0; i < cols.size(); ++i)
        s += (i ? (g.csv() ? "," : " | ") : (g.csv() ? "" : "| ")) + (g.csv() ? quoted(cols[i]) : cols[i]);
    return s + (g.csv() ? "\n" : " |\n");
}

std::string header(const Globals& g, const std::vector<std::string>& cols) {
    std::string s = cell(g, cols);
    if (!g.csv()) {
        s += "|";
        for (std::size_t i = 0; i < cols.size(); ++i) s += "---|";
        s += "\n";
    }
    return s;
}

int cmd_check(const std::string& file) {
    Algebra a = parse_zalg(read_file(file));
    auto v = check_zinbiel(a);
    if (v.empty()) {
        std::cout << "OK: Zinbiel identity holds (dim " << a.dim() << ")\n";
        return kOk;
    }
    for (const auto& x : v)
        std::cout << "violation at (" << x.i + 1 << "," << x.j + 1 << "," << x.k + 1 << "): " << format_vector(x.defect) << "\n";
    std::cout << "FAIL: " << v.size() << " violated triples\n";
    return kMathFail;
}

int cmd_cohomology(const std::string& family, std::size_t n, const std::string& alpha, const std::string& file) {
    Algebra a;
    std::optional<FamilyKind> fk;
    if (!file.empty()) {
        a = parse_zalg(read_file(file));
    } else {
        if (family.empty() || n == 0) throw UsageError("give --file or --family with --n");
        a = make(FamilyId::parse(family + " " + std::to_string(n) + (alpha.empty() ? "" : " " + alpha)));
        auto k = parse_kind(family);
        if (k && *k != FamilyKind::F0 && *k != FamilyKind::MU) fk = k;
    }
    auto coh = cohomology(a);
    std::size_t m = a.dim();
    auto emit = [&](const std::string& name, const std::vector<Vec>& basis) {
        std::vector<NamedForm> fs;
        for (std::size_t i = 0; i < basis.size(); ++i)
            fs.push_back({name + std::to_string(i + 1), BilinearForm::from_flat(basis[i], m)});
        std::cout << "# " << name << " basis\n" << print_forms(fs);
    };
    emit("z", coh.z2.basis());
    emit("b", coh.b2.basis());
    std::vector<Vec> reps;
    for (const auto& r : coh.h2_reps) reps.push_back(r.flat());
    emit("h", reps);
    std::cout << "dim Z²=" << coh.z2.dim() << ", dim B²=" << coh.b2.dim() << ", dim H²=" << coh.h2_dim();
    if (fk) {
        auto c = check_family_cohomology(*fk, n);
        bool ok = c.dims_ok() && c.spans_ok();
        std::cout << ", " << (ok ? "PASS" : "FAIL") << "\n";
        return ok ? kOk : kMathFail;
    }
    std::cout << "\n";
    return kOk;
}

int cmd_extend(const std::string& base, const std::string& cocycles, const std::string& zext, const std::string& out,
               const std::string& compare) {
    ExtensionSpec spec;
    if (!zext.empty()) {
        spec = parse_zext(read_file(zext), read_file);
    } else {
        if (base.empty() || cocycles.empty()) throw UsageError("give --zext, or --base with --cocycles");
        spec.base = load_algebra(base);
        for (auto& f : parse_forms(read_file(cocycles), spec.base.dim())) {
            spec.names.push_back(f.name);
            spec.thetas.push_back(std::move(f.form));
        }
    }
    if (spec.thetas.empty()) throw UsageError("no cocycle lines found");
    Algebra e;
    try {
        e = extend(spec);
    } catch (const NotCocycle& ex) {
        std::cerr << "FAIL: " << ex.what() << "\n";
        return kMathFail;
    }
    auto ns = is_nonsplit(spec);
    write_output(out, print_zalg(e));
    std::ostream& info = (out.empty() || out == "-") ? std::cerr : std::cout;
    info << "verdict: " << (ns.nonsplit() ? "nonsplit" : "split (" + ns.diagnostics() + ")") << "\n";
    if (!compare.empty()) {
        Algebra t = load_algebra(compare);
        auto w = search_isomorphism(e, t, spec.base.dim() - 1);
        if (!w) {
            info << "compare: no witness found\n";
            return kMathFail;
        }
        if (w->kind == IsoWitness::Kind::Permutation) {
            info << "compare: equal up to permutation";
            for (std::size_t i = 0; i < w->perm.size(); ++i)
                if (w->perm[i] != i) info << " " << i + 1 << "->" << w->perm[i] + 1;
            info << "\n";
        } else {
            info << "compare: isomorphic via a lifted change of basis\n";
        }
    }
    return kOk;
}

int cmd_invariants(const Globals& g, const std::vector<std::string>& inputs) {
    if (inputs.empty()) throw UsageError("give at least one algebra (file or family id)");
    std::vector<std::pair<std::string, Algebra>> algs;
    for (const auto& r : inputs) algs.push_back({r, load_algebra(r)});
    if (algs.size() == 1) {
        std::cout << format_fingerprint(fingerprint(algs[0].second));
        return kOk;
    }
    auto rep = distinguish_report(algs);
    std::cout << (g.csv() ? rep.csv() : rep.markdown());
    return kOk;
}

int cmd_aut(const Globals& g, const std::string& family, std::size_t n, std::size_t samples, bool w_zero) {
    FamilyKind f = filiform_family(family);
    std::mt19937_64 rng(g.seed_value());
    auto r = verify_aut_template(f, n, samples, rng, w_zero);
    std::cout << header(g, {"sample", "extended", "diagonal", "entry(n,n)", "pattern", "derived"});
    auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        const auto& s = r.samples[i];
        std::cout << cell(g, {std::to_string(i + 1), yn(s.extended), yn(s.diagonal_ok), yn(s.nn_ok), yn(s.pattern_ok), yn(s.derived_ok)});
    }
    std::cout << kind_name(f) << " n=" << n << ": " << r.passed() << "/" << r.samples.size() << " samples, "
              << (r.pass() ? "PASS" : "FAIL") << "\n";
    return r.pass() ? kOk : kMathFail;
}

int cmd_action(const Globals& g, const std::string& family, std::size_t n) {
    FamilyKind f = filiform_family(family);
    auto r = verify_action_formula(f, n);
    std::cout << header(g, {"class", "computed", "expected", "match"});
    for (std::size_t i = 0; i < r.computed.size(); ++i)
        std::cout << cell(g, {"N" + std::to_string(i + 1), r.computed[i].print(), r.expected[i].print(),
                              r.computed[i] == r.expected[i] ? "yes" : "no"});
    std::cout << "image in Z²: " << (r.image_in_z2 ? "yes" : "no") << "\n";
    std::cout << kind_name(f) << " n=" << n << ": " << (r.pass() ? "PASS" : "FAIL") << "\n";
    return r.pass() ? kOk : kMathFail;
}

int cmd_orbit(const Globals& g, const std::string& family, std::size_t n, const std::string& case_id,
              const std::string& file, std::size_t samples, bool export_cases) {
    std::vector<ReductionCase> cases;
    if (!file.empty()) {
        cases = parse_zcase(read_file(file));
    } else {
        if (family.empty() || n == 0) throw UsageError("give --file or --family with --n");
        cases = reduction_cases(filiform_family(family), n);
    }
    if (!case_id.empty()) {
        std::erase_if(cases, [&](const ReductionCase& c) { return c.id != case_id; });
        if (cases.empty()) throw UsageError("no case with id '" + case_id + "'");
    }
    if (export_cases) {
        std::cout << print_zcase(cases);
        return kOk;
    }
    Rational tol = g.tolerance();
    std::uint64_t seed = g.seed_value();
    std::cout << header(g, {"case", "n", "orbit", "verdict", "detail"});
    bool all = true;
    for (const auto& c : cases) {
        auto r = check_reduction_case(c, samples, seed, g.precision, tol);
        all = all && r.pass();
        std::string d = r.error.empty() ? std::string("double ") + (r.pass_double ? "ok" : "fails") + ", " +
                                              std::to_string(g.precision) + "-bit " + (r.pass_big ? "ok" : "fails")
                                        : r.error;
        if (!r.phi_in_aut) d += "; not an automorphism";
        std::cout << cell(g, {c.id, std::to_string(c.n), c.orbit, r.pass() ? "PASS" : "FAIL", d});
    }
    return all ? kOk : kMathFail;
}

int cmd_reproduce(const Globals& g, std::size_t n_min, std::size_t n_max, const std::string& out, std::size_t cap) {
    if (n_min < 5 || n_min > n_max || n_max > cap)
        throw UsageError("need 5 <= n-min <= n-max <= " + std::to_string(cap));
    ReproduceOptions o;
    o.n_min = n_min;
    o.n_max = n_max;
    o.seed = g.seed_value();
    o.precision = g.precision;
    o.tol = g.tolerance();
    auto rep = reproduce(o);
    write_output(out, g.csv() ? rep.csv() : rep.markdown());
    std::cerr << "PASS " << rep.count(Verdict::Pass) << ", FAIL " << rep.count(Verdict::Fail) << ", expected collisions "
              << rep.count(Verdict::Collision) << "\n";
    return rep.ok() ? kOk : kMathFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zinbiel algebra toolkit: identities, cohomology, central extensions and invariants"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--precision", g.precision, "working precision in bits for complex evaluation")->check(CLI::Range(53u, 4096u));
    app.add_option("--tol", g.tol, "numeric tolerance as a rational or decimal, e.g. 1e-20");
    app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"md", "csv"}));
    app.add_option("--seed", g.seed, "random seed (falls back to ZEX_SEED, then 42)");

    std::string file, family, alpha, base, cocycles, zext, out, compare, case_id;
    std::size_t n = 0, samples = 20, case_samples = 3, n_min = 5, n_max = 8, cap = 12;
    bool w_zero = false, export_cases = false;
    std::vector<std::string> inputs;

    auto* check = app.add_subcommand("check", "check the Zinbiel identity of a zalg file");
    check->add_option("file", file, "zalg file")->required();

    auto* coh = app.add_subcommand("cohomology", "Z², B² and H² of an algebra");
    coh->add_option("--family", family, "F0..F3 or MU1..MU16");
    coh->add_option("--n", n, "dimension");
    coh->add_option("--alpha", alpha, "parameter for MU2, MU10, MU11");
    coh->add_option("--file", file, "zalg file");

    auto* ext = app.add_subcommand("extend", "central extension by cocycles");
    ext->add_option("--base", base, "base algebra: zalg file or family id such as \"F1 6\"");
    ext->add_option("--cocycles", cocycles, "file with form lines");
    ext->add_option("--zext", zext, "zext file (base reference plus form lines)");
    ext->add_option("--out", out, "output zalg file (default stdout)");
    ext->add_option("--compare", compare, "algebra to compare the result with");

    auto* inv = app.add_subcommand("invariants", "fingerprints and pairwise distinctness");
    inv->add_option("algebras", inputs, "zalg files or family ids")->required();

    auto* aut = app.add_subcommand("aut-verify", "check the automorphism template by generator extension");
    aut->add_option("--family", family, "F1, F2 or F3")->required();
    aut->add_option("--n", n, "dimension")->required()->check(CLI::Range(5, 10));
    aut->add_option("--samples", samples, "number of random samples");
    aut->add_flag("--w-zero", w_zero, "force a_{n,1} = 0");

    auto* act = app.add_subcommand("action-verify", "check the action formula as a polynomial identity");
    act->add_option("--family", family, "F1, F2 or F3")->required();
    act->add_option("--n", n, "dimension")->required()->check(CLI::Range(5, 10));

    auto* orb = app.add_subcommand("orbit-verify", "check reduction cases numerically");
    orb->add_option("--family", family, "F1, F2 or F3");
    orb->add_option("--n", n, "dimension");
    orb->add_option("--file", file, "zcase file");
    orb->add_option("--case", case_id, "only this case id");
    orb->add_option("--samples", case_samples, "samples per case");
    orb->add_flag("--export", export_cases, "print the cases as zcase and exit");

    auto* rep = app.add_subcommand("reproduce", "full reproduction report");
    rep->add_option("--n-min", n_min, "smallest base dimension");
    rep->add_option("--n-max", n_max, "largest base dimension");
    rep->add_option("--n-cap", cap, "upper bound accepted for --n-max");
    rep->add_option("--out", out, "output file (default stdout)");

    for (auto* s : app.get_subcommands({})) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (check->parsed()) return cmd_check(file);
        if (coh->parsed()) return cmd_cohomology(family, n, alpha, file);
        if (ext->parsed()) return cmd_extend(base, cocycles, zext, out, compare);
        if (inv->parsed()) return cmd_invariants(g, inputs);
        if (aut->parsed()) return cmd_aut(g, family, n, samples, w_zero);
        if (act->parsed()) return cmd_action(g, family, n);
        if (orb->parsed()) return cmd_orbit(g, family, n, case_id, file, case_samples, export_cases);
        if (rep->parsed()) return cmd_reproduce(g, n_min, n_max, out, cap);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidFamily& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMathFail;
    }
    return kUsage;
}
