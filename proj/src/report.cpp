#include "zex/report.hpp"

#include "zex/extensions.hpp"
#include "zex/invariants.hpp"
#include "zex/symbolic_action.hpp"

#include <map>
#include <random>
#include <set>
#include <sstream>

namespace zex {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        default: return "COLLISION";
    }
}

bool ReproduceReport::ok() const { return count(Verdict::Fail) == 0; }

std::size_t ReproduceReport::count(Verdict v) const {
    std::size_t c = 0;
    for (const auto& r : rows) c += r.verdict == v;
    return c;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char ch : s) {
        if (ch == '"') o += '"';
        o += ch;
    }
    return o + "\"";
}

std::string md_field(std::string s) {
    std::string o;
    for (char ch : s) {
        if (ch == '|') o += '\\';
        o += ch;
    }
    return o;
}

std::string fam(FamilyKind f) { return kind_name(f); }

}  // namespace

std::string ReproduceReport::csv() const {
    std::ostringstream os;
    os << "section,family,n,item,anchor,verdict,detail\n";
    for (const auto& r : rows)
        os << r.section << "," << r.family << "," << r.n << "," << csv_field(r.item) << "," << csv_field(r.anchor) << ","
           << verdict_name(r.verdict) << "," << csv_field(r.detail) << "\n";
    return os.str();
}

std::string ReproduceReport::markdown() const {
    std::ostringstream os;
    os << "# Reproduction report\n\n";
    os << "n = " << options.n_min << ".." << options.n_max << ", seed " << options.seed << ", precision "
       << options.precision << " bits, tol " << to_string(options.tol) << "\n\n";
    os << "PASS " << count(Verdict::Pass) << ", FAIL " << count(Verdict::Fail) << ", collisions "
       << count(Verdict::Collision) << "\n";
    std::string section;
    for (const auto& r : rows) {
        if (r.section != section) {
            section = r.section;
            os << "\n## " << section << "\n\n| family | n | item | anchor | verdict | detail |\n|---|---|---|---|---|---|\n";
        }
        os << "| " << r.family << " | " << r.n << " | " << md_field(r.item) << " | " << md_field(r.anchor) << " | "
           << (r.verdict == Verdict::Collision ? "expected collision" : verdict_name(r.verdict)) << " | "
           << md_field(r.detail) << " |\n";
    }
    return os.str();
}

std::uint64_t row_seed(std::uint64_t seed, const std::string& key) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return seed ^ h;
}

CohomologyCheck check_family_cohomology(FamilyKind f, std::size_t n) {
    CohomologyCheck c;
    Algebra a = make_f(int(f), n);
    auto coh = cohomology(a);
    c.z2 = coh.z2.dim();
    c.b2 = coh.b2.dim();
    c.h2 = coh.h2_dim();
    c.h2_expected = h2_dim(f);
    c.z2_expected = f == FamilyKind::F1 ? n + 2 : n + 1;
    c.b2_expected = n - 2;
    auto flats = [](const std::vector<BilinearForm>& fs) {
        std::vector<Vec> v;
        for (const auto& x : fs) v.push_back(x.flat());
        return v;
    };
    auto lz = flats(listed_z2_basis(f, n)), lb = flats(listed_b2_basis(f, n)), nb = flats(nabla_basis(f, n));
    c.z2_span = Subspace::span(lz, n * n) == coh.z2;
    c.b2_span = Subspace::span(lb, n * n) == coh.b2;
    auto both = lb;
    both.insert(both.end(), nb.begin(), nb.end());
    Subspace s = Subspace::span(both, n * n);
    c.h2_span = s == coh.z2 && s.dim() == coh.b2.dim() + nb.size();
    return c;
}

CaseCheck check_reduction_case(const ReductionCase& c, std::size_t samples, std::uint64_t seed, unsigned precision,
                               const Rational& tol) {
    CaseCheck r;
    std::mt19937_64 rng(row_seed(seed, "case " + c.id + " " + std::to_string(c.n)));
    for (std::size_t t = 0; t < samples; ++t) {
        auto s = sample_case(c, rng);
        if (!s) {
            r.error = "no admissible sample";
            return r;
        }
        try {
            auto od = verify_reduction_case<double>(c, *s, 1e-9);
            r.pass_double = r.pass_double && od.pass;
            r.phi_in_aut = r.phi_in_aut && od.phi_in_aut;
            PrecisionScope scope(precision);
            auto ob = verify_reduction_case<BigFloat>(c, *s, real_from_rational<BigFloat>(tol));
            r.pass_big = r.pass_big && ob.pass;
        } catch (const std::exception& e) {
            r.error = e.what();
            return r;
        }
        ++r.samples;
    }
    return r;
}

std::vector<Rational> extension_alpha_samples() { return {Rational(3), make_rational(-2, 5), Rational(0)}; }

ExtensionCheck check_extension_row(FamilyKind f, std::size_t n, const ExtensionRow& row,
                                   const std::optional<Rational>& alpha, unsigned precision, const Rational& tol) {
    ExtensionCheck res;
    auto lists = orbit_lists(f, n);
    const Representative* rep = find_representative(lists, row.s, row.rep);
    if (!rep) {
        res.detail = "representative not in the orbit list";
        return res;
    }
    Algebra e = extend({make_f(int(f), n), representative_forms(f, n, *rep, alpha), {}});
    Algebra target = make(row.result(n, alpha));
    if (auto w = search_isomorphism(e, target, n - 1)) {
        res.found = true;
        if (w->kind == IsoWitness::Kind::Permutation) {
            res.witness = "permutation";
            std::string p;
            for (std::size_t i = n - 1; i < w->perm.size(); ++i)
                if (w->perm[i] != i) p += (p.empty() ? "" : " ") + std::to_string(i + 1) + "->" + std::to_string(w->perm[i] + 1);
            res.detail = "permutation " + (p.empty() ? std::string("identity") : p);
        } else {
            res.witness = "lifted";
            res.detail = "lifted isomorphism, verified exactly";
        }
        return res;
    }
    if (auto s = separating_invariant(fingerprint(e), fingerprint(target))) {
        res.detail = "fingerprints differ at " + *s;
        return res;
    }
    PrecisionScope scope(precision);
    BigFloat t = real_from_rational<BigFloat>(tol);
    if (auto c = search_complex_isomorphism(e, target, precision, t)) {
        res.found = true;
        res.witness = "complex";
        res.detail = "complex isomorphism, residual below " + to_string(tol) + " at " + std::to_string(precision) + " bits";
        return res;
    }
    res.detail = "no witness found";
    return res;
}

std::vector<std::pair<std::string, Algebra>> appendix_list(std::size_t n) {
    std::vector<std::pair<std::string, Algebra>> out{{"F1", make_f(1, n)}, {"F2", make_f(2, n)}, {"F3", make_f(3, n)}};
    for (int k = 1; k <= 16; ++k) {
        if (mu_has_alpha(k)) {
            for (const auto& a : {make_rational(1, 2), Rational(2)})
                out.push_back({FamilyId{FamilyKind::MU, k, n, a}.name(), make_mu(k, n, a)});
        } else {
            out.push_back({FamilyId{FamilyKind::MU, k, n, std::nullopt}.name(), make_mu(k, n)});
        }
    }
    return out;
}

namespace {

void identity_rows(const ReproduceOptions& o, std::vector<ReportRow>& rows) {
    for (std::size_t n = o.n_min; n <= o.n_max; ++n) {
        std::vector<FamilyId> ids;
        for (int k = 0; k <= 3; ++k) ids.push_back({FamilyKind(k), 0, n, std::nullopt});
        std::size_t m = n + 1;
        std::vector<Rational> alphas{Rational(0), Rational(1), Rational(-1), Rational(2), make_rational(1, 2),
                                     make_rational(1, long(m) - 3), make_rational(1, long(m) - 4)};
        for (int k = 1; k <= 16; ++k) {
            if (!mu_has_alpha(k)) {
                ids.push_back({FamilyKind::MU, k, m, std::nullopt});
                continue;
            }
            for (const auto& a : alphas) ids.push_back({FamilyKind::MU, k, m, a});
        }
        std::size_t bad = 0;
        std::string first;
        for (const auto& id : ids) {
            auto v = check_zinbiel(make(id));
            if (!v.empty()) {
                ++bad;
                if (first.empty()) first = id.label();
            }
        }
        rows.push_back({"identity", "all", n, "Zinbiel identity", "identity n=" + std::to_string(n),
                        bad ? Verdict::Fail : Verdict::Pass,
                        std::to_string(ids.size()) + " algebras" + (bad ? ", first failure " + first : "")});
    }
}

void cohomology_rows(const ReproduceOptions& o, std::vector<ReportRow>& rows) {
    for (int k = 1; k <= 3; ++k)
        for (std::size_t n = o.n_min; n <= o.n_max; ++n) {
            auto c = check_family_cohomology(FamilyKind(k), n);
            std::string anchor = "cohomology " + fam(FamilyKind(k));
            rows.push_back({"cohomology", fam(FamilyKind(k)), n, "dimensions", anchor,
                            c.dims_ok() ? Verdict::Pass : Verdict::Fail,
                            "Z2 " + std::to_string(c.z2) + "/" + std::to_string(c.z2_expected) + ", B2 " +
                                std::to_string(c.b2) + "/" + std::to_string(c.b2_expected) + ", H2 " +
                                std::to_string(c.h2) + "/" + std::to_string(c.h2_expected)});
            rows.push_back({"cohomology", fam(FamilyKind(k)), n, "listed bases span", anchor,
                            c.spans_ok() ? Verdict::Pass : Verdict::Fail,
                            std::string("Z2 ") + (c.z2_span ? "ok" : "differs") + ", B2 " + (c.b2_span ? "ok" : "differs") +
                                ", H2 " + (c.h2_span ? "ok" : "differs")});
        }
}

void aut_rows(const ReproduceOptions& o, std::vector<ReportRow>& rows) {
    for (int k = 1; k <= 3; ++k)
        for (std::size_t n = o.n_min; n <= o.n_max; ++n) {
            FamilyKind f = FamilyKind(k);
            std::mt19937_64 rng(row_seed(o.seed, "aut " + fam(f) + " " + std::to_string(n)));
            auto r = verify_aut_template(f, n, o.aut_samples, rng);
            rows.push_back({"aut", fam(f), n, "automorphism template", "aut " + fam(f),
                            r.pass() ? Verdict::Pass : Verdict::Fail,
                            std::to_string(r.passed()) + "/" + std::to_string(r.samples.size()) + " samples"});
            if (f == FamilyKind::F3) {
                auto r0 = verify_aut_template(f, n, o.aut_samples, rng, true);
                rows.push_back({"aut", fam(f), n, "template with a_{n,1}=0", "aut " + fam(f),
                                r0.pass() ? Verdict::Pass : Verdict::Fail,
                                std::to_string(r0.passed()) + "/" + std::to_string(r0.samples.size()) + " samples"});
            }
        }
}

void action_rows(const ReproduceOptions& o, std::vector<ReportRow>& rows) {
    for (int k = 1; k <= 3; ++k)
        for (std::size_t n = o.n_min; n <= o.n_max; ++n) {
            auto r = verify_action_formula(FamilyKind(k), n);
            std::string d = r.image_in_z2 ? "image in Z2" : "image leaves Z2";
            d += r.computed == r.expected ? ", coefficients identical" : ", coefficients differ";
            rows.push_back({"action", fam(FamilyKind(k)), n, "action formula", "action " + fam(FamilyKind(k)),
                            r.pass() ? Verdict::Pass : Verdict::Fail, d});
        }
}

void reduction_rows(const ReproduceOptions& o, std::vector<ReportRow>& rows) {
    for (int k = 1; k <= 3; ++k)
        for (std::size_t n = o.n_min; n <= o.n_max; ++n) {
            auto cases = reduction_cases(FamilyKind(k), n);
            std::map<std::string, CaseCheck> res;
            for (const auto& c : cases) res[c.id] = check_reduction_case(c, o.case_samples, o.seed, o.precision, o.tol);
            for (const auto& c : cases) {
                const auto& r = res[c.id];
                std::string d;
                if (!r.error.empty())
                    d = r.error;
                else
                    d = std::to_string(r.samples) + " samples, double " + (r.pass_double ? "ok" : "fails") + ", " +
                        std::to_string(o.precision) + "-bit " + (r.pass_big ? "ok" : "fails");
                if (!r.phi_in_aut) d += "; substituted matrix is not an automorphism";
                if (!r.pass() && c.kind == CaseKind::Literal) {
                    auto it = res.find(c.id + "-corr");
                    if (it != res.end() && it->second.pass()) d += "; literal transcription, corrected row " + c.id + "-corr passes";
                }
                if (!c.note.empty()) d += "; " + c.note;
                rows.push_back({"reduction", fam(FamilyKind(k)), n, c.orbit, c.id, r.pass() ? Verdict::Pass : Verdict::Fail, d});
            }
        }
}

void extension_rows(const ReproduceOptions& o, std::vector<ReportRow>& rows) {
    for (int k = 1; k <= 3; ++k)
        for (std::size_t n = o.n_min; n <= o.n_max; ++n) {
            FamilyKind f = FamilyKind(k);
            auto lists = orbit_lists(f, n);
            for (const auto& row : extension_theorem_table(f, n)) {
                const Representative* rep = find_representative(lists, row.s, row.rep);
                std::vector<std::optional<Rational>> alphas;
                if (row.fixed_alpha)
                    alphas.push_back(row.fixed_alpha);
                else if (rep && rep->parametric())
                    for (const auto& a : extension_alpha_samples()) alphas.push_back(a);
                else
                    alphas.push_back(std::nullopt);
                for (const auto& a : alphas) {
                    auto chk = check_extension_row(f, n, row, a, o.precision, o.tol);
                    std::string item = row.rep + (a ? " alpha=" + to_string(*a) : "") + " -> " + row.result(n, a).name();
                    std::string d = chk.detail;
                    if (row.conflict()) d += "; source lists " + row.claimed;
                    if (!row.note.empty()) d += "; " + row.note;
                    rows.push_back({"extension", fam(f), n, item, "extension " + fam(f) + " s=" + std::to_string(row.s),
                                    chk.found ? Verdict::Pass : Verdict::Fail, d});
                }
            }
        }
}

void f0_rows(const ReproduceOptions& o, std::vector<ReportRow>& rows) {
    for (std::size_t n = o.n_min; n <= o.n_max; ++n) {
        auto r = check_f0_theorem(n, o.f0_trials, row_seed(o.seed, "f0 " + std::to_string(n)));
        rows.push_back({"f0", "F0", n, "non-split extensions are null-filiform", "extension F0",
                        r.pass() ? Verdict::Pass : Verdict::Fail,
                        std::to_string(r.null_filiform) + "/" + std::to_string(r.accepted) + " null-filiform, " +
                            std::to_string(r.excluded) + " draws filtered"});
    }
}

void fingerprint_rows(const ReproduceOptions& o, std::vector<ReportRow>& rows) {
    for (std::size_t n = o.n_min; n <= o.n_max; ++n) {
        auto r = distinguish_report({{"F1", make_f(1, n)}, {"F2", make_f(2, n)}, {"F3", make_f(3, n)}});
        std::string d;
        for (const auto& p : r.pairs)
            d += (d.empty() ? "" : "; ") + r.labels[p.i] + "/" + r.labels[p.j] + " " + (p.separated ? p.invariant : "collision");
        rows.push_back({"fingerprint", "F1-F3", n, "filiform families separated", "fingerprint filiform",
                        r.fully_distinguished() ? Verdict::Pass : Verdict::Fail, d});
        auto ar = distinguish_report(appendix_list(n + 1));
        rows.push_back({"fingerprint", "appendix", n + 1, "appendix list", "fingerprint appendix", Verdict::Pass,
                        std::to_string(ar.pairs.size() - ar.collisions().size()) + "/" + std::to_string(ar.pairs.size()) +
                            " pairs separated"});
        for (const auto& p : ar.collisions())
            rows.push_back({"fingerprint", "appendix", n + 1, ar.labels[p.i] + " / " + ar.labels[p.j],
                            "fingerprint appendix", Verdict::Collision, "not separated by implemented invariants"});
    }
}

}  // namespace

ReproduceReport reproduce(const ReproduceOptions& opt) {
    if (opt.n_min < 5 || opt.n_min > opt.n_max) throw std::invalid_argument("need 5 <= n-min <= n-max");
    ReproduceReport rep;
    rep.options = opt;
    identity_rows(opt, rep.rows);
    cohomology_rows(opt, rep.rows);
    aut_rows(opt, rep.rows);
    action_rows(opt, rep.rows);
    reduction_rows(opt, rep.rows);
    extension_rows(opt, rep.rows);
    f0_rows(opt, rep.rows);
    fingerprint_rows(opt, rep.rows);
    return rep;
}

}  // namespace zex
