#include "zex/extensions.hpp"

#include <random>
#include <sstream>

namespace zex {

Algebra extend(const ExtensionSpec& spec) {
    const Algebra& b = spec.base;
    std::size_t n = b.dim(), s = spec.thetas.size();
    for (std::size_t t = 0; t < s; ++t) {
        if (spec.thetas[t].ambient() != n) throw std::invalid_argument("form dimension does not match the base");
        if (auto v = cocycle_violation(b, spec.thetas[t]))
            throw NotCocycle(t < spec.names.size() ? spec.names[t] : "theta" + std::to_string(t + 1), *v);
    }
    Algebra a(n + s, b.label().empty() ? "" : b.label() + " + " + std::to_string(s));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(b.c(i, j, k)) != 0) a.set(i, j, k, b.c(i, j, k));
            for (std::size_t t = 0; t < s; ++t)
                if (sgn(spec.thetas[t].m(i, j)) != 0) a.set(i, j, n + t, spec.thetas[t].m(i, j));
        }
    return a;
}

std::string NonsplitReport::diagnostics() const {
    std::string d;
    if (!independent())
        d += "classes dependent in H2 (rank " + std::to_string(class_rank) + " of " + std::to_string(s) + ")";
    if (!ts_zero()) {
        if (!d.empty()) d += "; ";
        d += "ann(theta) meets ann(A) in dimension " + std::to_string(intersection.dim());
    }
    return d.empty() ? "nonsplit" : d;
}

NonsplitReport is_nonsplit(const ExtensionSpec& spec) {
    NonsplitReport r;
    r.s = spec.thetas.size();
    auto coh = cohomology(spec.base);
    std::vector<Vec> rows;
    for (std::size_t t = 0; t < spec.thetas.size(); ++t) {
        if (auto v = cocycle_violation(spec.base, spec.thetas[t]))
            throw NotCocycle(t < spec.names.size() ? spec.names[t] : "theta" + std::to_string(t + 1), *v);
        rows.push_back(coh.project(spec.thetas[t]));
    }
    r.class_rank = rows.empty() ? 0 : rank(Matrix::from_rows(rows, coh.h2_dim()));
    r.intersection = intersect(cocycle_annihilator(spec.base, spec.thetas), annihilator(spec.base));
    return r;
}

bool has_annihilator_component(const Algebra& a) {
    auto ps = power_series(a);
    Subspace sq = ps.chain.size() > 1 ? ps.chain[1] : Subspace(a.dim());
    return !sq.contains(annihilator(a));
}

RecoveredExtension recover_extension(const Algebra& a) { return recover_extension(a, annihilator(a)); }

RecoveredExtension recover_extension(const Algebra& a, const Subspace& ann) {
    if (ann.dim() == 0) throw ZeroAnnihilator();
    if (!annihilator(a).contains(ann)) throw std::invalid_argument("subspace is not central");
    Quotient q = quotient_algebra(a, ann);
    std::size_t m = ann.dim(), k = q.lift.size();
    RecoveredExtension r;
    r.base = q.algebra;
    r.thetas.assign(m, BilinearForm(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Vec w = a.basis_product(q.lift[i], q.lift[j]);
            for (std::size_t t = 0; t < m; ++t) r.thetas[t].m(i, j) = w[ann.pivots()[t]];
        }
    std::vector<Vec> cols;
    for (auto l : q.lift) cols.push_back(unit_vector(a.dim(), l));
    for (const auto& v : ann.basis()) cols.push_back(v);
    r.basis = Matrix::from_columns(cols, a.dim());
    return r;
}

F0Report check_f0_theorem(std::size_t n, std::size_t trials, std::uint64_t seed) {
    F0Report rep;
    rep.n = n;
    rep.trials = trials;
    rep.seed = seed;
    Algebra base = make_f(0, n);
    auto coh = cohomology(base);
    Subspace ann = annihilator(base);
    std::mt19937_64 rng(seed);
    std::size_t attempts = 0;
    while (rep.accepted < trials && attempts < 100 * trials + 100) {
        ++attempts;
        Vec flat = zero_vector(n * n);
        for (const auto& b : coh.z2.basis()) {
            long c = long(rng() % 11) - 5;
            for (std::size_t i = 0; i < flat.size(); ++i) flat[i] += c * b[i];
        }
        BilinearForm th = BilinearForm::from_flat(flat, n);
        if (is_zero(coh.project(th)) || intersect(cocycle_annihilator(base, {th}), ann).dim() != 0) {
            ++rep.excluded;
            continue;
        }
        ++rep.accepted;
        Algebra e = extend({base, {th}, {}});
        if (is_null_filiform(e) && generator_count(e) == 1)
            ++rep.null_filiform;
        else
            rep.counterexamples.push_back(print_form({"theta", th}));
    }
    return rep;
}

std::string print_zext(const std::string& base_ref, const std::vector<NamedForm>& forms) {
    return "zext 1\nbase " + base_ref + "\n" + print_forms(forms);
}

ExtensionSpec parse_zext(const std::string& text, const std::function<std::string(const std::string&)>& read_file) {
    std::istringstream in(text);
    std::string line, rest;
    std::size_t ln = 0;
    bool header = false, have_base = false;
    ExtensionSpec spec;
    std::size_t base_line = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        std::istringstream ls(body);
        std::string key;
        if (!(ls >> key)) {
            rest += "\n";
            continue;
        }
        if (!header) {
            std::string v;
            if (key != "zext" || !(ls >> v) || v != "1") throw ParseError(ln, "expected header 'zext 1'");
            header = true;
            rest += "\n";
            continue;
        }
        if (key == "base" || key == "base-file") {
            if (have_base) throw ParseError(ln, "duplicate base line");
            std::string ref;
            std::getline(ls, ref);
            ref.erase(0, ref.find_first_not_of(' '));
            ref.erase(ref.find_last_not_of(" \r") + 1);
            try {
                if (key == "base")
                    spec.base = make(FamilyId::parse(ref));
                else
                    spec.base = parse_zalg(read_file(ref));
            } catch (const ParseError& e) {
                throw ParseError(ln, std::string("in base file: ") + e.what());
            } catch (const std::exception& e) {
                throw ParseError(ln, e.what());
            }
            have_base = true;
            base_line = ln;
            rest += "\n";
            continue;
        }
        if (key != "form") throw ParseError(ln, "unknown directive '" + key + "'");
        if (!have_base) throw ParseError(ln, "form line before base line");
        rest += line + "\n";
    }
    if (!header) throw ParseError(ln, "missing header 'zext 1'");
    if (!have_base) throw ParseError(ln, "missing base line");
    (void)base_line;
    for (auto& f : parse_forms(rest, spec.base.dim())) {
        spec.names.push_back(f.name);
        spec.thetas.push_back(std::move(f.form));
    }
    return spec;
}

}  // namespace zex
