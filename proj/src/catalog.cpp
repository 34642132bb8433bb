#include "zex/catalog.hpp"

#include <map>
#include <sstream>

namespace zex {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

// Replaces "{n}", "{n-1}", "{n+1}", ... by the integer value.
std::string fill(const std::string& s, std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '{') {
            out += s[i];
            continue;
        }
        auto close = s.find('}', i);
        std::string body = s.substr(i + 1, close - i - 1);
        long v = long(n);
        if (body.size() > 1) v += std::stol(body.substr(1));
        out += std::to_string(v);
        i = close;
    }
    return out;
}

void add_chain(Algebra& a, std::size_t bound) {
    std::size_t n = a.dim();
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            if (i + j >= 2 && i + j <= bound && i + j <= n) a.set(i - 1, j - 1, i + j - 1, binomial(long(i + j - 1), long(j)));
}

// Σ_{i=1}^{s-1} C_{s-1}^{i-1} Δ_{i,s-i}
BilinearForm chain_form(std::size_t n, std::size_t s) {
    BilinearForm f(n);
    for (std::size_t i = 1; i + 1 <= s; ++i) f.m(i - 1, s - i - 1) = binomial(long(s - 1), long(i - 1));
    return f;
}

}  // namespace

std::string kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::F0: return "F0";
        case FamilyKind::F1: return "F1";
        case FamilyKind::F2: return "F2";
        case FamilyKind::F3: return "F3";
        case FamilyKind::MU: return "MU";
    }
    return "?";
}

std::optional<FamilyKind> parse_kind(const std::string& s) {
    if (s == "F0") return FamilyKind::F0;
    if (s == "F1") return FamilyKind::F1;
    if (s == "F2") return FamilyKind::F2;
    if (s == "F3") return FamilyKind::F3;
    return std::nullopt;
}

bool mu_has_alpha(int k) { return k == 2 || k == 10 || k == 11; }

std::string FamilyId::name() const {
    if (kind != FamilyKind::MU) return kind_name(kind);
    std::string s = "MU" + std::to_string(mu);
    if (alpha) s += "(" + to_string(*alpha) + ")";
    return s;
}

std::string FamilyId::label() const {
    std::string s = (kind == FamilyKind::MU ? "MU" + std::to_string(mu) : kind_name(kind)) + " " + std::to_string(n);
    if (alpha) s += " " + to_string(*alpha);
    return s;
}

FamilyId FamilyId::parse(const std::string& text) {
    std::istringstream in(text);
    std::string fam, dim, al;
    if (!(in >> fam >> dim)) throw InvalidFamily("family id needs '<family> <n>': '" + text + "'");
    FamilyId id;
    if (auto k = parse_kind(fam)) {
        id.kind = *k;
    } else if (fam.size() > 2 && fam.substr(0, 2) == "MU") {
        id.kind = FamilyKind::MU;
        try {
            id.mu = std::stoi(fam.substr(2));
        } catch (const std::exception&) {
            throw InvalidFamily("bad family '" + fam + "'");
        }
    } else {
        throw InvalidFamily("unknown family '" + fam + "'");
    }
    try {
        long v = std::stol(dim);
        if (v < 1) throw InvalidFamily("dimension must be positive");
        id.n = std::size_t(v);
    } catch (const std::invalid_argument&) {
        throw InvalidFamily("bad dimension '" + dim + "'");
    }
    if (in >> al) {
        Rational q;
        if (!try_parse_rational(al, q)) throw InvalidFamily("bad alpha '" + al + "'");
        id.alpha = q;
    }
    std::string extra;
    if (in >> extra) throw InvalidFamily("trailing text in family id '" + text + "'");
    return id;
}

Rational binomial(long i, long j) {
    if (j < 0 || i < 0 || j > i) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(j));
    return Rational(r);
}

Algebra make_mu(int k, std::size_t n, std::optional<Rational> alpha) {
    return make(FamilyId{FamilyKind::MU, k, n, std::move(alpha)});
}

Algebra make(const FamilyId& id) {
    std::size_t n = id.n;
    if (id.kind == FamilyKind::MU) {
        int k = id.mu;
        if (k < 1 || k > 16) throw InvalidFamily("MU index must be 1..16");
        if (mu_has_alpha(k) != id.alpha.has_value())
            throw InvalidFamily(mu_has_alpha(k) ? "MU" + std::to_string(k) + " needs alpha"
                                                : "MU" + std::to_string(k) + " takes no alpha");
        static const int core_drop[17] = {0, 2, 2, 2, 2, 3, 3, 2, 2, 3, 3, 2, 2, 2, 4, 3, 3};
        if (n < 6)
            throw InvalidFamily("MU" + std::to_string(k) + " needs n >= 6");
        Algebra a(n, id.label());
        add_chain(a, n - core_drop[k]);
        std::size_t N = n;
        auto put = [&](std::size_t i, std::size_t j, std::size_t t, const Rational& c) { a.add(i - 1, j - 1, t - 1, c); };
        const Rational al = id.alpha.value_or(0);
        switch (k) {
            case 1: put(1, N, N - 1, 1); break;
            case 2: put(1, N, N - 1, al); put(N, 1, N - 1, 1); break;
            case 3: put(N, N, N - 1, 1); break;
            case 4: put(1, N, N - 1, 1); put(N, N, N - 1, 1); break;
            case 5: put(1, N, N - 1, 1); put(N, 1, N - 2, 1); break;
            case 6:
            case 7: put(1, N, N - 1, 1); put(N, N, N - 2, 1); break;
            case 8: put(1, N, N - 1, Rational(1, long(N - 3))); put(N, 1, N - 2, 1); put(N, 1, N - 1, 1); break;
            case 9: put(1, N, N - 2, 1); put(1, N, N - 1, 1); put(N, 1, N - 1, 1); put(N, N, N - 2, 1); break;
            case 10:
            case 11: put(1, N, N - 1, al); put(N, 1, N - 1, 1); put(N, N, N - 2, 1); break;
            case 12: put(N, 1, N - 2, 1); put(N, 1, N - 1, 1); put(N, N, N - 1, 1); break;
            case 13: put(N, 1, N - 2, 1); put(N, N, N - 1, 1); break;
            case 14:
            case 15: put(1, N, N - 2, 1); put(N, 1, N - 1, 1); put(N, N, N - 3, 1); break;
            case 16: put(1, N, N - 1, Rational(1, long(N - 4))); put(N, 1, N - 3, 1); put(N, 1, N - 1, 1); put(N, N, N - 2, 1); break;
        }
        if (id.alpha) a.set_param("alpha", *id.alpha);
        return a;
    }
    if (id.alpha) throw InvalidFamily(kind_name(id.kind) + " takes no alpha");
    if (id.kind == FamilyKind::F0) {
        if (n < 1) throw InvalidFamily("F0 needs n >= 1");
        Algebra a(n, id.label());
        add_chain(a, n);
        return a;
    }
    if (n < 5) throw InvalidFamily(kind_name(id.kind) + " needs n >= 5");
    Algebra a(n, id.label());
    add_chain(a, n - 1);
    if (id.kind == FamilyKind::F2) a.set(n - 1, 0, n - 2, 1);
    if (id.kind == FamilyKind::F3) a.set(n - 1, n - 1, n - 2, 1);
    return a;
}

std::size_t h2_dim(FamilyKind f) { return f == FamilyKind::F1 ? 4 : 3; }

std::vector<BilinearForm> nabla_basis(FamilyKind f, std::size_t n) {
    if (f != FamilyKind::F1 && f != FamilyKind::F2 && f != FamilyKind::F3) throw InvalidFamily("nabla basis needs F1, F2 or F3");
    if (n < 5) throw InvalidFamily("nabla basis needs n >= 5");
    std::vector<BilinearForm> v{BilinearForm::delta(n, 0, n - 1), BilinearForm::delta(n, n - 1, 0),
                                BilinearForm::delta(n, n - 1, n - 1)};
    if (f == FamilyKind::F1) v.push_back(chain_form(n, n));
    return v;
}

std::vector<BilinearForm> listed_z2_basis(FamilyKind f, std::size_t n) {
    std::vector<BilinearForm> v{BilinearForm::delta(n, 0, 0), BilinearForm::delta(n, 0, n - 1), BilinearForm::delta(n, n - 1, 0),
                                BilinearForm::delta(n, n - 1, n - 1)};
    std::size_t top = f == FamilyKind::F1 ? n : n - 1;
    for (std::size_t s = 3; s <= top; ++s) v.push_back(chain_form(n, s));
    return v;
}

std::vector<BilinearForm> listed_b2_basis(FamilyKind f, std::size_t n) {
    std::vector<BilinearForm> v{BilinearForm::delta(n, 0, 0)};
    if (f == FamilyKind::F1) {
        for (std::size_t s = 3; s <= n - 1; ++s) v.push_back(chain_form(n, s));
        return v;
    }
    for (std::size_t s = 3; s <= n - 2; ++s) v.push_back(chain_form(n, s));
    BilinearForm last = chain_form(n, n - 1);
    if (f == FamilyKind::F2)
        last.m(n - 1, 0) += 1;
    else
        last.m(n - 1, n - 1) += 1;
    v.push_back(last);
    return v;
}

std::optional<std::vector<BilinearForm>> catalog_h2_reps(const Algebra& a) {
    FamilyId id;
    try {
        id = FamilyId::parse(a.label());
    } catch (const InvalidFamily&) {
        return std::nullopt;
    }
    if (id.kind != FamilyKind::F1 && id.kind != FamilyKind::F2 && id.kind != FamilyKind::F3) return std::nullopt;
    if (id.n != a.dim() || id.n < 5 || id.alpha) return std::nullopt;
    if (!make(id).same_table(a)) return std::nullopt;
    return nabla_basis(id.kind, id.n);
}

bool Representative::parametric() const {
    for (const auto& r : rows)
        for (const auto& e : r)
            if (e.variables().count("alpha")) return true;
    return false;
}

std::string coeff_var(std::size_t t, std::size_t i) {
    static const char letters[] = {'a', 'b', 'c', 'd'};
    return std::string(1, letters[t]) + std::to_string(i + 1);
}

namespace {

struct Spec {
    std::string id;
    std::vector<const char*> cons;
    std::vector<std::pair<const char*, const char*>> subs;
    std::vector<std::vector<const char*>> target;
    const char* orbit;
    const char* alpha = nullptr;
    CaseKind kind = CaseKind::Literal;
    const char* note = "";
};

std::vector<std::string> shape_constraints(FamilyKind f, std::size_t s) {
    if (f == FamilyKind::F1) {
        static const std::vector<std::vector<std::string>> z = {
            {}, {}, {"b4 = 0"}, {"b4 = 0", "c3 = 0", "c4 = 0"}, {"b4 = 0", "c3 = 0", "c4 = 0", "d2 = 0", "d3 = 0", "d4 = 0"}};
        return z[s];
    }
    static const std::vector<std::vector<std::string>> z = {{}, {}, {"b3 = 0"}, {"b3 = 0", "c2 = 0", "c3 = 0"}};
    return z[s];
}

ReductionCase build(FamilyKind f, std::size_t n, std::size_t s, const Spec& sp) {
    ReductionCase c;
    c.family = f;
    c.n = n;
    c.s = s;
    c.id = sp.id;
    c.kind = sp.kind;
    c.constraints = shape_constraints(f, s);
    for (const char* k : sp.cons) c.constraints.push_back(fill(k, n));
    for (const auto& [p, e] : sp.subs) c.substitutions.emplace_back(p, RadicalExpr::parse(fill(e, n)));
    for (const auto& row : sp.target) {
        std::vector<RadicalExpr> r;
        for (const char* e : row) r.push_back(RadicalExpr::parse(fill(e, n)));
        c.target.push_back(std::move(r));
    }
    c.orbit = sp.orbit;
    if (sp.alpha) c.alpha = RadicalExpr::parse(fill(sp.alpha, n));
    c.note = sp.note;
    return c;
}

// Shared substitution blocks.
#define SUB_F1_CASE4 {"x", "root(a3,2)/(a1-a2)"}, {"y", "1/root(a3,2)"}, {"w", "a2/(root(a3,2)*(a2-a1))"}
#define SUB_F1_CASE7                                                                             \
    {"x", "1/root(a4,{n})"}, {"y", "1/root(a3,2)"}, {"z", "(a1-a2)/({n-2}*root(a3,2)*a4)"}, \
        {"w", "(a2-{n-1}*a1)/({n-2}*root(a4,{n})*a3)"}

std::vector<Spec> f1_specs(std::size_t s) {
    switch (s) {
        case 1:
            return {
                {"F1.1.1", {"a2 = 0", "a3 = 0", "a4 = 0", "a1 != 0"}, {{"x", "1"}, {"y", "1/a1"}}, {{"1", "0", "0", "0"}}, "<N1>"},
                {"F1.1.2", {"a3 = 0", "a4 = 0", "a2 != 0"}, {{"x", "1"}, {"y", "1/a2"}}, {{"a1/a2", "1", "0", "0"}}, "<alpha*N1+N2>", "a1/a2"},
                {"F1.1.3", {"a4 = 0", "a1 = a2", "a3 != 0"}, {{"y", "1/root(a3,2)"}, {"w", "-a2/a3"}}, {{"0", "0", "1", "0"}}, "<N3>"},
                {"F1.1.4", {"a4 = 0", "a3 != 0", "a1 != a2"}, {SUB_F1_CASE4}, {{"1", "0", "1", "0"}}, "<N1+N3>"},
                {"F1.1.5", {"a3 = 0", "a2 = {n-1}*a1", "a4 != 0"}, {{"x", "1/root(a4,{n})"}, {"y", "1"}, {"z", "-a1/a4"}}, {{"0", "0", "0", "1"}}, "<N4>"},
                {"F1.1.6", {"a3 = 0", "a4 != 0", "a2 != {n-1}*a1"},
                 {{"x", "1/root(a4,{n})"}, {"y", "root(a4,{n})/(a2-{n-1}*a1)"}, {"z", "-root(a4,{n})/(a2-{n-1}*a1)"}},
                 {{"0", "1", "0", "1"}}, "<N2+N4>", nullptr, CaseKind::Literal, "literal z drops the factor a1/a4"},
                {"F1.1.6-corr", {"a3 = 0", "a4 != 0", "a2 != {n-1}*a1"},
                 {{"x", "1/root(a4,{n})"}, {"y", "root(a4,{n})/(a2-{n-1}*a1)"}, {"z", "-a1*root(a4,{n})/(a4*(a2-{n-1}*a1))"}},
                 {{"0", "1", "0", "1"}}, "<N2+N4>", nullptr, CaseKind::Erratum, "z = -a1*x^(-1)/(a4*(a2-(n-1)*a1))"},
                {"F1.1.7", {"a3 != 0", "a4 != 0"}, {SUB_F1_CASE7}, {{"0", "0", "1", "1"}}, "<N3+N4>"},
            };
        case 2:
            return {
                {"F1.2.1a", {"a3 = 0", "a4 != 0", "b3 != 0", "a2 != {n-1}*a1", "b1 != b2"},
                 {{"x", "pow((a2-{n-1}*a1)*(b2-b1)/a4,1/{n-2})"}, {"y", "(b2-b1)*x/b3"}, {"z", "a1*(b1-b2)*x/(a4*b3)"}, {"w", "-b1*x/b3"}},
                 {{"0", "1", "1", "0"}, {"0", "1", "0", "1"}}, "<N2+N3, N2+N4>", nullptr, CaseKind::Literal, "literal x omits b3 in the denominator"},
                {"F1.2.1a-corr", {"a3 = 0", "a4 != 0", "b3 != 0", "a2 != {n-1}*a1", "b1 != b2"},
                 {{"x", "pow((a2-{n-1}*a1)*(b2-b1)/(a4*b3),1/{n-2})"}, {"y", "(b2-b1)*x/b3"}, {"z", "a1*(b1-b2)*x/(a4*b3)"}, {"w", "-b1*x/b3"}},
                 {{"0", "1", "1", "0"}, {"0", "1", "0", "1"}}, "<N2+N3, N2+N4>", nullptr, CaseKind::Erratum, "x denominator a4*b3"},
                {"F1.2.1b", {"a3 = 0", "b2 = b1", "a4 != 0", "b3 != 0", "a2 != {n-1}*a1"},
                 {{"x", "pow((a2-{n-1}*a1)/(a4*root(b3,2)),1/{n-1})"}, {"y", "1/root(b3,2)"}, {"z", "-a1/(a4*root(b3,2))"}, {"w", "-b1*x/b3"}},
                 {{"0", "0", "1", "0"}, {"0", "1", "0", "1"}}, "<N3, N2+N4>"},
                {"F1.2.1c", {"a3 = 0", "a2 = {n-1}*a1", "a4 != 0", "b3 != 0", "b1 != b2"},
                 {{"x", "1/root(a4,{n})"}, {"y", "(b2-b1)*x/b3"}, {"z", "a1*(b1-b2)*x/(a4*b3)"}, {"w", "-b1*x/b3"}},
                 {{"0", "1", "1", "0"}, {"0", "0", "0", "1"}}, "<N2+N3, N4>"},
                {"F1.2.1d", {"a3 = 0", "a2 = {n-1}*a1", "b2 = b1", "a4 != 0", "b3 != 0"},
                 {{"x", "1/root(a4,{n})"}, {"y", "1/root(b3,2)"}, {"z", "-a1*y/a4"}, {"w", "-b1*x/b3"}},
                 {{"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, "<N3, N4>"},
                {"F1.2.2a", {"b3 = 0", "a2 = 0", "a4 != 0", "b2 != 0", "a3 != 0"},
                 {{"x", "1/root(a4,{n})"}, {"y", "1/root(a3,2)"}, {"z", "a1/({n-2}*root(a3,2)*a4)"}, {"w", "-{n-1}*a1/({n-2}*root(a4,{n})*a3)"}},
                 {{"b1/b2", "1", "0", "0"}, {"0", "0", "1", "1"}}, "<alpha*N1+N2, N3+N4>", "b1/b2"},
                {"F1.2.2b", {"b3 = 0", "a2 = 0", "a3 = 0", "a4 != 0", "b2 != 0", "{n-1}*b1 != b2"},
                 {{"x", "1/root(a4,{n})"}, {"y", "1"}, {"z", "-a1*b2/(a4*({n-1}*b1-b2))"}},
                 {{"b1/b2", "1", "0", "0"}, {"0", "0", "0", "1"}}, "<alpha*N1+N2, N4>", "b1/b2", CaseKind::Literal, "literal z has the wrong sign"},
                {"F1.2.2b-corr", {"b3 = 0", "a2 = 0", "a3 = 0", "a4 != 0", "b2 != 0", "{n-1}*b1 != b2"},
                 {{"x", "1/root(a4,{n})"}, {"y", "1"}, {"z", "a1*b2/(a4*({n-1}*b1-b2))"}},
                 {{"b1/b2", "1", "0", "0"}, {"0", "0", "0", "1"}}, "<alpha*N1+N2, N4>", "b1/b2", CaseKind::Erratum, "sign of z flipped"},
                {"F1.2.2c", {"b3 = 0", "a2 = 0", "a3 = 0", "a1 = 0", "b2 = {n-1}*b1", "a4 != 0", "b1 != 0"},
                 {{"x", "1/root(a4,{n})"}, {"y", "1"}, {"z", "0"}},
                 {{"1/{n-1}", "1", "0", "0"}, {"0", "0", "0", "1"}}, "<alpha*N1+N2, N4>", "1/{n-1}"},
                {"F1.2.2d", {"b3 = 0", "a2 = 0", "a3 = 0", "b2 = {n-1}*b1", "a1 != 0", "a4 != 0", "b1 != 0"},
                 {{"x", "1/root(a4,{n})"}, {"y", "-root(a4,{n})/({n-1}*a1)"}, {"z", "root(a4,{n})/({n-1}*a4)"}},
                 {{"1/{n-1}", "1", "0", "0"}, {"0", "1", "0", "1"}}, "<1/(n-1)*N1+N2, N2+N4>"},
                {"F1.2.3a", {"b3 = 0", "b2 = 0", "a4 != 0", "b1 != 0", "a3 != 0"}, {SUB_F1_CASE7},
                 {{"1", "0", "0", "0"}, {"0", "0", "1", "1"}}, "<N1, N3+N4>"},
                {"F1.2.3b", {"b3 = 0", "b2 = 0", "a3 = 0", "a2 = {n-1}*a1", "a4 != 0", "b1 != 0"},
                 {{"x", "1/root(a4,{n})"}, {"y", "1"}, {"z", "-a1/a4"}},
                 {{"1", "0", "0", "0"}, {"0", "0", "0", "1"}}, "<N1, N4>"},
                {"F1.2.4a", {"a4 = 0", "b3 = 0", "a1 = a2", "a3 != 0", "b2 != 0", "b1 != b2"},
                 {{"x", "1"}, {"y", "1/root(a3,2)"}, {"w", "-a2/a3"}},
                 {{"b1/b2", "1", "0", "0"}, {"0", "0", "1", "0"}}, "<alpha*N1+N2, N3>", "b1/b2"},
                {"F1.2.4b", {"a4 = 0", "b3 = 0", "a1 = a2", "b1 = b2", "a3 != 0", "b2 != 0"}, {},
                 {{"1", "1", "0", "0"}, {"0", "0", "1", "0"}}, "<alpha*N1+N2, N3>", "1"},
                {"F1.2.4c", {"a4 = 0", "b3 = 0", "b2 = b1", "a3 != 0", "b1 != 0", "a1 != a2"}, {SUB_F1_CASE4},
                 {{"1", "1", "0", "0"}, {"1", "0", "1", "0"}}, "<N1+N2, N1+N3>"},
                {"F1.2.5", {"a4 = 0", "b3 = 0", "b2 = 0", "a1 = a2", "a3 != 0", "b1 != 0"},
                 {{"x", "1"}, {"y", "1/root(a3,2)"}, {"w", "-a2/a3"}},
                 {{"1", "0", "0", "0"}, {"0", "0", "1", "0"}}, "<N1, N3>"},
                {"F1.2.6", {"a3 = 0", "a4 = 0", "b3 = 0"}, {},
                 {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}}, "<N1, N2>"},
            };
        case 3:
            return {
                {"F1.3.1a", {"a2 = 0", "a3 = 0", "b2 = 0", "a4 != 0", "b3 != 0", "c2 != 0", "c1 != c2", "{n-1}*c1 != c2"},
                 {{"x", "1/root(a4,{n})"}, {"y", "1/root(b3,2)"}, {"z", "a1*c2*y/(a4*({n-1}*c1-c2))"}, {"w", "b1*c2*x/(a4*(c1-c2))"}},
                 {{"c1/c2", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, "<alpha*N1+N2, N3, N4>", "c1/c2",
                 CaseKind::Literal, "literal w has a4 where b3 belongs"},
                {"F1.3.1a-corr", {"a2 = 0", "a3 = 0", "b2 = 0", "a4 != 0", "b3 != 0", "c2 != 0", "c1 != c2", "{n-1}*c1 != c2"},
                 {{"x", "1/root(a4,{n})"}, {"y", "1/root(b3,2)"}, {"z", "a1*c2*y/(a4*({n-1}*c1-c2))"}, {"w", "b1*c2*x/(b3*(c1-c2))"}},
                 {{"c1/c2", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, "<alpha*N1+N2, N3, N4>", "c1/c2",
                 CaseKind::Erratum, "w denominator b3*(c1-c2)"},
                {"F1.3.1b(i)", {"a2 = 0", "a3 = 0", "b2 = 0", "c2 = c1", "a4 != 0", "b3 != 0", "c2 != 0", "b1 != 0"},
                 {{"x", "1/root(a4,{n})"}, {"y", "b1*x/b3"}, {"z", "a1*y/({n-2}*a4)"}, {"w", "0"}},
                 {{"1", "1", "0", "0"}, {"1", "0", "1", "0"}, {"0", "0", "0", "1"}}, "<N1+N2, N1+N3, N4>"},
                {"F1.3.1b(ii)", {"a2 = 0", "a3 = 0", "b2 = 0", "c2 = c1", "b1 = 0", "a4 != 0", "b3 != 0", "c2 != 0"},
                 {{"x", "1/root(a4,{n})"}, {"y", "1/root(b3,2)"}, {"z", "a1*y/({n-2}*a4)"}, {"w", "0"}},
                 {{"1", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, "<alpha*N1+N2, N3, N4>", "1"},
                {"F1.3.1c(i)", {"a2 = 0", "a3 = 0", "b2 = 0", "c2 = {n-1}*c1", "a4 != 0", "b3 != 0", "c2 != 0", "a1 != 0"},
                 {{"y", "1/root(b3,2)"}, {"z", "-a1*y/a4"}, {"x", "root({n-1}*z,{n-1})"}, {"w", "-{n-1}*b1*x/({n-2}*b3)"}},
                 {{"1/{n-1}", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "1", "0", "1"}}, "<1/(n-1)*N1+N2, N3, N2+N4>"},
                {"F1.3.1c(ii)", {"a2 = 0", "a3 = 0", "b2 = 0", "c2 = {n-1}*c1", "a1 = 0", "a4 != 0", "b3 != 0", "c2 != 0"},
                 {{"x", "1/root(a4,{n})"}, {"y", "1/root(b3,2)"}, {"z", "0"}, {"w", "-{n-1}*b1*x/({n-2}*b3)"}},
                 {{"1/{n-1}", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, "<alpha*N1+N2, N3, N4>", "1/{n-1}"},
                {"F1.3.2", {"c2 = 0", "a3 = 0", "a2 = {n-1}*a1", "b2 = b1", "a4 != 0", "b3 != 0", "c1 != 0"},
                 {{"x", "1/root(a4,{n})"}, {"y", "1/root(b3,2)"}, {"z", "-a1*y/a4"}, {"w", "-b1*x/b3"}},
                 {{"1", "0", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, "<N1, N3, N4>"},
                {"F1.3.3a", {"b3 = 0", "c2 = 0", "a1 = 0", "a2 = 0", "b1 = 0", "a4 != 0", "a3 != 0", "b2 != 0", "c1 != 0"},
                 {{"y", "1/root(a3,2)"}, {"x", "1/root(a4,{n})"}},
                 {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "1"}}, "<N1, N2, N3+N4>"},
                {"F1.3.3b", {"b3 = 0", "c2 = 0", "a1 = 0", "a2 = 0", "b1 = 0", "a3 = 0", "a4 != 0", "b2 != 0", "c1 != 0"},
                 {{"x", "1/root(a4,{n})"}},
                 {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "0", "1"}}, "<N1, N2, N4>"},
                {"F1.3.4", {"a4 = 0", "b3 = 0", "c2 = 0"}, {},
                 {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}}, "<N1, N2, N3>"},
            };
        default:
            return {
                {"F1.4.1", {}, {}, {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, "<N1, N2, N3, N4>"},
            };
    }
}

std::vector<Spec> f23_specs(FamilyKind f, std::size_t s) {
    bool two = f == FamilyKind::F2;
    // F2 scales by x^(n-1), F3 by x^((n+1)/2).
    const char* x1a = two ? nullptr : "pow(a1,-2/{n+1})";
    const char* x1b = two ? "pow(a2,-1/{n-1})" : "pow(a2,-2/{n+1})";
    const char* x2a = two ? "pow((a2-a1)/a3,1/{n-3})" : "pow((a2-a1)/a3,2/{n-3})";
    const char* x21a = two ? "pow(b2,-1/{n-1})" : "pow(b2,-2/{n+1})";
    const char* x21b = two ? "pow(b1,-1/{n-1})" : "pow(b1,-2/{n+1})";
    const char* x22a = two ? "pow((a1-a2)/a3,1/{n-1})" : "pow((a1-a2)/a3,2/{n-3})";
    const char* fam = two ? "F2" : "F3";
    auto I = [&](const char* tail) { return std::string(fam) + tail; };
    switch (s) {
        case 1: {
            Spec a{I(".1.1a"), {"a2 = 0", "a3 = 0", "a1 != 0"}, {}, {{"1", "0", "0"}}, "<N1>"};
            if (x1a) a.subs.push_back({"x", x1a});
            return {
                a,
                {I(".1.1b"), {"a3 = 0", "a2 != 0"}, {{"x", x1b}}, {{"a1/a2", "1", "0"}}, "<alpha*N1+N2>", "a1/a2"},
                {I(".1.2a"), {"a3 != 0", "a1 != a2"}, {{"x", x2a}, {"w", "-x*a1/a3"}}, {{"0", "1", "1"}}, "<N2+N3>"},
                {I(".1.2b"), {"a1 = a2", "a3 != 0"}, {{"w", "-x*a1/a3"}}, {{"0", "0", "1"}}, "<N3>"},
            };
        }
        case 2: {
            std::vector<Spec> v{
                {I(".2.1a"), {"a1 = a2", "a3 != 0", "b2 != 0", "b1 != b2"}, {{"x", x21a}, {"w", "-x*a1/a3"}},
                 {{"b1/b2", "1", "0"}, {"0", "0", "1"}}, "<alpha*N1+N2, N3>", "b1/b2"},
                {I(".2.1b"), {"b2 = 0", "a1 = a2", "a3 != 0", "b1 != 0"}, {{"x", x21b}, {"w", "-x*a1/a3"}},
                 {{"1", "0", "0"}, {"0", "0", "1"}}, "<N1, N3>"},
                {I(".2.2a"), {"b2 = b1", "a3 != 0", "b1 != 0", "a1 != a2"}, {{"x", x22a}, {"w", "-x*a2/a3"}},
                 {{"1", "1", "0"}, {"1", "0", "1"}}, "<N1+N2, N1+N3>", nullptr, CaseKind::Literal,
                 two ? "literal root exponent 1/(n-1) should be 1/(n-3)" : ""},
            };
            if (two)
                v.push_back({I(".2.2a-corr"), {"b2 = b1", "a3 != 0", "b1 != 0", "a1 != a2"},
                             {{"x", "pow((a1-a2)/a3,1/{n-3})"}, {"w", "-x*a2/a3"}}, {{"1", "1", "0"}, {"1", "0", "1"}},
                             "<N1+N2, N1+N3>", nullptr, CaseKind::Erratum, "root exponent 1/(n-3)"});
            v.push_back({I(".2.2b"), {"b2 = b1", "a1 = a2", "a3 != 0", "b1 != 0"}, {},
                         {{"1", "1", "0"}, {"0", "0", "1"}}, "<alpha*N1+N2, N3>", "1"});
            v.push_back({I(".2.3"), {"a3 = 0"}, {}, {{"1", "0", "0"}, {"0", "1", "0"}}, "<N1, N2>"});
            return v;
        }
        default:
            return {{I(".3.1"), {}, {}, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}, "<N1, N2, N3>"}};
    }
}

Representative rep(const std::string& name, const std::vector<std::vector<std::string>>& rows, std::size_t n) {
    Representative r;
    r.name = name;
    for (const auto& row : rows) {
        std::vector<RadicalExpr> v;
        for (const auto& e : row) v.push_back(RadicalExpr::parse(fill(e, n)));
        r.rows.push_back(std::move(v));
    }
    return r;
}

}  // namespace

std::vector<ReductionCase> reduction_cases(FamilyKind f, std::size_t n) {
    if (f != FamilyKind::F1 && f != FamilyKind::F2 && f != FamilyKind::F3) throw InvalidFamily("reduction cases exist for F1, F2, F3");
    if (n < 5) throw InvalidFamily("reduction cases need n >= 5");
    std::vector<ReductionCase> out;
    std::size_t smax = h2_dim(f);
    for (std::size_t s = 1; s <= smax; ++s) {
        auto specs = f == FamilyKind::F1 ? f1_specs(s) : f23_specs(f, s);
        for (const auto& sp : specs) out.push_back(build(f, n, s, sp));
    }
    return out;
}

std::vector<OrbitList> orbit_lists(FamilyKind f, std::size_t n) {
    if (f != FamilyKind::F1 && f != FamilyKind::F2 && f != FamilyKind::F3) throw InvalidFamily("orbit lists exist for F1, F2, F3");
    std::vector<OrbitList> out;
    if (f == FamilyKind::F1) {
        out.push_back({f, n, 1, {
            rep("<N1>", {{"1", "0", "0", "0"}}, n),
            rep("<alpha*N1+N2>", {{"alpha", "1", "0", "0"}}, n),
            rep("<N3>", {{"0", "0", "1", "0"}}, n),
            rep("<N1+N3>", {{"1", "0", "1", "0"}}, n),
            rep("<N4>", {{"0", "0", "0", "1"}}, n),
            rep("<N2+N4>", {{"0", "1", "0", "1"}}, n),
            rep("<N3+N4>", {{"0", "0", "1", "1"}}, n),
        }});
        out.push_back({f, n, 2, {
            rep("<N1, N2>", {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}}, n),
            rep("<N1, N3>", {{"1", "0", "0", "0"}, {"0", "0", "1", "0"}}, n),
            rep("<N1, N3+N4>", {{"1", "0", "0", "0"}, {"0", "0", "1", "1"}}, n),
            rep("<N1, N4>", {{"1", "0", "0", "0"}, {"0", "0", "0", "1"}}, n),
            rep("<1/(n-1)*N1+N2, N2+N4>", {{"1/{n-1}", "1", "0", "0"}, {"0", "1", "0", "1"}}, n),
            rep("<N1+N2, N1+N3>", {{"1", "1", "0", "0"}, {"1", "0", "1", "0"}}, n),
            rep("<alpha*N1+N2, N3>", {{"alpha", "1", "0", "0"}, {"0", "0", "1", "0"}}, n),
            rep("<alpha*N1+N2, N3+N4>", {{"alpha", "1", "0", "0"}, {"0", "0", "1", "1"}}, n),
            rep("<alpha*N1+N2, N4>", {{"alpha", "1", "0", "0"}, {"0", "0", "0", "1"}}, n),
            rep("<N2+N3, N2+N4>", {{"0", "1", "1", "0"}, {"0", "1", "0", "1"}}, n),
            rep("<N2+N3, N4>", {{"0", "1", "1", "0"}, {"0", "0", "0", "1"}}, n),
            rep("<N3, N2+N4>", {{"0", "0", "1", "0"}, {"0", "1", "0", "1"}}, n),
            rep("<N3, N4>", {{"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, n),
        }});
        out.push_back({f, n, 3, {
            rep("<N1, N2, N3>", {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}}, n),
            rep("<N1, N2, N3+N4>", {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "1"}}, n),
            rep("<N1, N2, N4>", {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "0", "1"}}, n),
            rep("<N1+N2, N1+N3, N4>", {{"1", "1", "0", "0"}, {"1", "0", "1", "0"}, {"0", "0", "0", "1"}}, n),
            rep("<1/(n-1)*N1+N2, N3, N2+N4>", {{"1/{n-1}", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "1", "0", "1"}}, n),
            rep("<alpha*N1+N2, N3, N4>", {{"alpha", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, n),
            rep("<N1, N3, N4>", {{"1", "0", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, n),
        }});
        out.push_back({f, n, 4, {rep("<N1, N2, N3, N4>", {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, n)}});
        return out;
    }
    out.push_back({f, n, 1, {
        rep("<N1>", {{"1", "0", "0"}}, n),
        rep("<alpha*N1+N2>", {{"alpha", "1", "0"}}, n),
        rep("<N2+N3>", {{"0", "1", "1"}}, n),
        rep("<N3>", {{"0", "0", "1"}}, n),
    }});
    out.push_back({f, n, 2, {
        rep("<N1, N2>", {{"1", "0", "0"}, {"0", "1", "0"}}, n),
        rep("<N1, N3>", {{"1", "0", "0"}, {"0", "0", "1"}}, n),
        rep("<N1+N2, N1+N3>", {{"1", "1", "0"}, {"1", "0", "1"}}, n),
        rep("<alpha*N1+N2, N3>", {{"alpha", "1", "0"}, {"0", "0", "1"}}, n),
    }});
    out.push_back({f, n, 3, {rep("<N1, N2, N3>", {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}, n)}});
    return out;
}

const Representative* find_representative(const std::vector<OrbitList>& lists, std::size_t s, const std::string& name) {
    for (const auto& l : lists)
        if (l.s == s)
            for (const auto& r : l.reps)
                if (r.name == name) return &r;
    return nullptr;
}

FamilyId ExtensionRow::result(std::size_t n, const std::optional<Rational>& alpha) const {
    FamilyId id;
    id.kind = result_kind;
    id.mu = result_mu;
    id.n = n + s;
    if (result_has_alpha) id.alpha = alpha.value_or(fixed_alpha.value_or(0));
    return id;
}

bool ExtensionRow::conflict() const {
    std::string mine = result_kind == FamilyKind::MU ? "MU" + std::to_string(result_mu) : kind_name(result_kind);
    return mine != claimed;
}

std::vector<ExtensionRow> extension_theorem_table(FamilyKind f, std::size_t n) {
    using K = FamilyKind;
    auto mu = [](std::size_t s, const char* r, int k, const char* claim = nullptr) {
        ExtensionRow e;
        e.s = s;
        e.rep = r;
        e.result_kind = K::MU;
        e.result_mu = k;
        e.claimed = claim ? claim : "MU" + std::to_string(k);
        e.result_has_alpha = mu_has_alpha(k);
        return e;
    };
    auto fam = [](std::size_t s, const char* r, K k) {
        ExtensionRow e;
        e.s = s;
        e.rep = r;
        e.result_kind = k;
        e.claimed = kind_name(k);
        return e;
    };
    std::vector<ExtensionRow> t;
    Rational inv_n1(1, long(n - 1)), inv_n2(1, long(n - 2));
    if (f == K::F1) {
        t = {mu(1, "<N1>", 1), mu(1, "<alpha*N1+N2>", 2), mu(1, "<N3>", 3), mu(1, "<N1+N3>", 4),
             fam(1, "<N4>", K::F1), fam(1, "<N2+N4>", K::F2), fam(1, "<N3+N4>", K::F3),
             mu(2, "<N1, N2>", 5), mu(2, "<N1, N3>", 6), mu(2, "<N1, N3+N4>", 7), mu(2, "<N1, N4>", 1),
             mu(2, "<1/(n-1)*N1+N2, N2+N4>", 8), mu(2, "<N1+N2, N1+N3>", 9), mu(2, "<alpha*N1+N2, N3>", 10),
             mu(2, "<alpha*N1+N2, N3+N4>", 11), mu(2, "<alpha*N1+N2, N4>", 2), mu(2, "<N2+N3, N2+N4>", 12),
             mu(2, "<N2+N3, N4>", 4), mu(2, "<N3, N2+N4>", 13), mu(2, "<N3, N4>", 3),
             mu(3, "<N1, N2, N3>", 14), mu(3, "<N1, N2, N3+N4>", 15), mu(3, "<N1, N2, N4>", 5),
             mu(3, "<N1+N2, N1+N3, N4>", 9), mu(3, "<1/(n-1)*N1+N2, N3, N2+N4>", 16), mu(3, "<alpha*N1+N2, N3, N4>", 10),
             mu(3, "<N1, N3, N4>", 6), mu(4, "<N1, N2, N3, N4>", 14)};
        for (auto& e : t) {
            if (e.rep == "<alpha*N1+N2, N3>") e.excluded_alpha = {1};
            if (e.rep == "<alpha*N1+N2, N4>") e.excluded_alpha = {inv_n1};
            if (e.rep == "<alpha*N1+N2, N3, N4>") e.excluded_alpha = {1, inv_n1};
        }
        return t;
    }
    if (f == K::F2) {
        ExtensionRow m8 = mu(1, "<alpha*N1+N2>", 8);
        m8.fixed_alpha = inv_n2;
        m8.note = "alpha = 1/(n-2)";
        ExtensionRow m13 = mu(1, "<N3>", 13, "MU16");
        m13.note = "dim A^3 differs from MU16; extension equals MU13 up to a permutation";
        ExtensionRow m16 = mu(2, "<alpha*N1+N2, N3>", 16);
        m16.fixed_alpha = inv_n2;
        m16.note = "alpha = 1/(n-2)";
        t = {mu(1, "<N1>", 1), mu(1, "<alpha*N1+N2>", 2), m8, mu(1, "<N2+N3>", 12), m13,
             mu(2, "<N1, N2>", 5), mu(2, "<N1, N3>", 6), mu(2, "<N1+N2, N1+N3>", 9), mu(2, "<alpha*N1+N2, N3>", 10), m16,
             mu(3, "<N1, N2, N3>", 14)};
        for (auto& e : t)
            if (e.rep.rfind("<alpha", 0) == 0 && !e.fixed_alpha) e.excluded_alpha = {inv_n2};
        for (auto& e : t)
            if (e.rep == "<alpha*N1+N2, N3>" && !e.fixed_alpha) e.excluded_alpha.push_back(1);
        return t;
    }
    if (f == K::F3) {
        t = {mu(1, "<N1>", 7), mu(1, "<alpha*N1+N2>", 11), mu(1, "<N2+N3>", 12), mu(1, "<N3>", 3),
             mu(2, "<N1, N2>", 15), mu(2, "<N1, N3>", 6), mu(2, "<N1+N2, N1+N3>", 9), mu(2, "<alpha*N1+N2, N3>", 10),
             mu(3, "<N1, N2, N3>", 14)};
        for (auto& e : t)
            if (e.rep == "<alpha*N1+N2, N3>") e.excluded_alpha = {1};
        return t;
    }
    throw InvalidFamily("extension table exists for F1, F2, F3");
}

std::vector<BilinearForm> representative_forms(FamilyKind f, std::size_t n, const Representative& r,
                                               const std::optional<Rational>& alpha) {
    auto nab = nabla_basis(f, n);
    std::map<std::string, Rational> env;
    if (alpha) env["alpha"] = *alpha;
    std::vector<BilinearForm> out;
    for (const auto& row : r.rows) {
        Vec c;
        for (const auto& e : row) {
            auto v = e.eval_exact(env);
            if (!v) throw std::invalid_argument("representative coordinate is not rational: " + e.print());
            c.push_back(*v);
        }
        out.push_back(combine(nab, c));
    }
    return out;
}

std::string print_zcase(const std::vector<ReductionCase>& cases) {
    std::ostringstream out;
    out << "zcase 1\n";
    for (const auto& c : cases) {
        out << "case " << kind_name(c.family) << " " << c.n << " | " << c.s << " | " << c.id << " | "
            << (c.kind == CaseKind::Literal ? "literal" : "erratum") << " | ";
        for (std::size_t i = 0; i < c.constraints.size(); ++i) out << (i ? "; " : "") << c.constraints[i];
        out << " | ";
        for (std::size_t i = 0; i < c.substitutions.size(); ++i)
            out << (i ? "; " : "") << c.substitutions[i].first << " = " << c.substitutions[i].second.print();
        out << " | ";
        for (std::size_t i = 0; i < c.target.size(); ++i) {
            out << (i ? "; " : "");
            for (std::size_t j = 0; j < c.target[i].size(); ++j) out << (j ? ", " : "") << c.target[i][j].print();
        }
        out << " | " << c.orbit << " | " << (c.alpha ? c.alpha->print() : "-") << " | " << c.note << "\n";
    }
    return out.str();
}

std::vector<ReductionCase> parse_zcase(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t ln = 0;
    bool header = false;
    std::vector<ReductionCase> out;
    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (!header) {
            if (line != "zcase 1") throw ParseError(ln, "expected header 'zcase 1'");
            header = true;
            continue;
        }
        if (line.rfind("case ", 0) != 0) throw ParseError(ln, "expected 'case' line");
        // '|' never occurs inside expressions, so a flat split is safe here.
        std::vector<std::string> f;
        {
            std::string cur;
            for (char ch : line.substr(5)) {
                if (ch == '|') {
                    f.push_back(trim(cur));
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            f.push_back(trim(cur));
        }
        if (f.size() != 10) throw ParseError(ln, "expected 10 '|'-separated fields, got " + std::to_string(f.size()));
        try {
            ReductionCase c;
            std::istringstream head(f[0]);
            std::string fam;
            std::size_t n = 0;
            if (!(head >> fam >> n)) throw ParseError(ln, "bad family field");
            auto k = parse_kind(fam);
            if (!k || *k == FamilyKind::F0) throw ParseError(ln, "family must be F1, F2 or F3");
            c.family = *k;
            c.n = n;
            c.s = std::stoul(f[1]);
            c.id = f[2];
            if (f[3] == "literal")
                c.kind = CaseKind::Literal;
            else if (f[3] == "erratum")
                c.kind = CaseKind::Erratum;
            else
                throw ParseError(ln, "kind must be literal or erratum");
            if (!f[4].empty())
                for (const auto& s : split_top(f[4], ';')) c.constraints.push_back(s);
            if (!f[5].empty())
                for (const auto& s : split_top(f[5], ';')) {
                    auto eq = s.find('=');
                    if (eq == std::string::npos) throw ParseError(ln, "substitution needs '='");
                    c.substitutions.emplace_back(trim(s.substr(0, eq)), RadicalExpr::parse(s.substr(eq + 1)));
                }
            for (const auto& row : split_top(f[6], ';')) {
                std::vector<RadicalExpr> r;
                for (const auto& e : split_top(row, ',')) r.push_back(RadicalExpr::parse(e));
                c.target.push_back(std::move(r));
            }
            c.orbit = f[7];
            if (f[8] != "-") c.alpha = RadicalExpr::parse(f[8]);
            c.note = f[9];
            out.push_back(std::move(c));
        } catch (const ExprParseError& e) {
            throw ParseError(ln, e.what());
        } catch (const std::logic_error& e) {
            throw ParseError(ln, e.what());
        }
    }
    if (!header) throw ParseError(ln, "missing header 'zcase 1'");
    return out;
}

}  // namespace zex
