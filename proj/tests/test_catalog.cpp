#include "oracle.hpp"
#include "zex/catalog.hpp"

#include <doctest.h>

#include <algorithm>

using namespace zex;

namespace {

BilinearForm D(std::size_t n, std::size_t i, std::size_t j) { return BilinearForm::delta(n, i - 1, j - 1); }

Vec e(std::size_t n, std::size_t i) { return unit_vector(n, i - 1); }

Vec prod(const Algebra& a, std::size_t i, std::size_t j) { return a.basis_product(i - 1, j - 1); }

Vec vec(std::size_t n, std::initializer_list<std::pair<std::size_t, Rational>> entries) {
    Vec v = zero_vector(n);
    for (const auto& [i, c] : entries) v[i - 1] = c;
    return v;
}

const std::vector<FamilyKind> kFiliform{FamilyKind::F1, FamilyKind::F2, FamilyKind::F3};

}  // namespace

TEST_CASE("binomial coefficients") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(3, 5) == 0);
    for (long i = 0; i <= 12; ++i)
        for (long j = 0; j <= i; ++j) CHECK(binomial(i, j) == oracle::binom(i, j));
}

TEST_CASE("F0 table at n = 5") {
    Algebra a = make_f(0, 5);
    CHECK(prod(a, 1, 1) == e(5, 2));
    CHECK(prod(a, 1, 2) == e(5, 3));
    CHECK(prod(a, 2, 1) == vec(5, {{3, 2}}));
    CHECK(prod(a, 2, 2) == vec(5, {{4, 3}}));
    CHECK(prod(a, 1, 3) == e(5, 4));
    CHECK(prod(a, 3, 1) == vec(5, {{4, 3}}));
    for (std::size_t i = 1; i <= 4; ++i) CHECK(prod(a, i, 5 - i) == vec(5, {{5, oracle::binom(4, 5 - i)}}));
    CHECK(is_zero(prod(a, 1, 5)));
}

TEST_CASE("appendix examples") {
    Algebra m2 = make_mu(2, 7, make_rational(1, 2));
    CHECK(prod(m2, 1, 7) == vec(7, {{6, make_rational(1, 2)}}));
    CHECK(prod(m2, 7, 1) == e(7, 6));
    CHECK(prod(m2, 2, 3) == vec(7, {{5, oracle::binom(4, 3)}}));
    CHECK(is_zero(prod(m2, 3, 3)));
    CHECK(m2.param("alpha") == make_rational(1, 2));

    Algebra m16 = make_mu(16, 8);
    CHECK(prod(m16, 1, 8) == vec(8, {{7, make_rational(1, 4)}}));
    CHECK(prod(m16, 8, 1) == vec(8, {{5, 1}, {7, 1}}));
    CHECK(prod(m16, 8, 8) == e(8, 6));
}

TEST_CASE("invalid family ids") {
    CHECK_THROWS_AS(make_mu(2, 7), InvalidFamily);
    CHECK_THROWS_AS(make_mu(1, 7, Rational(1)), InvalidFamily);
    CHECK_THROWS_AS(make_mu(17, 7), InvalidFamily);
    CHECK_THROWS_AS(make_f(1, 4), InvalidFamily);
    CHECK_THROWS_AS(make_f(0, 0), InvalidFamily);
    CHECK(mu_has_alpha(2));
    CHECK(mu_has_alpha(10));
    CHECK(mu_has_alpha(11));
    CHECK_FALSE(mu_has_alpha(3));
}

TEST_CASE("family id text") {
    FamilyId a = FamilyId::parse("MU2 7 1/2");
    CHECK(a.kind == FamilyKind::MU);
    CHECK(a.mu == 2);
    CHECK(a.n == 7);
    CHECK(a.alpha == make_rational(1, 2));
    CHECK(FamilyId::parse(a.label()) == a);
    CHECK(FamilyId::parse("F3 6") == FamilyId{FamilyKind::F3, 0, 6, std::nullopt});
    CHECK_THROWS_AS(FamilyId::parse("G2 6"), InvalidFamily);
    CHECK_THROWS_AS(FamilyId::parse("F1"), InvalidFamily);
    CHECK_THROWS_AS(FamilyId::parse("F1 x"), InvalidFamily);
    CHECK_THROWS_AS(FamilyId::parse("F1 6 1/2 extra"), InvalidFamily);
}

TEST_CASE("catalog algebras are Zinbiel and have the expected shape") {
    for (std::size_t n = 5; n <= 10; ++n) {
        CHECK(is_null_filiform(make_f(0, n)));
        for (int k = 1; k <= 3; ++k) {
            Algebra a = make_f(k, n);
            CHECK(check_zinbiel(a).empty());
            CHECK(is_filiform(a));
        }
        std::size_t m = n + 1;
        for (int k = 1; k <= 16; ++k) {
            std::vector<std::optional<Rational>> alphas{std::nullopt};
            if (mu_has_alpha(k)) alphas = {Rational(0), Rational(1), Rational(-3), make_rational(1, long(m) - 3)};
            for (const auto& al : alphas) {
                Algebra a = make_mu(k, m, al);
                INFO(a.label());
                CHECK(check_zinbiel(a).empty());
                CHECK(nilpotency_index(a).has_value());
            }
        }
    }
}

TEST_CASE("nabla basis") {
    auto f1 = nabla_basis(FamilyKind::F1, 6);
    REQUIRE(f1.size() == 4);
    BilinearForm n4(6);
    for (std::size_t j = 1; j <= 5; ++j) n4 = n4 + oracle::binom(5, j - 1) * D(6, j, 6 - j);
    CHECK(f1[3] == n4);
    CHECK(f1[0] == D(6, 1, 6));
    auto f2 = nabla_basis(FamilyKind::F2, 6);
    CHECK(f2 == std::vector<BilinearForm>{D(6, 1, 6), D(6, 6, 1), D(6, 6, 6)});
    CHECK(nabla_basis(FamilyKind::F3, 6).size() == 3);
    for (std::size_t n = 5; n <= 10; ++n)
        for (auto f : kFiliform) {
            Algebra a = make(FamilyId{f, 0, n, std::nullopt});
            auto h = cohomology(a);
            std::vector<Vec> rows;
            for (const auto& b : nabla_basis(f, n)) {
                REQUIRE(is_cocycle(a, b));
                rows.push_back(h.project(b));
            }
            CHECK(rank(Matrix::from_rows(rows, h.h2_dim())) == h2_dim(f));
        }
}

TEST_CASE("orbit list and case counts") {
    auto sizes = [](FamilyKind f) {
        std::vector<std::size_t> out;
        for (const auto& l : orbit_lists(f, 7)) out.push_back(l.reps.size());
        return out;
    };
    CHECK(sizes(FamilyKind::F1) == std::vector<std::size_t>{7, 13, 7, 1});
    CHECK(sizes(FamilyKind::F2) == std::vector<std::size_t>{4, 4, 1});
    CHECK(sizes(FamilyKind::F3) == std::vector<std::size_t>{4, 4, 1});
    auto one_dim = [](FamilyKind f) {
        std::size_t c = 0;
        for (const auto& r : reduction_cases(f, 7))
            if (r.s == 1 && r.kind == CaseKind::Literal) ++c;
        return c;
    };
    CHECK(one_dim(FamilyKind::F1) == 7);
    CHECK(one_dim(FamilyKind::F2) == 4);
    CHECK(one_dim(FamilyKind::F3) == 4);
}

TEST_CASE("case records") {
    auto f2 = reduction_cases(FamilyKind::F2, 7);
    auto it = std::find_if(f2.begin(), f2.end(), [](const ReductionCase& c) { return c.id == "F2.1.1a"; });
    REQUIRE(it != f2.end());
    CHECK(it->constraints == std::vector<std::string>{"a2 = 0", "a3 = 0", "a1 != 0"});
    CHECK(it->substitutions.empty());
    CHECK(it->orbit == "<N1>");

    auto f3 = reduction_cases(FamilyKind::F3, 9);
    auto c = std::find_if(f3.begin(), f3.end(), [](const ReductionCase& r) { return r.id == "F3.1.2a"; });
    REQUIRE(c != f3.end());
    REQUIRE(c->substitutions.size() == 2);
    CHECK(c->substitutions[0].first == "x");
    // exponent 2/(n-3) at n = 9
    CHECK(c->substitutions[0].second == RadicalExpr::parse("pow((a2-a1)/a3,1/3)"));
    CHECK(c->substitutions[1].second == RadicalExpr::parse("-x*a1/a3"));
    CHECK(c->orbit == "<N2+N3>");
}

TEST_CASE("every case lands in a listed orbit with independent target rows") {
    for (std::size_t n = 5; n <= 10; ++n)
        for (auto f : kFiliform) {
            auto lists = orbit_lists(f, n);
            for (const auto& c : reduction_cases(f, n)) {
                INFO(c.id << " n=" << n);
                const Representative* r = find_representative(lists, c.s, c.orbit);
                REQUIRE(r != nullptr);
                CHECK(r->rows.size() == c.s);
                CHECK(c.target.size() == c.s);
                std::map<std::string, Rational> env{{"alpha", make_rational(2, 7)}};
                for (std::size_t t = 0; t < 4; ++t)
                    for (std::size_t i = 0; i < 4; ++i) env[coeff_var(t, i)] = make_rational(long(5 * t + i + 2), long(i + 3));
                std::vector<Vec> rows;
                for (const auto& row : c.target) {
                    Vec v;
                    for (const auto& x : row) {
                        auto q = x.eval_exact(env);
                        REQUIRE(q.has_value());
                        v.push_back(*q);
                    }
                    rows.push_back(v);
                }
                CHECK(rank(Matrix::from_rows(rows, h2_dim(f))) == c.s);
            }
        }
}

TEST_CASE("representative forms are cocycles with independent classes") {
    for (std::size_t n = 5; n <= 8; ++n)
        for (auto f : kFiliform) {
            Algebra a = make(FamilyId{f, 0, n, std::nullopt});
            auto h = cohomology(a);
            for (const auto& l : orbit_lists(f, n))
                for (const auto& r : l.reps) {
                    INFO(r.name);
                    std::optional<Rational> al;
                    if (r.parametric()) al = make_rational(3, 5);
                    auto forms = representative_forms(f, n, r, al);
                    CHECK(forms.size() == l.s);
                    std::vector<Vec> rows;
                    for (const auto& x : forms) {
                        CHECK(is_cocycle(a, x));
                        rows.push_back(h.project(x));
                    }
                    CHECK(rank(Matrix::from_rows(rows, h.h2_dim())) == l.s);
                }
        }
}

TEST_CASE("catalog representatives for labeled algebras") {
    Algebra a = make_f(2, 7);
    auto reps = catalog_h2_reps(a);
    REQUIRE(reps.has_value());
    CHECK(*reps == nabla_basis(FamilyKind::F2, 7));
    Algebra b = a;
    b.set(0, 0, 1, 5);
    CHECK_FALSE(catalog_h2_reps(b).has_value());
    CHECK_FALSE(catalog_h2_reps(make_mu(3, 7)).has_value());
}

TEST_CASE("extension table entries") {
    for (auto f : kFiliform) {
        auto rows = extension_theorem_table(f, 7);
        CHECK_FALSE(rows.empty());
        auto lists = orbit_lists(f, 7);
        for (const auto& r : rows) CHECK(find_representative(lists, r.s, r.rep) != nullptr);
    }
    auto f1 = extension_theorem_table(FamilyKind::F1, 6);
    auto n4 = std::find_if(f1.begin(), f1.end(), [](const ExtensionRow& r) { return r.s == 1 && r.rep == "<N4>"; });
    REQUIRE(n4 != f1.end());
    CHECK(n4->result(6, std::nullopt) == FamilyId{FamilyKind::F1, 0, 7, std::nullopt});
    auto all = std::find_if(f1.begin(), f1.end(), [](const ExtensionRow& r) { return r.s == 4; });
    REQUIRE(all != f1.end());
    CHECK(all->result(6, std::nullopt) == FamilyId{FamilyKind::MU, 14, 10, std::nullopt});
}

TEST_CASE("zcase round trip") {
    for (auto f : kFiliform) {
        auto cases = reduction_cases(f, 8);
        std::string text = print_zcase(cases);
        auto back = parse_zcase(text);
        REQUIRE(back.size() == cases.size());
        for (std::size_t i = 0; i < cases.size(); ++i) {
            CHECK(back[i].id == cases[i].id);
            CHECK(back[i].family == cases[i].family);
            CHECK(back[i].n == cases[i].n);
            CHECK(back[i].s == cases[i].s);
            CHECK(back[i].kind == cases[i].kind);
            CHECK(back[i].constraints == cases[i].constraints);
            CHECK(back[i].substitutions == cases[i].substitutions);
            CHECK(back[i].target == cases[i].target);
            CHECK(back[i].orbit == cases[i].orbit);
        }
        CHECK(print_zcase(back) == text);
    }
    CHECK_THROWS_AS(parse_zcase("zcase 2\n"), ParseError);
    CHECK_THROWS_AS(parse_zcase("zcase 1\ncase F1 7 | 1 | x\n"), ParseError);
}
