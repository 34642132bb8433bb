#include "oracle.hpp"
#include "zex/catalog.hpp"
#include "zex/cocycles.hpp"

#include <doctest.h>

using namespace zex;

namespace {

// 1-based Δ_{i,j}
BilinearForm D(std::size_t n, std::size_t i, std::size_t j) { return BilinearForm::delta(n, i - 1, j - 1); }

Vec e(std::size_t n, std::size_t i) { return unit_vector(n, i - 1); }

bool satisfies_identity(const Algebra& a, const BilinearForm& f) {
    std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
                Vec s = product(a, ej, ek), t = product(a, ek, ej);
                for (std::size_t q = 0; q < n; ++q) s[q] += t[q];
                if (f(product(a, ei, ej), ek) != f(ei, s)) return false;
            }
    return true;
}

Subspace span_forms(const std::vector<BilinearForm>& fs, std::size_t n) {
    std::vector<Vec> v;
    for (const auto& f : fs) v.push_back(f.flat());
    return Subspace::span(v, n * n);
}

}  // namespace

TEST_CASE("cocycle space examples") {
    CHECK(cocycle_space(make_f(1, 5)).dim() == 7);
    CHECK(cocycle_space(make_f(2, 5)).dim() == 6);
    CHECK(cocycle_space(make_f(3, 5)).dim() == 6);
    CHECK(cocycle_space(Algebra(2)).dim() == 4);
}

TEST_CASE("cocycle and coboundary dims agree with the direct system") {
    for (std::size_t n = 5; n <= 8; ++n)
        for (int k = 0; k <= 3; ++k) {
            Algebra a = make_f(k, n);
            INFO(a.label());
            CHECK(cocycle_space(a).dim() == oracle::z2_dim(a));
            CHECK(coboundary_space(a).dim() == oracle::b2_dim(a));
        }
    for (int m = 1; m <= 16; ++m) {
        Algebra a = mu_has_alpha(m) ? make_mu(m, 7, make_rational(1, 3)) : make_mu(m, 7);
        INFO(a.label());
        CHECK(cocycle_space(a).dim() == oracle::z2_dim(a));
        CHECK(coboundary_space(a).dim() == oracle::b2_dim(a));
    }
}

TEST_CASE("cocycle basis satisfies the identity") {
    for (std::size_t n = 5; n <= 7; ++n)
        for (int k = 0; k <= 3; ++k) {
            Algebra a = make_f(k, n);
            Subspace z = cocycle_space(a);
            for (const auto& v : z.basis()) CHECK(satisfies_identity(a, BilinearForm::from_flat(v, n)));
        }
}

TEST_CASE("coboundary examples") {
    Algebra a = make_f(1, 5);
    CHECK(coboundary_of(a, e(5, 2)) == D(5, 1, 1));
    CHECK(coboundary_of(a, zero_vector(5)).is_zero());
    CHECK(coboundary_of(a, e(5, 3)) == D(5, 1, 2) + Rational(2) * D(5, 2, 1));
    CHECK(coboundary_space(a).dim() == 3);
    CHECK(coboundary_space(make_f(2, 5)).dim() == 3);
    CHECK(coboundary_space(Algebra(3)).dim() == 0);
}

TEST_CASE("B2 is contained in Z2") {
    for (std::size_t n = 5; n <= 10; ++n)
        for (int k = 0; k <= 3; ++k) {
            Algebra a = make_f(k, n);
            CHECK(cocycle_space(a).contains(coboundary_space(a)));
        }
}

TEST_CASE("H2 dimension for the families") {
    for (std::size_t n = 5; n <= 10; ++n) {
        INFO("n = " << n);
        Algebra f1 = make_f(1, n);
        CHECK(cocycle_space(f1).dim() == n + 2);
        CHECK(coboundary_space(f1).dim() == n - 2);
        CHECK(cohomology(f1).h2_dim() == 4);
        for (int k = 2; k <= 3; ++k) {
            Algebra f = make_f(k, n);
            CHECK(cocycle_space(f).dim() == n + 1);
            CHECK(coboundary_space(f).dim() == n - 2);
            CHECK(cohomology(f).h2_dim() == 3);
        }
    }
    CHECK(cohomology(Algebra(1)).h2_dim() == 1);
}

TEST_CASE("listed bases span the computed spaces") {
    for (std::size_t n = 5; n <= 10; ++n)
        for (auto f : {FamilyKind::F1, FamilyKind::F2, FamilyKind::F3}) {
            Algebra a = make(FamilyId{f, 0, n, std::nullopt});
            INFO(a.label());
            CHECK(span_forms(listed_z2_basis(f, n), n) == cocycle_space(a));
            CHECK(span_forms(listed_b2_basis(f, n), n) == coboundary_space(a));
        }
}

TEST_CASE("F1 representatives at n = 7") {
    const std::size_t n = 7;
    Algebra a = make_f(1, n);
    auto h = cohomology(a);
    REQUIRE(h.h2_dim() == 4);
    BilinearForm n4(n);
    for (std::size_t i = 1; i <= 6; ++i) n4 = n4 + oracle::binom(6, i - 1) * D(n, i, 7 - i);
    std::vector<BilinearForm> expected{D(n, 1, 7), D(n, 7, 1), D(n, 7, 7), n4};
    Subspace b2 = coboundary_space(a);
    CHECK(sum(span_forms(h.h2_reps, n), b2) == sum(span_forms(expected, n), b2));
    CHECK(cohomology(make_f(2, n)).h2_dim() == 3);
    CHECK(cohomology(make_f(3, n)).h2_dim() == 3);
}

TEST_CASE("projection is linear, vanishes on B2 and picks out representatives") {
    for (std::size_t n = 5; n <= 8; ++n)
        for (int k = 0; k <= 3; ++k) {
            Algebra a = make_f(k, n);
            auto h = cohomology(a);
            for (std::size_t i = 0; i < h.h2_dim(); ++i) CHECK(h.project(h.h2_reps[i]) == unit_vector(h.h2_dim(), i));
            for (const auto& b : h.b2.basis()) CHECK(is_zero(h.project(b)));
            auto z = h.z2.basis();
            for (std::size_t i = 0; i + 1 < z.size(); ++i) {
                Vec w = z[i];
                for (std::size_t q = 0; q < w.size(); ++q) w[q] = 3 * z[i][q] - make_rational(1, 2) * z[i + 1][q];
                Vec pi = h.project(z[i]), pj = h.project(z[i + 1]), pw = h.project(w);
                for (std::size_t q = 0; q < pw.size(); ++q) CHECK(pw[q] == 3 * pi[q] - make_rational(1, 2) * pj[q]);
            }
            // vanishes exactly on B²: a cocycle outside B² has a nonzero projection
            for (const auto& r : h.h2_reps) CHECK_FALSE(is_zero(h.project(r)));
        }
}

TEST_CASE("canonical representatives for unlabeled algebras") {
    Algebra a = make_f(2, 6);
    a.set_label("");
    auto h = cohomology(a);
    CHECK_FALSE(h.listed_reps);
    CHECK(h.h2_dim() == 3);
    for (const auto& r : h.h2_reps) {
        CHECK(is_cocycle(a, r));
        CHECK_FALSE(h.b2.contains(r.flat()));
    }
}

TEST_CASE("cocycle annihilator examples") {
    Algebra a = make_f(1, 5);
    CHECK(cocycle_annihilator(a, {D(5, 1, 5)}) == Subspace::span({e(5, 2), e(5, 3), e(5, 4)}, 5));
    CHECK(cocycle_annihilator(a, {BilinearForm(5)}) == Subspace::whole(5));
    BilinearForm n4(5);
    for (std::size_t j = 1; j <= 4; ++j) n4 = n4 + oracle::binom(4, j - 1) * D(5, j, 5 - j);
    CHECK(cocycle_annihilator(a, {n4}) == Subspace::span({e(5, 5)}, 5));
    CHECK(cocycle_annihilator(a, {D(5, 1, 5), n4}) == Subspace(5));
    CHECK_THROWS_AS(cocycle_annihilator(a, {D(5, 2, 2)}), NotCocycle);
}

TEST_CASE("cocycle violation reports a triple") {
    Algebra a = make_f(0, 4);
    auto v = cocycle_violation(a, D(4, 2, 1));
    REQUIRE(v.has_value());
    Vec x = unit_vector(4, (*v)[0]), y = unit_vector(4, (*v)[1]), z = unit_vector(4, (*v)[2]);
    Vec s = product(a, y, z), t = product(a, z, y);
    for (std::size_t q = 0; q < 4; ++q) s[q] += t[q];
    BilinearForm f = D(4, 2, 1);
    CHECK(f(product(a, x, y), z) != f(x, s));
    CHECK_FALSE(cocycle_violation(a, coboundary_of(a, e(4, 4))).has_value());
    CHECK_FALSE(satisfies_identity(a, D(4, 1, 4)));
    CHECK(cocycle_violation(a, D(4, 1, 4)).has_value());
}

TEST_CASE("form text round trip") {
    std::vector<NamedForm> fs{{"t1", D(5, 1, 5) + make_rational(-2, 3) * D(5, 5, 1)}, {"t2", D(5, 5, 5)}};
    std::string text = print_forms(fs);
    auto back = parse_forms(text, 5);
    REQUIRE(back.size() == 2);
    CHECK(back[0].name == "t1");
    CHECK(back[0].form == fs[0].form);
    CHECK(back[1].form == fs[1].form);
    CHECK(print_forms(back) == text);
    auto c = parse_forms("# header\n\nform a : 1 1 2 1/2 2 1\n", 3);
    REQUIRE(c.size() == 1);
    CHECK(c[0].form == D(3, 1, 2) + make_rational(1, 2) * D(3, 2, 1));
    CHECK_THROWS_AS(parse_forms("form a : 1 1 4\n", 3), ParseError);
    CHECK_THROWS_AS(parse_forms("form a 1 1 1\n", 3), ParseError);
}
