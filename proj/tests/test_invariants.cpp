#include "oracle.hpp"
#include "zex/invariants.hpp"
#include "zex/report.hpp"
#include "zex/symbolic_action.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

using namespace zex;

namespace {

Matrix diag(const std::vector<Rational>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix random_invertible(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-2, 2);
    for (;;) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
        if (determinant(m) != 0) return m;
    }
}

// Random integer matrix of determinant ±1: column operations with coefficients ±1, then a signed permutation.
// The transported tables stay integral, which keeps exact arithmetic cheap.
Matrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> c(-1, 1);
    std::uniform_int_distribution<std::size_t> ix(0, n - 1);
    Matrix m = Matrix::identity(n);
    for (std::size_t s = 0; s < 2 * n; ++s) {
        std::size_t i = ix(rng), j = ix(rng);
        if (i == j) continue;
        long k = c(rng);
        for (std::size_t r = 0; r < n; ++r) m(r, i) += k * m(r, j);
    }
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    Matrix q(n, n);
    for (std::size_t i = 0; i < n; ++i) q(p[i], i) = (rng() & 1) ? 1 : -1;
    return m * q;
}

std::vector<std::pair<std::string, Algebra>> catalog(std::size_t n) {
    std::vector<std::pair<std::string, Algebra>> out{{"F1", make_f(1, n)}, {"F2", make_f(2, n)}, {"F3", make_f(3, n)}};
    for (int k = 1; k <= 16; ++k) {
        if (mu_has_alpha(k)) {
            out.push_back({"MU" + std::to_string(k), make_mu(k, n, make_rational(1, 2))});
        } else {
            out.push_back({"MU" + std::to_string(k), make_mu(k, n)});
        }
    }
    return out;
}

using Pair = std::tuple<std::size_t, std::string, std::string>;

std::set<Pair> committed_collisions() {
    std::ifstream in("tests/data/expected_collisions.csv");
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "dim,first,second");
    std::set<Pair> out;
    while (std::getline(in, line)) {
        std::istringstream is(line);
        std::string d, a, b;
        std::getline(is, d, ',');
        std::getline(is, a, ',');
        std::getline(is, b, ',');
        out.insert({std::stoul(d), a, b});
    }
    return out;
}

}  // namespace

TEST_CASE("fingerprint examples") {
    Fingerprint f = fingerprint(make_f(1, 5));
    CHECK(f.ann_dim == 2);
    CHECK(f.power_dims == std::vector<std::size_t>{5, 3, 2, 1, 0});
    CHECK(f.graded_dims == std::vector<std::size_t>{2, 1, 1, 1});

    Fingerprint f2 = fingerprint(make_f(2, 5)), f3 = fingerprint(make_f(3, 5));
    CHECK(f2.ann_dim == 1);
    CHECK(f3.ann_dim == 1);
    CHECK(f2.char_products.at({"W4", "W4"}) == 0);
    CHECK(f3.char_products.at({"W4", "W4"}) == 1);
    // left annihilators already differ (e_5 kills A from the left only in F2); the W_4 product differs as well
    CHECK(separating_invariant(f2, f3) == std::optional<std::string>("left_ann_dim"));
    CHECK_FALSE(separating_invariant(f2, f2).has_value());

    Fingerprint z = fingerprint(Algebra(4));
    CHECK(z.ann_dim == 4);
    CHECK(z.power_dims == std::vector<std::size_t>{4, 0});
    for (const auto& [k, v] : z.char_products) CHECK(v == 0);

    Algebra idem(1);
    idem.set(0, 0, 0, 1);
    CHECK_THROWS_AS(fingerprint(idem), NotNilpotent);
}

TEST_CASE("fingerprint components agree with the oracle") {
    for (std::size_t n = 5; n <= 7; ++n)
        for (const auto& [name, a] : catalog(n + 1)) {
            INFO(name);
            Fingerprint f = fingerprint(a);
            CHECK(f.power_dims == oracle::power_dims(a));
            for (std::size_t i = 0; i + 1 < f.power_dims.size(); ++i)
                CHECK(f.graded_dims[i] == f.power_dims[i] - f.power_dims[i + 1]);
        }
}

TEST_CASE("W_k contains the annihilator") {
    for (const auto& [name, a] : catalog(7)) {
        auto subs = characteristic_subspaces(a);
        const Subspace* ann = nullptr;
        for (const auto& s : subs)
            if (s.name == "ann") ann = &s.space;
        REQUIRE(ann != nullptr);
        std::size_t w = 0;
        for (const auto& s : subs)
            if (s.name[0] == 'W') {
                ++w;
                CHECK(s.space.contains(*ann));
            }
        CHECK(w == fingerprint(a).power_dims.size());
    }
}

TEST_CASE("isomorphism verification") {
    Algebra a = make_f(1, 5);
    CHECK(verify_isomorphism(a, a, Matrix::identity(5)));
    CHECK(verify_isomorphism(a, a, diag({2, 4, 8, 16, 1})));
    CHECK_FALSE(verify_isomorphism(a, a, diag({2, 4, 8, 16, 0})));
    CHECK_FALSE(verify_isomorphism(a, a, diag({2, 4, 8, 15, 1})));
    CHECK_THROWS_AS(verify_isomorphism(a, make_f(1, 6), Matrix::identity(5)), std::invalid_argument);
    std::mt19937_64 rng(1);
    Matrix p = random_invertible(5, rng);
    Algebra b = transport(a, p);
    CHECK(verify_isomorphism(b, a, p));
}

TEST_CASE("generator sweep finds no isomorphism between F2 and F3") {
    std::mt19937_64 rng(9);
    auto r = generator_sweep(make_f(2, 5), make_f(3, 5), 500, rng);
    CHECK(r.tried == 500);
    CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("isomorphism search") {
    Algebra a = make_f(3, 6);
    std::vector<std::size_t> perm{0, 1, 2, 3, 5, 4};
    auto w = search_isomorphism(a, permute(a, perm), 1);
    REQUIRE(w.has_value());
    CHECK(verify_isomorphism(a, permute(a, perm), w->m));
    CHECK(find_tail_permutation(a, permute(a, perm), 4).has_value());
    CHECK_FALSE(search_isomorphism(make_f(2, 6), make_f(3, 6), 1).has_value());
    // a scaled copy needs the lifting solver
    Matrix s = diag({2, 4, 8, 16, 32, 1});
    Algebra f1 = make_f(1, 6);
    Algebra g = transport(f1, s);
    auto l = search_isomorphism(f1, g, 5);
    REQUIRE(l.has_value());
    CHECK(verify_isomorphism(f1, g, l->m));
}

TEST_CASE("fingerprints are invariant under change of basis") {
    std::mt19937_64 rng(2024);
    for (std::size_t n : {6, 7})
        for (const auto& [name, a] : catalog(n)) {
            INFO(name << " dim " << n);
            Fingerprint f = fingerprint(a);
            for (int t = 0; t < 50; ++t) CHECK(fingerprint(transport(a, random_unimodular(n, rng))) == f);
            for (int t = 0; t < 3; ++t) CHECK(fingerprint(transport(a, random_invertible(n, rng))) == f);
        }
    for (std::size_t n = 5; n <= 8; ++n)
        for (auto k : {FamilyKind::F1, FamilyKind::F2, FamilyKind::F3}) {
            Algebra a = make(FamilyId{k, 0, n, std::nullopt});
            Fingerprint f = fingerprint(a);
            auto r = verify_aut_template(k, n, 10, rng, k == FamilyKind::F3);
            auto t = automorphism_template(k, n);
            for (const auto& s : r.samples) {
                Matrix phi = t.instantiate(s.values);
                CHECK(verify_isomorphism(a, a, phi));
                CHECK(fingerprint(transport(a, phi)) == f);
            }
        }
}

TEST_CASE("product dimensions are invariant under basis permutation") {
    std::mt19937_64 rng(77);
    for (const auto& [name, a] : catalog(7)) {
        Fingerprint f = fingerprint(a);
        for (int t = 0; t < 10; ++t) {
            std::vector<std::size_t> p(7);
            for (std::size_t i = 0; i < 7; ++i) p[i] = i;
            std::shuffle(p.begin(), p.end(), rng);
            CHECK(fingerprint(permute(a, p)).char_products == f.char_products);
        }
    }
}

TEST_CASE("filiform families are separated") {
    for (std::size_t n = 5; n <= 10; ++n) {
        auto r = distinguish_report({{"F1", make_f(1, n)}, {"F2", make_f(2, n)}, {"F3", make_f(3, n)}});
        CHECK(r.fully_distinguished());
        CHECK(r.pairs.size() == 3);
    }
}

TEST_CASE("distinguish report examples") {
    auto c = distinguish_report({{"MU2(1)", make_mu(2, 7, Rational(1))}, {"MU2(2)", make_mu(2, 7, Rational(2))}});
    REQUIRE(c.collisions().size() == 1);
    CHECK(c.markdown().find("not separated by implemented invariants") != std::string::npos);
    auto single = distinguish_report({{"F1", make_f(1, 6)}});
    CHECK(single.fully_distinguished());
    CHECK(single.pairs.empty());
    auto csv = distinguish_report({{"F1", make_f(1, 6)}, {"F2", make_f(2, 6)}}).csv();
    CHECK(csv.find("F1,F2,distinguished,ann_dim") != std::string::npos);
}

TEST_CASE("appendix collisions equal the committed list") {
    auto expected = committed_collisions();
    std::set<Pair> got;
    for (std::size_t dim : {6, 7, 8, 9}) {
        auto r = distinguish_report(appendix_list(dim));
        for (const auto& p : r.collisions()) got.insert({dim, r.labels[p.i], r.labels[p.j]});
        for (const auto& p : r.pairs) {
            // F1, F2, F3 never collide with anything
            if (p.separated) continue;
            CHECK(r.labels[p.i].rfind("F", 0) != 0);
        }
    }
    CHECK(got == expected);
}
