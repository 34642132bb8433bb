#include "zex/report.hpp"

#include <doctest.h>

#include <set>

using namespace zex;

TEST_CASE("row seeds") {
    CHECK(row_seed(42, "aut F1 5") == row_seed(42, "aut F1 5"));
    CHECK(row_seed(42, "aut F1 5") != row_seed(42, "aut F1 6"));
    CHECK(row_seed(42, "aut F1 5") != row_seed(43, "aut F1 5"));
}

TEST_CASE("family cohomology checks") {
    for (std::size_t n = 5; n <= 7; ++n)
        for (auto f : {FamilyKind::F1, FamilyKind::F2, FamilyKind::F3}) {
            auto c = check_family_cohomology(f, n);
            INFO(kind_name(f) << " n = " << n);
            CHECK(c.dims_ok());
            CHECK(c.spans_ok());
            CHECK(c.z2 - c.b2 == c.h2);
        }
}

TEST_CASE("appendix list") {
    auto l = appendix_list(7);
    REQUIRE(l.size() >= 3);
    CHECK(l[0].first == "F1");
    CHECK(l[0].second.same_table(make_f(1, 7)));
    std::set<std::string> names;
    for (const auto& [name, a] : l) {
        CHECK(names.insert(name).second);
        CHECK(a.dim() == 7);
    }
}

TEST_CASE("reproduce at n = 5") {
    ReproduceOptions opt;
    opt.n_min = opt.n_max = 5;
    auto r = reproduce(opt);
    std::string csv = r.csv();
    CHECK(csv.rfind("section,family,n,item,anchor,verdict,detail\n", 0) == 0);
    CHECK(csv == reproduce(opt).csv());
    std::set<std::string> anchors;
    for (const auto& row : r.rows)
        if (row.section == "reduction" && row.verdict == Verdict::Pass) anchors.insert(row.anchor);
    std::size_t fails = 0;
    for (const auto& row : r.rows) {
        if (row.verdict != Verdict::Fail) continue;
        ++fails;
        INFO(row.anchor << ": " << row.detail);
        if (row.section == "aut")
            CHECK(row.family == "F3");
        else {
            CHECK(row.section == "reduction");
            CHECK(anchors.count(row.anchor + "-corr") == 1);
        }
    }
    CHECK(fails == r.count(Verdict::Fail));
    CHECK(fails == 6);
    CHECK_FALSE(r.ok());
    CHECK(r.count(Verdict::Collision) > 0);
}
