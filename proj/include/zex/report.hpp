#pragma once

#include "zex/catalog.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zex {

enum class Verdict { Pass, Fail, Collision };

std::string verdict_name(Verdict v);

struct ReportRow {
    std::string section;  // identity, cohomology, aut, action, reduction, extension, f0, fingerprint
    std::string family;
    std::size_t n = 0;
    std::string item;
    std::string anchor;   // neutral location label, e.g. "F1.2.1a" or "cohomology F2"
    Verdict verdict = Verdict::Pass;
    std::string detail;
};

struct ReproduceOptions {
    std::size_t n_min = 5, n_max = 8;
    std::uint64_t seed = 42;
    unsigned precision = 128;
    Rational tol = parse_rational("1e-20");
    std::size_t case_samples = 3;
    std::size_t aut_samples = 20;
    std::size_t f0_trials = 50;
};

struct ReproduceReport {
    ReproduceOptions options;
    std::vector<ReportRow> rows;
    // All rows PASS or marked as collisions.
    bool ok() const;
    std::size_t count(Verdict v) const;
    std::string csv() const;
    std::string markdown() const;
};

// Rows are ordered by section, family, n and item; the per-row RNG is derived from the seed and the row key.
ReproduceReport reproduce(const ReproduceOptions& opt);

// Pieces used by reproduce and by the acceptance suite.
std::uint64_t row_seed(std::uint64_t seed, const std::string& key);

struct CohomologyCheck {
    std::size_t z2 = 0, b2 = 0, h2 = 0;
    std::size_t z2_expected = 0, b2_expected = 0, h2_expected = 0;
    bool z2_span = false, b2_span = false, h2_span = false;  // listed bases span the computed spaces
    bool dims_ok() const { return z2 == z2_expected && b2 == b2_expected && h2 == h2_expected; }
    bool spans_ok() const { return z2_span && b2_span && h2_span; }
};

CohomologyCheck check_family_cohomology(FamilyKind f, std::size_t n);

struct CaseCheck {
    bool pass_double = true, pass_big = true, phi_in_aut = true;
    std::size_t samples = 0;
    std::string error;
    bool pass() const { return error.empty() && pass_double && pass_big; }
};

CaseCheck check_reduction_case(const ReductionCase& c, std::size_t samples, std::uint64_t seed, unsigned precision,
                               const Rational& tol);

struct ExtensionCheck {
    bool found = false;
    std::string witness;  // "permutation", "lifted", "complex", or empty
    std::string detail;
};

// Alpha samples used for parametric representatives.
std::vector<Rational> extension_alpha_samples();

ExtensionCheck check_extension_row(FamilyKind f, std::size_t n, const ExtensionRow& row,
                                   const std::optional<Rational>& alpha, unsigned precision, const Rational& tol);

// F1, F2, F3 and the appendix algebras at dimension n, with alpha ∈ {1/2, 2}.
std::vector<std::pair<std::string, Algebra>> appendix_list(std::size_t n);

}  // namespace zex
