#pragma once

#include "zex/algebra.hpp"
#include "zex/cocycles.hpp"
#include "zex/expr.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zex {

enum class FamilyKind { F0, F1, F2, F3, MU };

struct FamilyId {
    FamilyKind kind = FamilyKind::F0;
    int mu = 0;  // 1..16 when kind == MU
    std::size_t n = 0;
    std::optional<Rational> alpha;

    // "F1 7", "MU2 7 1/2"
    std::string label() const;
    std::string name() const;  // label without the dimension, e.g. "F1", "MU2(1/2)"
    static FamilyId parse(const std::string& text);

    friend bool operator==(const FamilyId& a, const FamilyId& b) {
        return a.kind == b.kind && a.mu == b.mu && a.n == b.n && a.alpha == b.alpha;
    }
};

class InvalidFamily : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

bool mu_has_alpha(int k);
std::string kind_name(FamilyKind k);
std::optional<FamilyKind> parse_kind(const std::string& s);

Rational binomial(long i, long j);
Algebra make(const FamilyId& id);
inline Algebra make_f(int k, std::size_t n) { return make(FamilyId{FamilyKind(k), 0, n, std::nullopt}); }
Algebra make_mu(int k, std::size_t n, std::optional<Rational> alpha = std::nullopt);

// ∇_1 = Δ_{1,n}, ∇_2 = Δ_{n,1}, ∇_3 = Δ_{n,n}, and for F1 ∇_4 = Σ C_{n-1}^{j-1} Δ_{j,n-j}.
std::vector<BilinearForm> nabla_basis(FamilyKind f, std::size_t n);
std::size_t h2_dim(FamilyKind f);

// Listed bases of Z² and B² for F1..F3.
std::vector<BilinearForm> listed_z2_basis(FamilyKind f, std::size_t n);
std::vector<BilinearForm> listed_b2_basis(FamilyKind f, std::size_t n);

// Catalog H² representatives if the algebra's label names F1..F3 and the table matches.
std::optional<std::vector<BilinearForm>> catalog_h2_reps(const Algebra& a);

// Rows of H²-coordinates (over the ∇ basis) spanning a subspace; entries may mention "alpha".
struct Representative {
    std::string name;  // e.g. "<alpha*N1+N2, N3>"
    std::vector<std::vector<RadicalExpr>> rows;
    bool parametric() const;
};

enum class CaseKind { Literal, Erratum };

struct ReductionCase {
    FamilyKind family = FamilyKind::F1;
    std::size_t n = 0;
    std::size_t s = 1;
    std::string id;  // e.g. "F1.2.1a"; errata carry the suffix "-corr"
    CaseKind kind = CaseKind::Literal;
    // "lhs = rhs" or "lhs != rhs" over a1..a4, b1..b4, c1..c4, d1..d4.
    std::vector<std::string> constraints;
    // Ordered; later substitutions may use earlier ones. Unset parameters keep their defaults.
    std::vector<std::pair<std::string, RadicalExpr>> substitutions;
    std::vector<std::vector<RadicalExpr>> target;
    std::string orbit;                   // name of the orbit-list entry this case lands in
    std::optional<RadicalExpr> alpha;    // value of the entry's alpha in terms of the sample
    std::string note;
};

struct OrbitList {
    FamilyKind family;
    std::size_t n, s;
    std::vector<Representative> reps;
};

// Coefficient variable for θ_t (t = 0..3), coordinate i (0-based): a1.., b1.., c1.., d1...
std::string coeff_var(std::size_t t, std::size_t i);

std::vector<ReductionCase> reduction_cases(FamilyKind f, std::size_t n);
std::vector<OrbitList> orbit_lists(FamilyKind f, std::size_t n);
const Representative* find_representative(const std::vector<OrbitList>& lists, std::size_t s, const std::string& name);

struct ExtensionRow {
    FamilyKind base = FamilyKind::F1;
    std::size_t s = 1;
    std::string rep;                          // orbit entry name
    std::vector<Rational> excluded_alpha;     // alpha values outside this row
    std::optional<Rational> fixed_alpha;      // row applies to this alpha only
    FamilyKind result_kind = FamilyKind::MU;
    int result_mu = 0;
    bool result_has_alpha = false;            // result alpha equals the representative's alpha
    std::string claimed;                      // the source's listed algebra for this entry
    std::string note;

    FamilyId result(std::size_t n, const std::optional<Rational>& alpha) const;
    bool conflict() const;
};

// Alpha values in the rows are instantiated for the given base dimension n.
std::vector<ExtensionRow> extension_theorem_table(FamilyKind f, std::size_t n);

// Instantiated forms of a representative at a given alpha.
std::vector<BilinearForm> representative_forms(FamilyKind f, std::size_t n, const Representative& r,
                                               const std::optional<Rational>& alpha);

// zcase v1: header "zcase 1", then one line per case:
// case <family> <n> | <s> | <id> | literal|erratum | <constraints ;> | <name = expr ;> | <rows ;, coords ,> | <orbit>
std::string print_zcase(const std::vector<ReductionCase>& cases);
std::vector<ReductionCase> parse_zcase(const std::string& text);

}  // namespace zex
