#pragma once

#include "zex/catalog.hpp"
#include "zex/cocycles.hpp"
#include "zex/numeric.hpp"
#include "zex/poly.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace zex {

using PolyMatrix = std::vector<std::vector<Poly>>;  // [row][col]

// Column j of the matrix is φ(e_j). Returns nothing when e_1, e_n do not determine a
// multiplicative bijection (inconsistent images or singular result).
std::optional<Matrix> extend_from_generators(const Algebra& a, const Vec& img_e1, const Vec& img_elast);
// Matrix built by the recursion φ(e_{i+1}) = φ(e_i)∘φ(e_1)/c_i without any checks.
std::optional<Matrix> generator_images(const Algebra& a, const Vec& img_e1, const Vec& img_elast);
bool is_automorphism(const Algebra& a, const Matrix& phi);

// Parameters: x = a_{1,1}, y = a_{n,n} (F1 only), z = a_{n-1,n}, w = a_{n,1}, a_i_1 for 2 <= i <= n-1.
struct AutomorphismTemplate {
    FamilyKind family = FamilyKind::F1;
    std::size_t n = 0;
    std::vector<std::string> free_params;
    PolyMatrix entry;  // entry[i][j]: coefficient of e_{i+1} in φ(e_{j+1}); derived entries filled by the recursion
    // F3 with even n: entry(n,n) is the symbol "s" with s^2 = x^(n-1).
    bool side_root = false;
    Poly side_square;

    Poly nn_law() const;  // displayed law for entry(n,n)
    Matrix instantiate(const std::map<std::string, Rational>& values) const;
};

AutomorphismTemplate automorphism_template(FamilyKind f, std::size_t n);

struct AutSample {
    std::map<std::string, Rational> values;
    bool extended = false;      // extend_from_generators succeeded
    bool diagonal_ok = false;   // entry(i,i) = x^i for i <= n-1
    bool nn_ok = false;         // entry(n,n) law
    bool pattern_ok = false;    // zero pattern of the last row and column
    bool derived_ok = false;    // all derived entries agree with the symbolic template
    bool pass() const { return extended && diagonal_ok && nn_ok && pattern_ok && derived_ok; }
};

struct AutReport {
    FamilyKind family;
    std::size_t n;
    std::vector<AutSample> samples;
    bool fixed_w_zero = false;  // diagnostic run with a_{n,1} = 0
    std::size_t passed() const;
    bool pass() const { return passed() == samples.size(); }
};

// Samples every displayed free parameter; w_zero forces a_{n,1} = 0.
AutReport verify_aut_template(FamilyKind f, std::size_t n, std::size_t samples, std::mt19937_64& rng, bool w_zero = false);

BilinearForm act(const BilinearForm& theta, const Matrix& phi);
PolyMatrix act(const PolyMatrix& theta, const PolyMatrix& phi);

struct ActionReport {
    FamilyKind family;
    std::size_t n;
    std::vector<Poly> computed, expected;
    bool image_in_z2 = false;  // component outside Z² vanishes identically
    bool pass() const { return image_in_z2 && computed == expected; }
};

// Generic θ = Σ a_i ∇_i acted on by the template, projected to H² coordinates.
ActionReport verify_action_formula(FamilyKind f, std::size_t n);
std::vector<Poly> expected_action(FamilyKind f, std::size_t n);

class ConstraintViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

bool constraint_holds(const std::string& c, const std::map<std::string, Rational>& env);
std::vector<std::string> case_variables(const ReductionCase& c);

// Draws positive small rationals, applies "v = expr" constraints as assignments in order,
// then checks every constraint exactly plus independence of the θ's.
std::optional<std::map<std::string, Rational>> sample_case(const ReductionCase& c, std::mt19937_64& rng,
                                                           std::size_t attempts = 500);

template <typename R>
struct ReductionOutcome {
    bool pass = false;
    std::size_t rank_images = 0, rank_union = 0, rank_target = 0;
    bool phi_in_aut = false;
    R aut_residual{0};
    R outside_z2{0};
    std::string error;
};

// Numeric check at the working precision of R; tol is relative (pivot threshold tol × max row norm).
template <typename R>
ReductionOutcome<R> verify_reduction_case(const ReductionCase& c, const std::map<std::string, Rational>& sample, const R& tol);

// Rank of complex rows with pivot threshold tol × (max row norm).
template <typename R>
std::size_t numeric_rank(std::vector<std::vector<Complex<R>>> rows, const R& tol);

}  // namespace zex
