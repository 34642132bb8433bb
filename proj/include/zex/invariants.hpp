#pragma once

#include "zex/algebra.hpp"
#include "zex/numeric.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace zex {

struct Fingerprint {
    std::vector<std::size_t> power_dims;   // dim A^i, ending with the first zero power
    std::vector<std::size_t> graded_dims;  // dim A^i/A^{i+1}
    std::size_t ann_dim = 0, left_ann_dim = 0, right_ann_dim = 0;
    std::vector<std::size_t> w_chain_dims;  // W_k = {x : x∘A + A∘x ⊆ A^k}, k = 1..len(power_dims)
    std::map<std::pair<std::string, std::string>, std::size_t> char_products;  // dim(U∘V)
    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct NamedSubspace {
    std::string name;
    Subspace space;
};

// {A^i} ∪ {ann, lann, rann} ∪ {W_k}, named "A1", "A2", ..., "ann", "lann", "rann", "W1", ...
std::vector<NamedSubspace> characteristic_subspaces(const Algebra& a);

// Throws NotNilpotent.
Fingerprint fingerprint(const Algebra& a);

// Name of the first component in which the fingerprints differ, e.g. "ann_dim" or "dim(W4*W4)".
std::optional<std::string> separating_invariant(const Fingerprint& x, const Fingerprint& y);

std::string format_fingerprint(const Fingerprint& f);

// m maps a-coordinates to b-coordinates. Throws std::invalid_argument on a dimension mismatch.
bool verify_isomorphism(const Algebra& a, const Algebra& b, const Matrix& m);

using ComplexMatrixB = std::vector<std::vector<ComplexB>>;

struct NumericCheck {
    BigFloat residual;   // max |m(x∘y) − m(x)∘m(y)| over basis pairs and coordinates
    BigFloat min_pivot;  // smallest pivot modulus in a partial-pivoting elimination of m
    bool pass(const BigFloat& tol) const { return residual <= tol && min_pivot > tol; }
};

NumericCheck verify_isomorphism_numeric(const Algebra& a, const Algebra& b, const ComplexMatrixB& m);

// Permutations fixing e_1..e_fixed and permuting the rest, as perm[old] = new, with permute(a, perm) == b.
std::optional<std::vector<std::size_t>> find_tail_permutation(const Algebra& a, const Algebra& b, std::size_t fixed);

Matrix permutation_matrix(const std::vector<std::size_t>& perm);

// Filtration-lifting solver: given the block of the map on the degree-one part of adapted bases
// (rows: b's degree-one vectors, columns: a's), solve the multiplicativity equations stage by stage
// with free variables set to zero. The result is verified before it is returned.
std::optional<Matrix> lift_isomorphism(const Algebra& a, const Algebra& b, const Matrix& degree_one);

struct IsoWitness {
    enum class Kind { Permutation, Lifted } kind = Kind::Permutation;
    Matrix m;
    std::vector<std::size_t> perm;  // when kind == Permutation
};

// Tail permutation first, then the lifting solver over a small rational grid of degree-one blocks.
std::optional<IsoWitness> search_isomorphism(const Algebra& a, const Algebra& b, std::size_t fixed);

struct ComplexWitness {
    ComplexMatrixB m;
    NumericCheck check;
    std::vector<std::vector<ComplexB>> degree_one;
};

// Same solver over ℂ: degree-one diagonals also range over principal roots of −1.
// The search runs in double precision; the hit is recomputed and checked at `bits`.
std::optional<ComplexWitness> search_complex_isomorphism(const Algebra& a, const Algebra& b, unsigned bits,
                                                         const BigFloat& tol);

struct SweepResult {
    std::size_t tried = 0;
    std::optional<Matrix> witness;
};

// For algebras generated by e_1 and e_n: random images of e_1, e_n in b with coordinates p/q, |p|,|q| ≤ 3,
// extended by e_{i+1} = (e_i∘e_1)/c_i and checked with verify_isomorphism.
SweepResult generator_sweep(const Algebra& a, const Algebra& b, std::size_t samples, std::mt19937_64& rng);

struct PairVerdict {
    std::size_t i = 0, j = 0;
    bool separated = false;
    std::string invariant;  // separating invariant when separated
};

struct DistinguishReport {
    std::vector<std::string> labels;
    std::vector<PairVerdict> pairs;
    std::vector<PairVerdict> collisions() const;
    bool fully_distinguished() const { return collisions().empty(); }
    std::string markdown() const;
    std::string csv() const;
};

DistinguishReport distinguish_report(const std::vector<std::pair<std::string, Algebra>>& algebras);

}  // namespace zex
