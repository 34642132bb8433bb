#pragma once

#include "zex/linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zex {

// Finite-dimensional algebra given by structure constants: e_i∘e_j = Σ_k c(i,j,k) e_k (0-based here).
class Algebra {
public:
    Algebra() = default;
    explicit Algebra(std::size_t n, std::string label = {}) : n_(n), c_(n * n * n), label_(std::move(label)) {}

    std::size_t dim() const { return n_; }
    const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
    void set(std::size_t i, std::size_t j, std::size_t k, const Rational& v) { c_.at((i * n_ + j) * n_ + k) = v; }
    void add(std::size_t i, std::size_t j, std::size_t k, const Rational& v) { c_.at((i * n_ + j) * n_ + k) += v; }

    // Product of basis vectors as a coefficient vector.
    Vec basis_product(std::size_t i, std::size_t j) const;
    bool product_is_zero(std::size_t i, std::size_t j) const;

    const std::string& label() const { return label_; }
    void set_label(std::string s) { label_ = std::move(s); }
    const std::vector<std::pair<std::string, Rational>>& params() const { return params_; }
    void set_param(const std::string& name, const Rational& v);
    std::optional<Rational> param(const std::string& name) const;

    bool same_table(const Algebra& o) const { return n_ == o.n_ && c_ == o.c_; }

private:
    std::size_t n_ = 0;
    std::vector<Rational> c_;
    std::string label_;
    std::vector<std::pair<std::string, Rational>> params_;
};

struct ZinbielViolation {
    std::size_t i, j, k;  // 0-based basis indices
    Vec defect;           // (e_i∘e_j)∘e_k − e_i∘(e_j∘e_k) − e_i∘(e_k∘e_j)
};

struct PowerSeries {
    std::vector<Subspace> chain;  // chain[0] = A, chain[i] = A^{i+1}
    bool nilpotent = false;
    std::vector<std::size_t> dims() const;
};

class NotNilpotent : public std::runtime_error {
public:
    NotNilpotent() : std::runtime_error("algebra is not nilpotent") {}
};

Vec product(const Algebra& a, const Vec& x, const Vec& y);
// Span of all products u∘v with u ∈ U, v ∈ V.
Subspace product_space(const Algebra& a, const Subspace& U, const Subspace& V);

std::vector<ZinbielViolation> check_zinbiel(const Algebra& a);
PowerSeries power_series(const Algebra& a);
// A^{i+1} computed as A^i∘A + A∘A^i only; used to test coincidence with the full definition.
std::vector<Subspace> naive_power_series(const Algebra& a);
std::optional<std::size_t> nilpotency_index(const Algebra& a);

Subspace annihilator(const Algebra& a);
Subspace left_annihilator(const Algebra& a);   // {x : x∘A = 0}
Subspace right_annihilator(const Algebra& a);  // {x : A∘x = 0}

bool is_null_filiform(const Algebra& a);
bool is_filiform(const Algebra& a);
std::size_t generator_count(const Algebra& a);

bool is_ideal(const Algebra& a, const Subspace& s);

struct Quotient {
    Algebra algebra;
    Matrix projection;               // (n−m)×n, maps a-coordinates to quotient coordinates
    std::vector<std::size_t> lift;   // a-basis indices used as the complement
};
Quotient quotient_algebra(const Algebra& a, const Subspace& ideal);

// Table of a in the basis whose vectors are the columns of p.
Algebra transport(const Algebra& a, const Matrix& p);
// perm[old] = new index.
Algebra permute(const Algebra& a, const std::vector<std::size_t>& perm);

// Left multiplication matrices: L_i(v) = e_i∘v; right: R_j(v) = v∘e_j.
Matrix left_mult(const Algebra& a, std::size_t i);
Matrix right_mult(const Algebra& a, std::size_t j);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

Algebra parse_zalg(const std::string& text);
std::string print_zalg(const Algebra& a);

}  // namespace zex
