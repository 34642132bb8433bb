#pragma once

#include "zex/algebra.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace zex {

// θ(e_i, e_j) = m(i, j). Flattened row-major, Δ_{i,j} has index i*n + j (0-based).
struct BilinearForm {
    Matrix m;

    BilinearForm() = default;
    explicit BilinearForm(std::size_t n) : m(n, n) {}
    explicit BilinearForm(Matrix mm) : m(std::move(mm)) {}

    std::size_t ambient() const { return m.rows(); }
    static BilinearForm delta(std::size_t n, std::size_t i, std::size_t j);
    static BilinearForm from_flat(const Vec& v, std::size_t n);
    Vec flat() const;
    Rational operator()(const Vec& x, const Vec& y) const;
    bool is_zero() const { return m.is_zero(); }

    friend bool operator==(const BilinearForm& a, const BilinearForm& b) { return a.m == b.m; }
    friend BilinearForm operator+(const BilinearForm& a, const BilinearForm& b) { return BilinearForm(a.m + b.m); }
    friend BilinearForm operator*(const Rational& s, const BilinearForm& f) { return BilinearForm(s * f.m); }
};

BilinearForm combine(const std::vector<BilinearForm>& forms, const Vec& coeffs);

struct CohomologySpaces {
    std::size_t n = 0;
    Subspace z2, b2;
    std::vector<BilinearForm> h2_reps;
    bool listed_reps = false;  // reps taken from the catalog family rather than the canonical complement
    // Columns of basis_ are [B² basis | reps | complement of Z²]; coords_ is its inverse.
    Matrix basis_matrix, coords;

    std::size_t h2_dim() const { return h2_reps.size(); }
    // Coordinates over h2_reps modulo B². Requires a cocycle.
    Vec project(const Vec& flat_form) const;
    Vec project(const BilinearForm& f) const { return project(f.flat()); }
    // Rows of `coords` giving the H² part: an h×n² matrix usable on non-rational vectors.
    Matrix projection_matrix() const;
    // Rows giving the component outside Z² (zero exactly on cocycles).
    Matrix outside_z2_matrix() const;
};

Subspace cocycle_space(const Algebra& a);
BilinearForm coboundary_of(const Algebra& a, const Vec& f);
Subspace coboundary_space(const Algebra& a);
// Uses the catalog's representatives when a's label names a catalog family with the same table.
CohomologySpaces cohomology(const Algebra& a);
CohomologySpaces cohomology_with_reps(const Algebra& a, const std::vector<BilinearForm>& reps);
CohomologySpaces cohomology_canonical(const Algebra& a);

// First violated basis triple of θ(x∘y,z) = θ(x, y∘z + z∘y), if any.
std::optional<std::array<std::size_t, 3>> cocycle_violation(const Algebra& a, const BilinearForm& f);
inline bool is_cocycle(const Algebra& a, const BilinearForm& f) { return !cocycle_violation(a, f).has_value(); }

class NotCocycle : public std::invalid_argument {
public:
    NotCocycle(const std::string& name, std::array<std::size_t, 3> t)
        : std::invalid_argument("form " + name + " is not a cocycle: violated at (" + std::to_string(t[0] + 1) + "," +
                                std::to_string(t[1] + 1) + "," + std::to_string(t[2] + 1) + ")"),
          triple(t) {}
    std::array<std::size_t, 3> triple;
};

Subspace cocycle_annihilator(const Algebra& a, const std::vector<BilinearForm>& thetas);

struct NamedForm {
    std::string name;
    BilinearForm form;
};
// Lines "form <name> : <p/q> <i> <j> [...]"; '#' comments and blank lines ignored.
std::vector<NamedForm> parse_forms(const std::string& text, std::size_t n);
std::string print_form(const NamedForm& f);
std::string print_forms(const std::vector<NamedForm>& fs);

}  // namespace zex
