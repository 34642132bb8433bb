#pragma once

#include "zex/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zex {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    Vec col(std::size_t c) const;
    std::vector<Vec> row_list() const;
    Matrix transpose() const;
    Vec apply(const Vec& v) const;
    bool is_zero() const;

    const std::vector<Rational>& data() const { return a_; }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y);
    friend Matrix operator+(const Matrix& x, const Matrix& y);
    friend Matrix operator-(const Matrix& x, const Matrix& y);
    friend Matrix operator*(const Rational& s, const Matrix& m);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

struct RrefResult {
    Matrix m;
    std::vector<std::size_t> pivots;
};

// Unique reduced row echelon form; zero rows are kept at the bottom so the shape is unchanged.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
Rational determinant(const Matrix& m);

// Solve m x = b; free variables are set to zero. Absent if inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : n_(ambient) {}
    static Subspace span(const std::vector<Vec>& vecs, std::size_t ambient);
    static Subspace whole(std::size_t ambient);

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& s) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.n_ == b.n_ && a.basis_ == b.basis_;
    }
    friend bool operator<(const Subspace& a, const Subspace& b);

private:
    std::size_t n_ = 0;
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
};

Subspace kernel_basis(const Matrix& m);
// Coordinates of v with respect to s.basis(), or nothing if v is not in s.
std::optional<Vec> membership(const Vec& v, const Subspace& s);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
// Canonical complement inside `outer`: unit-free basis completion chosen by scanning outer's basis in order.
std::vector<Vec> complement_basis(const Subspace& inner, const Subspace& outer);

std::string format_vector(const Vec& v);

}  // namespace zex
