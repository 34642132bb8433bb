#include "zex/linalg.hpp"

#include <stdexcept>

namespace zex {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged input");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("from_columns: ragged input");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Vec Matrix::row(std::size_t r) const { return Vec(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_); }

Vec Matrix::col(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

std::vector<Vec> Matrix::row_list() const {
    std::vector<Vec> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational acc = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            if (sgn(v[c]) != 0 && sgn((*this)(r, c)) != 0) acc += (*this)(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix z(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
        for (std::size_t k = 0; k < x.cols_; ++k) {
            const Rational& a = x(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < y.cols_; ++j)
                if (sgn(y(k, j)) != 0) z(i, j) += a * y(k, j);
        }
    return z;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    Matrix z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
    return z;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    Matrix z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] -= y.a_[i];
    return z;
}

Matrix operator*(const Rational& s, const Matrix& m) {
    Matrix z = m;
    for (auto& v : z.a_) v *= s;
    return z;
}

namespace {

// In-place Gauss-Jordan on a list of rows; returns pivot columns. Zero rows are dropped.
std::vector<std::size_t> reduce_rows(std::vector<Vec>& rows, std::size_t ncols) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Rational inv = 1 / rows[r][c];
        for (std::size_t k = c; k < ncols; ++k)
            if (sgn(rows[r][k]) != 0) rows[r][k] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][c]) == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t k = c; k < ncols; ++k)
                if (sgn(rows[r][k]) != 0) rows[i][k] -= f * rows[r][k];
        }
        piv.push_back(c);
        ++r;
    }
    rows.resize(r);
    return piv;
}

}  // namespace

RrefResult rref(const Matrix& m) {
    std::vector<Vec> rows = m.row_list();
    auto piv = reduce_rows(rows, m.cols());
    Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = rows[r][c];
    return {out, piv};
}

std::size_t rank(const Matrix& m) {
    std::vector<Vec> rows = m.row_list();
    return reduce_rows(rows, m.cols()).size();
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: non-square matrix");
    std::size_t n = m.rows();
    std::vector<Vec> rows(n, Vec(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
        rows[i][n + i] = 1;
    }
    auto piv = reduce_rows(rows, 2 * n);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
    return inv;
}

Rational determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: non-square matrix");
    std::size_t n = m.rows();
    std::vector<Vec> a = m.row_list();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a[p][c]) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(a[i][c]) == 0) continue;
            Rational f = a[i][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
        }
    }
    return det;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
    std::size_t nc = m.cols();
    std::vector<Vec> rows(m.rows(), Vec(nc + 1));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < nc; ++j) rows[i][j] = m(i, j);
        rows[i][nc] = b[i];
    }
    auto piv = reduce_rows(rows, nc + 1);
    if (!piv.empty() && piv.back() == nc) return std::nullopt;
    Vec x(nc);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = rows[r][nc];
    return x;
}

Subspace Subspace::span(const std::vector<Vec>& vecs, std::size_t ambient) {
    Subspace s(ambient);
    std::vector<Vec> rows;
    rows.reserve(vecs.size());
    for (const auto& v : vecs) {
        if (v.size() != ambient) throw std::invalid_argument("span: dimension mismatch");
        if (!is_zero(v)) rows.push_back(v);
    }
    s.pivots_ = reduce_rows(rows, ambient);
    s.basis_ = std::move(rows);
    return s;
}

Subspace Subspace::whole(std::size_t ambient) {
    std::vector<Vec> e;
    for (std::size_t i = 0; i < ambient; ++i) e.push_back(unit_vector(ambient, i));
    return span(e, ambient);
}

bool Subspace::contains(const Vec& v) const { return membership(v, *this).has_value(); }

bool Subspace::contains(const Subspace& s) const {
    if (s.n_ != n_) throw std::invalid_argument("contains: dimension mismatch");
    for (const auto& v : s.basis_)
        if (!contains(v)) return false;
    return true;
}

bool operator<(const Subspace& a, const Subspace& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    if (a.basis_.size() != b.basis_.size()) return a.basis_.size() < b.basis_.size();
    for (std::size_t i = 0; i < a.basis_.size(); ++i)
        for (std::size_t j = 0; j < a.n_; ++j) {
            int c = cmp(a.basis_[i][j], b.basis_[i][j]);
            if (c != 0) return c < 0;
        }
    return false;
}

Subspace kernel_basis(const Matrix& m) {
    std::vector<Vec> rows = m.row_list();
    std::size_t nc = m.cols();
    auto piv = reduce_rows(rows, nc);
    std::vector<bool> is_piv(nc, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < nc; ++f) {
        if (is_piv[f]) continue;
        Vec v(nc);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -rows[r][f];
        basis.push_back(std::move(v));
    }
    return Subspace::span(basis, nc);
}

std::optional<Vec> membership(const Vec& v, const Subspace& s) {
    if (v.size() != s.ambient_dim()) throw std::invalid_argument("membership: dimension mismatch");
    // RREF basis: the coordinate on basis vector r is v at pivot r.
    const auto& b = s.basis();
    const auto& piv = s.pivots();
    Vec coords(b.size());
    Vec rest = v;
    for (std::size_t r = 0; r < b.size(); ++r) {
        coords[r] = v[piv[r]];
        if (sgn(coords[r]) == 0) continue;
        for (std::size_t k = 0; k < rest.size(); ++k)
            if (sgn(b[r][k]) != 0) rest[k] -= coords[r] * b[r][k];
    }
    if (!is_zero(rest)) return std::nullopt;
    return coords;
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum: dimension mismatch");
    std::vector<Vec> all = a.basis();
    all.insert(all.end(), b.basis().begin(), b.basis().end());
    return Subspace::span(all, a.ambient_dim());
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: dimension mismatch");
    std::size_t n = a.ambient_dim();
    std::size_t da = a.dim(), db = b.dim();
    if (da == 0 || db == 0) return Subspace(n);
    // Solve Σ s_i a_i − Σ t_j b_j = 0, then map s back.
    Matrix m(n, da + db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t k = 0; k < n; ++k) m(k, i) = a.basis()[i][k];
    for (std::size_t j = 0; j < db; ++j)
        for (std::size_t k = 0; k < n; ++k) m(k, da + j) = -b.basis()[j][k];
    Subspace ker = kernel_basis(m);
    std::vector<Vec> vecs;
    for (const auto& st : ker.basis()) {
        Vec v(n);
        for (std::size_t i = 0; i < da; ++i)
            if (sgn(st[i]) != 0)
                for (std::size_t k = 0; k < n; ++k) v[k] += st[i] * a.basis()[i][k];
        vecs.push_back(std::move(v));
    }
    return Subspace::span(vecs, n);
}

std::vector<Vec> complement_basis(const Subspace& inner, const Subspace& outer) {
    if (!outer.contains(inner)) throw std::invalid_argument("complement_basis: inner not contained in outer");
    std::vector<Vec> chosen;
    std::vector<Vec> acc = inner.basis();
    std::size_t have = inner.dim();
    for (const auto& v : outer.basis()) {
        acc.push_back(v);
        if (Subspace::span(acc, outer.ambient_dim()).dim() > have) {
            ++have;
            chosen.push_back(v);
        } else {
            acc.pop_back();
        }
    }
    return chosen;
}

std::string format_vector(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

}  // namespace zex
