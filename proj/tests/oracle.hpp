#pragma once

// Reference computations for the tests. Each one works straight from structure constants with its own
// elimination routine so that library bugs do not cancel out.

#include "zex/algebra.hpp"

#include <gmpxx.h>

#include <vector>

namespace oracle {

using Q = mpq_class;
using Row = std::vector<Q>;

// Row echelon form of m; returns the nonzero rows, which span the same space.
inline std::vector<Row> echelon(std::vector<Row> m) {
    std::size_t r = 0;
    if (m.empty()) return m;
    std::size_t cols = m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            Q f = m[i][c] / m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

inline std::size_t rank(std::vector<Row> m) { return echelon(std::move(m)).size(); }

inline Q binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    std::vector<std::vector<long>> t(n + 1, std::vector<long>(n + 1, 0));
    for (long i = 0; i <= n; ++i) {
        t[i][0] = 1;
        for (long j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
    }
    return t[n][k];
}

// F_n^0 written out from e_i∘e_j = C_{i+j-1}^j e_{i+j}, 0-based.
inline zex::Algebra null_filiform(std::size_t n) {
    zex::Algebra a(n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; i + j <= n; ++j) a.set(i - 1, j - 1, i + j - 1, binom(long(i + j - 1), long(j)));
    return a;
}

inline Row mul(const zex::Algebra& a, const Row& x, const Row& y) {
    std::size_t n = a.dim();
    Row r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (x[i] == 0 || y[j] == 0) continue;
            for (std::size_t k = 0; k < n; ++k) r[k] += x[i] * y[j] * a.c(i, j, k);
        }
    return r;
}

inline std::vector<Row> units(std::size_t n) {
    std::vector<Row> e(n, Row(n));
    for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
    return e;
}

// Cocycle system θ(e_i∘e_j, e_k) − θ(e_i, e_j∘e_k + e_k∘e_j) = 0 in the n² unknowns θ_{pq}.
inline std::size_t z2_dim(const zex::Algebra& a) {
    std::size_t n = a.dim();
    std::vector<Row> sys;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Row r(n * n);
                for (std::size_t p = 0; p < n; ++p) {
                    r[p * n + k] += a.c(i, j, p);
                    r[i * n + p] -= a.c(j, k, p) + a.c(k, j, p);
                }
                sys.push_back(r);
            }
    return n * n - rank(sys);
}

// δ(e_k^*) has entries c(i,j,k).
inline std::size_t b2_dim(const zex::Algebra& a) {
    std::size_t n = a.dim();
    std::vector<Row> rows;
    for (std::size_t k = 0; k < n; ++k) {
        Row r(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r[i * n + j] = a.c(i, j, k);
        rows.push_back(r);
    }
    return rank(rows);
}

inline std::size_t zinbiel_violations(const zex::Algebra& a) {
    std::size_t n = a.dim(), bad = 0;
    auto e = units(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Row l = mul(a, mul(a, e[i], e[j]), e[k]);
                Row s = mul(a, e[j], e[k]), t = mul(a, e[k], e[j]);
                for (std::size_t q = 0; q < n; ++q) s[q] += t[q];
                if (l != mul(a, e[i], s)) ++bad;
            }
    return bad;
}

// Dims of A^1, A^2, ... from spanning sets: A^{m} is spanned by products u∘v, u ∈ A^p, v ∈ A^{m-p}.
inline std::vector<std::size_t> power_dims(const zex::Algebra& a) {
    std::size_t n = a.dim();
    std::vector<std::vector<Row>> span{units(n)};
    std::vector<std::size_t> d{n};
    while (d.back() != 0 && d.size() <= n + 1) {
        std::size_t m = span.size() + 1;
        std::vector<Row> gen;
        for (std::size_t p = 1; p < m; ++p)
            for (const auto& u : span[p - 1])
                for (const auto& v : span[m - p - 1]) gen.push_back(mul(a, u, v));
        gen = echelon(std::move(gen));
        std::size_t r = gen.size();
        if (r == d.back()) break;
        span.push_back(gen);
        d.push_back(r);
    }
    return d;
}

}  // namespace oracle
