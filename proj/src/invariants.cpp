#include "zex/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace zex {

namespace {

// {x : x∘A + A∘x ⊆ S}, via functionals vanishing on S.
Subspace products_into(const Algebra& a, const Subspace& s) {
    std::size_t n = a.dim();
    Matrix sm = Matrix::from_rows(s.basis(), n);
    Subspace funcs = s.dim() == 0 ? Subspace::whole(n) : kernel_basis(sm);
    std::vector<Vec> rows;
    for (const auto& f : funcs.basis())
        for (std::size_t j = 0; j < n; ++j) {
            Vec l(n), r(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) {
                    if (sgn(f[k]) == 0) continue;
                    l[i] += f[k] * a.c(i, j, k);
                    r[i] += f[k] * a.c(j, i, k);
                }
            rows.push_back(std::move(l));
            rows.push_back(std::move(r));
        }
    if (rows.empty()) return Subspace::whole(n);
    return kernel_basis(Matrix::from_rows(rows, n));
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

}  // namespace

std::vector<NamedSubspace> characteristic_subspaces(const Algebra& a) {
    auto ps = power_series(a);
    if (!ps.nilpotent) throw NotNilpotent();
    std::vector<NamedSubspace> out;
    for (std::size_t i = 0; i < ps.chain.size(); ++i) out.push_back({"A" + std::to_string(i + 1), ps.chain[i]});
    out.push_back({"ann", annihilator(a)});
    out.push_back({"lann", left_annihilator(a)});
    out.push_back({"rann", right_annihilator(a)});
    for (std::size_t k = 0; k < ps.chain.size(); ++k)
        out.push_back({"W" + std::to_string(k + 1), products_into(a, ps.chain[k])});
    return out;
}

Fingerprint fingerprint(const Algebra& a) {
    auto cat = characteristic_subspaces(a);
    Fingerprint f;
    std::size_t np = 0;
    while (np < cat.size() && cat[np].name[0] == 'A') ++np;
    for (std::size_t i = 0; i < np; ++i) f.power_dims.push_back(cat[i].space.dim());
    for (std::size_t i = 0; i + 1 < np; ++i) f.graded_dims.push_back(f.power_dims[i] - f.power_dims[i + 1]);
    f.ann_dim = cat[np].space.dim();
    f.left_ann_dim = cat[np + 1].space.dim();
    f.right_ann_dim = cat[np + 2].space.dim();
    for (std::size_t i = np + 3; i < cat.size(); ++i) f.w_chain_dims.push_back(cat[i].space.dim());
    for (const auto& u : cat)
        for (const auto& v : cat) f.char_products[{u.name, v.name}] = product_space(a, u.space, v.space).dim();
    return f;
}

std::optional<std::string> separating_invariant(const Fingerprint& x, const Fingerprint& y) {
    if (x.power_dims != y.power_dims) return "power_dims";
    if (x.ann_dim != y.ann_dim) return "ann_dim";
    if (x.left_ann_dim != y.left_ann_dim) return "left_ann_dim";
    if (x.right_ann_dim != y.right_ann_dim) return "right_ann_dim";
    if (x.w_chain_dims != y.w_chain_dims) return "w_chain_dims";
    for (const auto& [k, v] : x.char_products) {
        auto it = y.char_products.find(k);
        if (it == y.char_products.end() || it->second != v) return "dim(" + k.first + "*" + k.second + ")";
    }
    if (x.char_products.size() != y.char_products.size()) return "char_products";
    return std::nullopt;
}

std::string format_fingerprint(const Fingerprint& f) {
    std::ostringstream os;
    os << "power_dims " << join(f.power_dims) << "\n";
    os << "graded_dims " << join(f.graded_dims) << "\n";
    os << "ann " << f.ann_dim << " lann " << f.left_ann_dim << " rann " << f.right_ann_dim << "\n";
    os << "w_chain_dims " << join(f.w_chain_dims) << "\n";
    os << "nonzero products:";
    for (const auto& [k, v] : f.char_products)
        if (v) os << " " << k.first << "*" << k.second << "=" << v;
    os << "\n";
    return os.str();
}

bool verify_isomorphism(const Algebra& a, const Algebra& b, const Matrix& m) {
    std::size_t n = a.dim();
    if (b.dim() != n || m.rows() != n || m.cols() != n) throw std::invalid_argument("verify_isomorphism: dimension mismatch");
    if (rank(m) != n) return false;
    std::vector<Vec> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = m.col(j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m.apply(a.basis_product(i, j)) != product(b, cols[i], cols[j])) return false;
    return true;
}

namespace {

struct RationalOps {
    using F = Rational;
    bool is_zero(const F& x) const { return sgn(x) == 0; }
    double mag(const F& x) const { return sgn(x) == 0 ? 0.0 : 1.0; }
    F from(const Rational& q) const { return q; }
};

template <typename R>
struct ComplexOps {
    using F = Complex<R>;
    R tol;
    bool is_zero(const F& x) const { return abs(x) <= tol; }
    double mag(const F& x) const { return static_cast<double>(abs(x)); }
    F from(const Rational& q) const { return F::from_rational(q); }
};

template <typename Ops>
using FMatrix = std::vector<std::vector<typename Ops::F>>;

// Rows are [coefficients | rhs]. Free variables are zero.
template <typename Ops>
std::optional<std::vector<typename Ops::F>> solve_dense(FMatrix<Ops> rows, std::size_t nunk, const Ops& ops) {
    using F = typename Ops::F;
    std::size_t r = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < nunk && r < rows.size(); ++c) {
        std::size_t best = rows.size();
        double bm = 0;
        for (std::size_t i = r; i < rows.size(); ++i) {
            if (ops.is_zero(rows[i][c])) continue;
            double m = ops.mag(rows[i][c]);
            if (best == rows.size() || m > bm) {
                best = i;
                bm = m;
                if constexpr (std::is_same_v<F, Rational>) break;
            }
        }
        if (best == rows.size()) continue;
        std::swap(rows[r], rows[best]);
        F inv = F(1) / rows[r][c];
        for (std::size_t k = c; k <= nunk; ++k) rows[r][k] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || ops.is_zero(rows[i][c])) continue;
            F f = rows[i][c];
            for (std::size_t k = c; k <= nunk; ++k)
                if (!ops.is_zero(rows[r][k])) rows[i][k] -= f * rows[r][k];
        }
        piv.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (!ops.is_zero(rows[i][nunk])) return std::nullopt;
    std::vector<F> sol(nunk, ops.from(Rational(0)));
    for (std::size_t i = 0; i < piv.size(); ++i) sol[piv[i]] = rows[i][nunk];
    return sol;
}

struct Adapted {
    Matrix basis;                 // columns
    std::vector<std::size_t> deg;
    Algebra table;                // a in the adapted basis
};

Adapted adapted_basis(const Algebra& a) {
    auto ps = power_series(a);
    if (!ps.nilpotent) throw NotNilpotent();
    std::size_t n = a.dim();
    Adapted ad;
    std::vector<Vec> cols;
    for (std::size_t d = 0; d + 1 < ps.chain.size(); ++d)
        for (const auto& v : complement_basis(ps.chain[d + 1], ps.chain[d])) {
            cols.push_back(v);
            ad.deg.push_back(d + 1);
        }
    ad.basis = Matrix::from_columns(cols, n);
    ad.table = transport(a, ad.basis);
    return ad;
}

template <typename Ops>
std::optional<FMatrix<Ops>> lift_adapted(const Adapted& A, const Adapted& B, const FMatrix<Ops>& L, const Ops& ops) {
    using F = typename Ops::F;
    std::size_t N = A.deg.size();
    const auto& deg = A.deg;
    std::vector<std::size_t> d1;
    for (std::size_t i = 0; i < N; ++i)
        if (deg[i] == 1) d1.push_back(i);
    if (L.size() != d1.size()) return std::nullopt;

    FMatrix<Ops> M(N, std::vector<F>(N, ops.from(Rational(0))));
    std::vector<std::vector<char>> known(N, std::vector<char>(N, 0));
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            if (deg[r] < deg[c]) known[r][c] = 1;
    for (std::size_t a = 0; a < d1.size(); ++a)
        for (std::size_t b = 0; b < d1.size(); ++b) {
            M[d1[b]][d1[a]] = L[b][a];
            known[d1[b]][d1[a]] = 1;
        }

    // Sparse structure constants.
    std::vector<std::vector<std::pair<std::size_t, Rational>>> ca(N * N);
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, Rational>>> cb(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < N; ++k) {
                if (sgn(A.table.c(i, j, k)) != 0) ca[i * N + j].push_back({k, A.table.c(i, j, k)});
                if (sgn(B.table.c(i, j, k)) != 0) cb[k].push_back({i, j, B.table.c(i, j, k)});
            }

    std::size_t maxd = *std::max_element(deg.begin(), deg.end());
    std::vector<std::pair<std::size_t, std::size_t>> stages;  // (level, degree); degree 0 means all
    for (std::size_t D = 2; D <= maxd; ++D) stages.push_back({0, D});
    for (std::size_t K = 1; K < maxd; ++K) stages.push_back({K, 0});

    for (auto [K, D] : stages) {
        std::vector<long> idx(N * N, -1);
        std::vector<std::pair<std::size_t, std::size_t>> unk;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c)
                if (!known[r][c] && deg[r] == deg[c] + K && (K > 0 || deg[c] == D)) {
                    idx[r * N + c] = long(unk.size());
                    unk.push_back({r, c});
                }
        if (unk.empty()) continue;
        std::size_t nu = unk.size();
        FMatrix<Ops> rows;
        auto slot = [&](std::size_t r, std::size_t c) -> long {
            if (known[r][c]) return -1;
            if (idx[r * N + c] < 0) throw std::logic_error("lifting solver: entry needed before its stage");
            return idx[r * N + c];
        };
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t r = 0; r < N; ++r) {
                    if (deg[r] != deg[i] + deg[j] + K) continue;
                    if (K == 0 && deg[r] != D) continue;
                    std::vector<F> row(nu + 1, ops.from(Rational(0)));
                    F cst = ops.from(Rational(0));
                    bool any = false;
                    for (const auto& [l, c] : ca[i * N + j]) {
                        long s = slot(r, l);
                        if (s >= 0) {
                            row[s] += ops.from(c);
                            any = true;
                        } else
                            cst += ops.from(c) * M[r][l];
                    }
                    for (const auto& [p, q, c] : cb[r]) {
                        if (deg[p] < deg[i] || deg[q] < deg[j]) continue;  // structural zero factor
                        long sp = slot(p, i), sq = slot(q, j);
                        if (sp >= 0 && sq >= 0) throw std::logic_error("lifting solver: nonlinear term");
                        if (sp >= 0) {
                            row[sp] -= ops.from(c) * M[q][j];
                            any = true;
                        } else if (sq >= 0) {
                            row[sq] -= ops.from(c) * M[p][i];
                            any = true;
                        } else
                            cst -= ops.from(c) * M[p][i] * M[q][j];
                    }
                    if (!any && ops.is_zero(cst)) continue;
                    row[nu] = -cst;
                    rows.push_back(std::move(row));
                }
        auto sol = solve_dense<Ops>(std::move(rows), nu, ops);
        if (!sol) return std::nullopt;
        for (std::size_t u = 0; u < nu; ++u) {
            M[unk[u].first][unk[u].second] = (*sol)[u];
            known[unk[u].first][unk[u].second] = 1;
        }
    }
    // Back to standard coordinates: PB · M · PA⁻¹.
    auto pai = inverse(A.basis);
    FMatrix<Ops> T(N, std::vector<F>(N, ops.from(Rational(0)))), S = T;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            for (std::size_t k = 0; k < N; ++k)
                if (sgn((*pai)(k, c)) != 0) T[r][c] += M[r][k] * ops.from((*pai)(k, c));
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            for (std::size_t k = 0; k < N; ++k)
                if (sgn(B.basis(r, k)) != 0) S[r][c] += ops.from(B.basis(r, k)) * T[k][c];
    return S;
}

const std::vector<Rational>& diag_grid() {
    static const std::vector<Rational> g{Rational(1), Rational(-1), Rational(2), Rational(-2), make_rational(1, 2),
                                         make_rational(-1, 2)};
    return g;
}

// Degree-one blocks: g = 1 diagonal; g = 2 diagonal × off-diagonal {0, ±1}; g ≥ 3 diagonal only.
template <typename T>
std::vector<std::vector<std::vector<T>>> degree_one_blocks(std::size_t g, const std::vector<T>& diag, const std::vector<T>& off) {
    std::vector<std::vector<std::vector<T>>> out;
    if (g == 0 || g > 3) return out;
    if (g == 2) {
        for (const auto& x : diag)
            for (const auto& y : diag)
                for (const auto& u : off)
                    for (const auto& w : off) out.push_back({{x, u}, {w, y}});
        return out;
    }
    std::vector<std::size_t> ix(g, 0);
    while (true) {
        std::vector<std::vector<T>> L(g, std::vector<T>(g, off[0]));
        for (std::size_t k = 0; k < g; ++k) L[k][k] = diag[ix[k]];
        out.push_back(std::move(L));
        std::size_t k = 0;
        while (k < g && ++ix[k] == diag.size()) ix[k++] = 0;
        if (k == g) break;
    }
    return out;
}

}  // namespace

NumericCheck verify_isomorphism_numeric(const Algebra& a, const Algebra& b, const ComplexMatrixB& m) {
    std::size_t n = a.dim();
    if (b.dim() != n || m.size() != n) throw std::invalid_argument("verify_isomorphism: dimension mismatch");
    NumericCheck chk{BigFloat(0), BigFloat(0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r) {
                ComplexB lhs, rhs;
                for (std::size_t k = 0; k < n; ++k)
                    if (sgn(a.c(i, j, k)) != 0) lhs += m[r][k] * ComplexB::from_rational(a.c(i, j, k));
                for (std::size_t p = 0; p < n; ++p)
                    for (std::size_t q = 0; q < n; ++q)
                        if (sgn(b.c(p, q, r)) != 0) rhs += m[p][i] * m[q][j] * ComplexB::from_rational(b.c(p, q, r));
                BigFloat d = abs(lhs - rhs);
                if (d > chk.residual) chk.residual = d;
            }
    auto w = m;
    BigFloat minp(-1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (abs(w[i][c]) > abs(w[best][c])) best = i;
        std::swap(w[c], w[best]);
        BigFloat pm = abs(w[c][c]);
        if (minp < 0 || pm < minp) minp = pm;
        if (pm == 0) break;
        for (std::size_t i = c + 1; i < n; ++i) {
            ComplexB f = w[i][c] / w[c][c];
            for (std::size_t k = c; k < n; ++k) w[i][k] -= f * w[c][k];
        }
    }
    chk.min_pivot = minp < 0 ? BigFloat(0) : minp;
    return chk;
}

std::optional<std::vector<std::size_t>> find_tail_permutation(const Algebra& a, const Algebra& b, std::size_t fixed) {
    std::size_t n = a.dim();
    if (b.dim() != n || fixed > n) return std::nullopt;
    std::vector<std::size_t> tail(n - fixed);
    std::iota(tail.begin(), tail.end(), fixed);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (std::size_t k = 0; k < tail.size(); ++k) perm[fixed + k] = tail[k];
        if (permute(a, perm).same_table(b)) return perm;
    } while (std::next_permutation(tail.begin(), tail.end()));
    return std::nullopt;
}

Matrix permutation_matrix(const std::vector<std::size_t>& perm) {
    Matrix m(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) m(perm[i], i) = 1;
    return m;
}

std::optional<Matrix> lift_isomorphism(const Algebra& a, const Algebra& b, const Matrix& degree_one) {
    if (a.dim() != b.dim()) return std::nullopt;
    Adapted A = adapted_basis(a), B = adapted_basis(b);
    if (A.deg != B.deg) return std::nullopt;
    FMatrix<RationalOps> L(degree_one.rows(), std::vector<Rational>(degree_one.cols()));
    for (std::size_t r = 0; r < degree_one.rows(); ++r)
        for (std::size_t c = 0; c < degree_one.cols(); ++c) L[r][c] = degree_one(r, c);
    auto M = lift_adapted(A, B, L, RationalOps{});
    if (!M) return std::nullopt;
    Matrix m(a.dim(), a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) m(r, c) = (*M)[r][c];
    if (!verify_isomorphism(a, b, m)) return std::nullopt;
    return m;
}

std::optional<IsoWitness> search_isomorphism(const Algebra& a, const Algebra& b, std::size_t fixed) {
    if (a.dim() != b.dim()) return std::nullopt;
    if (auto p = find_tail_permutation(a, b, fixed)) return IsoWitness{IsoWitness::Kind::Permutation, permutation_matrix(*p), *p};
    if (fingerprint(a) != fingerprint(b)) return std::nullopt;
    Adapted A = adapted_basis(a), B = adapted_basis(b);
    if (A.deg != B.deg) return std::nullopt;
    std::size_t g = std::count(A.deg.begin(), A.deg.end(), std::size_t(1));
    std::vector<Rational> off{Rational(0), Rational(1), Rational(-1)};
    for (const auto& L : degree_one_blocks<Rational>(g, diag_grid(), off)) {
        std::optional<FMatrix<RationalOps>> M;
        try {
            M = lift_adapted(A, B, L, RationalOps{});
        } catch (const std::logic_error&) {
            return std::nullopt;
        }
        if (!M) continue;
        Matrix m(a.dim(), a.dim());
        for (std::size_t r = 0; r < a.dim(); ++r)
            for (std::size_t c = 0; c < a.dim(); ++c) m(r, c) = (*M)[r][c];
        if (verify_isomorphism(a, b, m)) return IsoWitness{IsoWitness::Kind::Lifted, m, {}};
    }
    return std::nullopt;
}

std::optional<ComplexWitness> search_complex_isomorphism(const Algebra& a, const Algebra& b, unsigned bits,
                                                         const BigFloat& tol) {
    if (a.dim() != b.dim()) return std::nullopt;
    Adapted A = adapted_basis(a), B = adapted_basis(b);
    if (A.deg != B.deg) return std::nullopt;
    std::size_t g = std::count(A.deg.begin(), A.deg.end(), std::size_t(1));
    auto roots = [&](auto tag) {
        using C = decltype(tag);
        std::vector<C> d;
        for (const auto& q : diag_grid()) d.push_back(C::from_rational(q));
        for (long k = 2; k < long(a.dim()); ++k) d.push_back(principal_pow(C::from_rational(Rational(-1)), make_rational(1, k)));
        return d;
    };
    auto offs = [](auto tag) {
        using C = decltype(tag);
        return std::vector<C>{C::from_rational(Rational(0)), C::from_rational(Rational(1)), C::from_rational(Rational(-1))};
    };
    ComplexOps<double> dops{1e-9};
    auto dblocks = degree_one_blocks<ComplexD>(g, roots(ComplexD{}), offs(ComplexD{}));
    PrecisionScope scope(bits);
    auto bdiag = roots(ComplexB{});
    auto bblocks = degree_one_blocks<ComplexB>(g, bdiag, offs(ComplexB{}));
    ComplexOps<BigFloat> bops{tol};
    for (std::size_t t = 0; t < dblocks.size(); ++t) {
        std::optional<FMatrix<ComplexOps<double>>> M;
        try {
            M = lift_adapted(A, B, dblocks[t], dops);
        } catch (const std::logic_error&) {
            return std::nullopt;
        }
        if (!M) continue;
        auto MB = lift_adapted(A, B, bblocks[t], bops);
        if (!MB) continue;
        auto chk = verify_isomorphism_numeric(a, b, *MB);
        if (chk.pass(tol)) return ComplexWitness{*MB, chk, bblocks[t]};
    }
    return std::nullopt;
}

SweepResult generator_sweep(const Algebra& a, const Algebra& b, std::size_t samples, std::mt19937_64& rng) {
    std::size_t n = a.dim();
    SweepResult res;
    if (b.dim() != n || n < 2) return res;
    std::vector<Rational> steps(n);
    for (std::size_t i = 0; i + 2 < n; ++i) {
        Vec p = a.basis_product(i, 0);
        for (std::size_t k = 0; k < n; ++k)
            if ((k == i + 1) != (sgn(p[k]) != 0)) return res;
        steps[i] = p[i + 1];
    }
    auto draw = [&]() {
        long num = long(rng() % 7) - 3;
        long den = long(rng() % 3) + 1;
        return make_rational(num, den);
    };
    for (std::size_t t = 0; t < samples; ++t) {
        ++res.tried;
        std::vector<Vec> cols(n);
        cols[0].resize(n);
        cols[n - 1].resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            cols[0][k] = draw();
            cols[n - 1][k] = draw();
        }
        for (std::size_t i = 0; i + 2 < n; ++i) {
            cols[i + 1] = product(b, cols[i], cols[0]);
            for (auto& v : cols[i + 1]) v /= steps[i];
        }
        Matrix m = Matrix::from_columns(cols, n);
        if (verify_isomorphism(a, b, m)) {
            res.witness = m;
            return res;
        }
    }
    return res;
}

std::vector<PairVerdict> DistinguishReport::collisions() const {
    std::vector<PairVerdict> out;
    for (const auto& p : pairs)
        if (!p.separated) out.push_back(p);
    return out;
}

std::string DistinguishReport::markdown() const {
    std::ostringstream os;
    os << "| first | second | verdict | separating invariant |\n|---|---|---|---|\n";
    for (const auto& p : pairs)
        os << "| " << labels[p.i] << " | " << labels[p.j] << " | "
           << (p.separated ? "distinguished" : "collision: not separated by implemented invariants") << " | "
           << (p.separated ? p.invariant : "-") << " |\n";
    return os.str();
}

std::string DistinguishReport::csv() const {
    std::ostringstream os;
    os << "first,second,verdict,invariant\n";
    for (const auto& p : pairs)
        os << labels[p.i] << "," << labels[p.j] << "," << (p.separated ? "distinguished" : "collision") << ","
           << (p.separated ? p.invariant : "") << "\n";
    return os.str();
}

DistinguishReport distinguish_report(const std::vector<std::pair<std::string, Algebra>>& algebras) {
    DistinguishReport r;
    std::vector<Fingerprint> fps;
    for (const auto& [l, a] : algebras) {
        r.labels.push_back(l);
        fps.push_back(fingerprint(a));
    }
    for (std::size_t i = 0; i < fps.size(); ++i)
        for (std::size_t j = i + 1; j < fps.size(); ++j) {
            PairVerdict v{i, j, false, {}};
            if (algebras[i].second.dim() != algebras[j].second.dim()) {
                v.separated = true;
                v.invariant = "dim";
            } else if (auto s = separating_invariant(fps[i], fps[j])) {
                v.separated = true;
                v.invariant = *s;
            }
            r.pairs.push_back(v);
        }
    return r;
}

}  // namespace zex
