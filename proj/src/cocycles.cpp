#include "zex/cocycles.hpp"

#include "zex/catalog.hpp"

#include <sstream>

namespace zex {

BilinearForm BilinearForm::delta(std::size_t n, std::size_t i, std::size_t j) {
    BilinearForm f(n);
    f.m(i, j) = 1;
    return f;
}

BilinearForm BilinearForm::from_flat(const Vec& v, std::size_t n) {
    if (v.size() != n * n) throw std::invalid_argument("from_flat: size mismatch");
    BilinearForm f(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) f.m(i, j) = v[i * n + j];
    return f;
}

Vec BilinearForm::flat() const { return m.data(); }

Rational BilinearForm::operator()(const Vec& x, const Vec& y) const {
    Rational s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(y[j]) != 0 && sgn(m(i, j)) != 0) s += x[i] * m(i, j) * y[j];
    }
    return s;
}

BilinearForm combine(const std::vector<BilinearForm>& forms, const Vec& coeffs) {
    if (forms.empty() || forms.size() != coeffs.size()) throw std::invalid_argument("combine: size mismatch");
    BilinearForm r(forms[0].ambient());
    for (std::size_t i = 0; i < forms.size(); ++i)
        if (sgn(coeffs[i]) != 0) r = r + coeffs[i] * forms[i];
    return r;
}

Vec CohomologySpaces::project(const Vec& v) const {
    std::size_t h = h2_reps.size(), b = b2.dim();
    Vec out(h);
    for (std::size_t r = 0; r < h; ++r) {
        Rational s = 0;
        for (std::size_t c = 0; c < v.size(); ++c)
            if (sgn(v[c]) != 0 && sgn(coords(b + r, c)) != 0) s += coords(b + r, c) * v[c];
        out[r] = s;
    }
    return out;
}

Matrix CohomologySpaces::projection_matrix() const {
    std::size_t h = h2_reps.size(), b = b2.dim(), N = n * n;
    Matrix P(h, N);
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < N; ++c) P(r, c) = coords(b + r, c);
    return P;
}

Matrix CohomologySpaces::outside_z2_matrix() const {
    std::size_t N = n * n, z = z2.dim();
    Matrix P(N - z, N);
    for (std::size_t r = 0; r < N - z; ++r)
        for (std::size_t c = 0; c < N; ++c) P(r, c) = coords(z + r, c);
    return P;
}

namespace {

Matrix cocycle_system(const Algebra& a) {
    std::size_t n = a.dim();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec r(n * n);
                for (std::size_t p = 0; p < n; ++p) {
                    if (sgn(a.c(i, j, p)) != 0) r[p * n + k] += a.c(i, j, p);
                    Rational s = a.c(j, k, p) + a.c(k, j, p);
                    if (sgn(s) != 0) r[i * n + p] -= s;
                }
                if (!is_zero(r)) rows.push_back(std::move(r));
            }
    return Matrix::from_rows(rows, n * n);
}

}  // namespace

Subspace cocycle_space(const Algebra& a) { return kernel_basis(cocycle_system(a)); }

BilinearForm coboundary_of(const Algebra& a, const Vec& f) {
    std::size_t n = a.dim();
    if (f.size() != n) throw std::invalid_argument("coboundary_of: dimension mismatch");
    BilinearForm r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational s = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(f[k]) != 0) s += f[k] * a.c(i, j, k);
            r.m(i, j) = s;
        }
    return r;
}

Subspace coboundary_space(const Algebra& a) {
    std::size_t n = a.dim();
    std::vector<Vec> vecs;
    for (std::size_t k = 0; k < n; ++k) vecs.push_back(coboundary_of(a, unit_vector(n, k)).flat());
    return Subspace::span(vecs, n * n);
}

std::optional<std::array<std::size_t, 3>> cocycle_violation(const Algebra& a, const BilinearForm& f) {
    std::size_t n = a.dim();
    if (f.ambient() != n) throw std::invalid_argument("cocycle check: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Rational s = 0;
                for (std::size_t p = 0; p < n; ++p) {
                    if (sgn(a.c(i, j, p)) != 0) s += a.c(i, j, p) * f.m(p, k);
                    s -= (a.c(j, k, p) + a.c(k, j, p)) * f.m(i, p);
                }
                if (sgn(s) != 0) return std::array<std::size_t, 3>{i, j, k};
            }
    return std::nullopt;
}

namespace {

CohomologySpaces assemble(const Algebra& a, Subspace z2, Subspace b2, std::vector<BilinearForm> reps, bool listed) {
    std::size_t n = a.dim(), N = n * n;
    CohomologySpaces cs;
    cs.n = n;
    cs.z2 = std::move(z2);
    cs.b2 = std::move(b2);
    cs.h2_reps = std::move(reps);
    cs.listed_reps = listed;
    std::vector<Vec> cols = cs.b2.basis();
    for (const auto& r : cs.h2_reps) cols.push_back(r.flat());
    for (auto& v : complement_basis(cs.z2, Subspace::whole(N))) cols.push_back(std::move(v));
    cs.basis_matrix = Matrix::from_columns(cols, N);
    auto inv = inverse(cs.basis_matrix);
    if (!inv) throw std::logic_error("cohomology: representatives are not a basis of Z²/B²");
    cs.coords = std::move(*inv);
    return cs;
}

}  // namespace

CohomologySpaces cohomology_canonical(const Algebra& a) {
    Subspace z2 = cocycle_space(a);
    Subspace b2 = coboundary_space(a);
    std::vector<BilinearForm> reps;
    for (const auto& v : complement_basis(b2, z2)) reps.push_back(BilinearForm::from_flat(v, a.dim()));
    return assemble(a, std::move(z2), std::move(b2), std::move(reps), false);
}

CohomologySpaces cohomology_with_reps(const Algebra& a, const std::vector<BilinearForm>& reps) {
    Subspace z2 = cocycle_space(a);
    Subspace b2 = coboundary_space(a);
    std::vector<Vec> all = b2.basis();
    for (const auto& r : reps) {
        if (!z2.contains(r.flat())) throw std::invalid_argument("cohomology: representative is not a cocycle");
        all.push_back(r.flat());
    }
    if (Subspace::span(all, a.dim() * a.dim()).dim() != z2.dim() || b2.dim() + reps.size() != z2.dim())
        throw std::invalid_argument("cohomology: representatives do not form a basis of H²");
    return assemble(a, std::move(z2), std::move(b2), reps, true);
}

CohomologySpaces cohomology(const Algebra& a) {
    if (auto reps = catalog_h2_reps(a)) return cohomology_with_reps(a, *reps);
    return cohomology_canonical(a);
}

Subspace cocycle_annihilator(const Algebra& a, const std::vector<BilinearForm>& thetas) {
    std::size_t n = a.dim();
    std::vector<Vec> rows;
    for (std::size_t t = 0; t < thetas.size(); ++t) {
        if (auto v = cocycle_violation(a, thetas[t])) throw NotCocycle("#" + std::to_string(t + 1), *v);
        const auto& m = thetas[t].m;
        for (std::size_t j = 0; j < n; ++j) {
            Vec r1(n), r2(n);
            for (std::size_t i = 0; i < n; ++i) {
                r1[i] = m(i, j);
                r2[i] = m(j, i);
            }
            if (!is_zero(r1)) rows.push_back(std::move(r1));
            if (!is_zero(r2)) rows.push_back(std::move(r2));
        }
    }
    if (rows.empty()) return Subspace::whole(n);
    return kernel_basis(Matrix::from_rows(rows, n));
}

std::vector<NamedForm> parse_forms(const std::string& text, std::size_t n) {
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<NamedForm> out;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> t;
        std::string tok;
        while (ls >> tok) t.push_back(tok);
        if (t.empty()) continue;
        if (t[0] != "form") continue;  // other directives belong to enclosing formats
        if (t.size() < 3 || t[2] != ":" || (t.size() - 3) % 3 != 0)
            throw ParseError(lineno, "expected 'form <name> : c i j [c i j ...]'");
        NamedForm f{t[1], BilinearForm(n)};
        for (std::size_t q = 3; q < t.size(); q += 3) {
            Rational c;
            if (!try_parse_rational(t[q], c)) throw ParseError(lineno, "bad coefficient '" + t[q] + "'");
            std::size_t idx[2];
            for (int s = 0; s < 2; ++s) {
                Rational v;
                if (!try_parse_rational(t[q + 1 + s], v) || v.get_den() != 1 || v < 1 || v > static_cast<long>(n))
                    throw ParseError(lineno, "index out of range '" + t[q + 1 + s] + "'");
                idx[s] = v.get_num().get_ui() - 1;
            }
            f.form.m(idx[0], idx[1]) += c;
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::string print_form(const NamedForm& f) {
    std::ostringstream os;
    os << "form " << f.name << " :";
    const auto& m = f.form.m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) != 0) os << " " << to_string(m(i, j)) << " " << i + 1 << " " << j + 1;
    return os.str();
}

std::string print_forms(const std::vector<NamedForm>& fs) {
    std::string s;
    for (const auto& f : fs) s += print_form(f) + "\n";
    return s;
}

}  // namespace zex
