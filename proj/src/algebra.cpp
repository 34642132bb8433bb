#include "zex/algebra.hpp"

#include <sstream>

namespace zex {

Vec Algebra::basis_product(std::size_t i, std::size_t j) const {
    Vec v(n_);
    for (std::size_t k = 0; k < n_; ++k) v[k] = c(i, j, k);
    return v;
}

bool Algebra::product_is_zero(std::size_t i, std::size_t j) const {
    for (std::size_t k = 0; k < n_; ++k)
        if (sgn(c(i, j, k)) != 0) return false;
    return true;
}

void Algebra::set_param(const std::string& name, const Rational& v) {
    for (auto& p : params_)
        if (p.first == name) {
            p.second = v;
            return;
        }
    params_.emplace_back(name, v);
}

std::optional<Rational> Algebra::param(const std::string& name) const {
    for (const auto& p : params_)
        if (p.first == name) return p.second;
    return std::nullopt;
}

std::vector<std::size_t> PowerSeries::dims() const {
    std::vector<std::size_t> d;
    for (const auto& s : chain) d.push_back(s.dim());
    return d;
}

Vec product(const Algebra& a, const Vec& x, const Vec& y) {
    std::size_t n = a.dim();
    if (x.size() != n || y.size() != n) throw std::invalid_argument("product: dimension mismatch");
    Vec r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(y[j]) == 0) continue;
            Rational s = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(a.c(i, j, k)) != 0) r[k] += s * a.c(i, j, k);
        }
    }
    return r;
}

Subspace product_space(const Algebra& a, const Subspace& U, const Subspace& V) {
    std::vector<Vec> vecs;
    for (const auto& u : U.basis())
        for (const auto& v : V.basis()) vecs.push_back(product(a, u, v));
    return Subspace::span(vecs, a.dim());
}

std::vector<ZinbielViolation> check_zinbiel(const Algebra& a) {
    std::size_t n = a.dim();
    std::vector<ZinbielViolation> bad;
    std::vector<Vec> prods(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) prods[i * n + j] = a.basis_product(i, j);
    for (std::size_t i = 0; i < n; ++i) {
        Vec ei = unit_vector(n, i);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec lhs = product(a, prods[i * n + j], unit_vector(n, k));
                Vec inner = prods[j * n + k];
                for (std::size_t t = 0; t < n; ++t) inner[t] += prods[k * n + j][t];
                Vec rhs = product(a, ei, inner);
                for (std::size_t t = 0; t < n; ++t) lhs[t] -= rhs[t];
                if (!is_zero(lhs)) bad.push_back({i, j, k, lhs});
            }
    }
    return bad;
}

PowerSeries power_series(const Algebra& a) {
    std::size_t n = a.dim();
    PowerSeries ps;
    ps.chain.push_back(Subspace::whole(n));
    while (true) {
        std::size_t i = ps.chain.size();  // computing A^{i+1}
        std::vector<Vec> vecs;
        for (std::size_t k = 1; k <= i; ++k) {
            const auto& U = ps.chain[k - 1];
            const auto& V = ps.chain[i - k];
            for (const auto& u : U.basis())
                for (const auto& v : V.basis()) vecs.push_back(product(a, u, v));
        }
        Subspace next = Subspace::span(vecs, n);
        if (next == ps.chain.back()) {
            ps.nilpotent = next.dim() == 0;
            return ps;
        }
        ps.chain.push_back(next);
        if (next.dim() == 0) {
            ps.nilpotent = true;
            return ps;
        }
    }
}

std::vector<Subspace> naive_power_series(const Algebra& a) {
    std::size_t n = a.dim();
    Subspace A = Subspace::whole(n);
    std::vector<Subspace> chain{A};
    while (true) {
        const Subspace& last = chain.back();
        Subspace next = sum(product_space(a, last, A), product_space(a, A, last));
        if (next == last) return chain;
        chain.push_back(next);
        if (next.dim() == 0) return chain;
    }
}

std::optional<std::size_t> nilpotency_index(const Algebra& a) {
    PowerSeries ps = power_series(a);
    if (!ps.nilpotent) return std::nullopt;
    if (a.dim() == 0) return 1;
    return ps.chain.size();  // chain[size-1] = A^{size} = 0
}

Matrix left_mult(const Algebra& a, std::size_t i) {
    std::size_t n = a.dim();
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) m(k, j) = a.c(i, j, k);
    return m;
}

Matrix right_mult(const Algebra& a, std::size_t j) {
    std::size_t n = a.dim();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) m(k, i) = a.c(i, j, k);
    return m;
}

namespace {

// Rows encode the linear conditions on x: side 'l' uses x∘e_j, side 'r' uses e_j∘x.
Matrix annihilator_system(const Algebra& a, bool left, bool right) {
    std::size_t n = a.dim();
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            if (left) {
                Vec r(n);
                for (std::size_t i = 0; i < n; ++i) r[i] = a.c(i, j, k);
                if (!is_zero(r)) rows.push_back(std::move(r));
            }
            if (right) {
                Vec r(n);
                for (std::size_t i = 0; i < n; ++i) r[i] = a.c(j, i, k);
                if (!is_zero(r)) rows.push_back(std::move(r));
            }
        }
    return Matrix::from_rows(rows, n);
}

}  // namespace

Subspace annihilator(const Algebra& a) { return kernel_basis(annihilator_system(a, true, true)); }
Subspace left_annihilator(const Algebra& a) { return kernel_basis(annihilator_system(a, true, false)); }
Subspace right_annihilator(const Algebra& a) { return kernel_basis(annihilator_system(a, false, true)); }

bool is_null_filiform(const Algebra& a) {
    auto d = power_series(a).dims();
    std::size_t n = a.dim();
    if (d.size() != n + 1) return false;
    for (std::size_t i = 1; i <= n + 1; ++i)
        if (d[i - 1] != n + 1 - i) return false;
    return true;
}

bool is_filiform(const Algebra& a) {
    PowerSeries ps = power_series(a);
    auto d = ps.dims();
    std::size_t n = a.dim();
    if (!ps.nilpotent || n < 2) return false;
    for (std::size_t i = 2; i <= n; ++i) {
        std::size_t di = i - 1 < d.size() ? d[i - 1] : 0;
        if (di != n - i) return false;
    }
    return true;
}

std::size_t generator_count(const Algebra& a) {
    PowerSeries ps = power_series(a);
    if (!ps.nilpotent) throw NotNilpotent();
    std::size_t d2 = ps.chain.size() > 1 ? ps.chain[1].dim() : 0;
    return a.dim() - d2;
}

bool is_ideal(const Algebra& a, const Subspace& s) {
    Subspace A = Subspace::whole(a.dim());
    return s.contains(product_space(a, s, A)) && s.contains(product_space(a, A, s));
}

Quotient quotient_algebra(const Algebra& a, const Subspace& ideal) {
    std::size_t n = a.dim();
    if (ideal.ambient_dim() != n) throw std::invalid_argument("quotient_algebra: dimension mismatch");
    if (!is_ideal(a, ideal)) throw std::invalid_argument("quotient_algebra: subspace is not an ideal");
    std::vector<bool> piv(n, false);
    for (auto p : ideal.pivots()) piv[p] = true;
    Quotient q;
    for (std::size_t i = 0; i < n; ++i)
        if (!piv[i]) q.lift.push_back(i);
    std::size_t m = q.lift.size();
    // Basis [e_lift..., ideal basis]; the projection keeps the first m coordinates.
    std::vector<Vec> cols;
    for (auto i : q.lift) cols.push_back(unit_vector(n, i));
    for (const auto& v : ideal.basis()) cols.push_back(v);
    Matrix P = Matrix::from_columns(cols, n);
    Matrix Pinv = *inverse(P);
    q.projection = Matrix(m, n);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) q.projection(r, c) = Pinv(r, c);
    q.algebra = Algebra(m, a.label().empty() ? std::string() : a.label() + "/I");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Vec p = q.projection.apply(a.basis_product(q.lift[i], q.lift[j]));
            for (std::size_t k = 0; k < m; ++k) q.algebra.set(i, j, k, p[k]);
        }
    return q;
}

Algebra transport(const Algebra& a, const Matrix& p) {
    std::size_t n = a.dim();
    auto pinv = inverse(p);
    if (!pinv) throw std::invalid_argument("transport: singular change of basis");
    Algebra b(n, a.label());
    for (const auto& kv : a.params()) b.set_param(kv.first, kv.second);
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < n; ++i) cols.push_back(p.col(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec v = pinv->apply(product(a, cols[i], cols[j]));
            for (std::size_t k = 0; k < n; ++k) b.set(i, j, k, v[k]);
        }
    return b;
}

Algebra permute(const Algebra& a, const std::vector<std::size_t>& perm) {
    std::size_t n = a.dim();
    if (perm.size() != n) throw std::invalid_argument("permute: size mismatch");
    Algebra b(n, a.label());
    for (const auto& kv : a.params()) b.set_param(kv.first, kv.second);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(a.c(i, j, k)) != 0) b.set(perm[i], perm[j], perm[k], a.c(i, j, k));
    return b;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

std::size_t parse_index(const std::string& tok, std::size_t n, std::size_t line) {
    std::size_t v = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') throw ParseError(line, "bad index '" + tok + "'");
        v = v * 10 + static_cast<std::size_t>(ch - '0');
        if (v > 100000) throw ParseError(line, "index too large");
    }
    if (tok.empty() || v < 1 || v > n) throw ParseError(line, "index out of range '" + tok + "'");
    return v - 1;
}

}  // namespace

Algebra parse_zalg(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::optional<std::size_t> dim;
    std::string label;
    std::vector<std::pair<std::string, Rational>> params;
    struct Mul {
        std::size_t line;
        std::vector<std::string> toks;
    };
    std::vector<Mul> muls;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        auto toks = split_ws(body);
        if (toks.empty()) continue;
        if (!have_header) {
            if (toks.size() != 2 || toks[0] != "zalg" || toks[1] != "1")
                throw ParseError(lineno, "expected header 'zalg 1'");
            have_header = true;
            continue;
        }
        if (toks[0] == "dim") {
            if (toks.size() != 2 || dim) throw ParseError(lineno, "bad or repeated dim line");
            Rational d;
            if (!try_parse_rational(toks[1], d) || d.get_den() != 1 || sgn(d) < 0 || d > 1000)
                throw ParseError(lineno, "bad dimension");
            dim = d.get_num().get_ui();
        } else if (toks[0] == "label") {
            auto p = body.find("label");
            std::string rest = body.substr(p + 5);
            auto b = rest.find_first_not_of(" \t");
            auto e = rest.find_last_not_of(" \t\r");
            label = b == std::string::npos ? std::string() : rest.substr(b, e - b + 1);
        } else if (toks[0] == "param") {
            Rational v;
            if (toks.size() != 3 || !try_parse_rational(toks[2], v)) throw ParseError(lineno, "bad param line");
            params.emplace_back(toks[1], v);
        } else if (toks[0] == "mul") {
            muls.push_back({lineno, toks});
        } else {
            throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
        }
    }
    if (!have_header) throw ParseError(lineno, "missing header 'zalg 1'");
    if (!dim) throw ParseError(lineno, "missing dim line");
    Algebra a(*dim, label);
    for (const auto& p : params) a.set_param(p.first, p.second);
    std::vector<bool> seen(*dim * *dim, false);
    for (const auto& m : muls) {
        const auto& t = m.toks;
        if (t.size() < 6 || t[3] != ":" || (t.size() - 4) % 2 != 0)
            throw ParseError(m.line, "expected 'mul i j : c k [c k ...]'");
        std::size_t i = parse_index(t[1], *dim, m.line);
        std::size_t j = parse_index(t[2], *dim, m.line);
        if (seen[i * *dim + j]) throw ParseError(m.line, "repeated product line");
        seen[i * *dim + j] = true;
        for (std::size_t q = 4; q < t.size(); q += 2) {
            Rational c;
            if (!try_parse_rational(t[q], c)) throw ParseError(m.line, "bad coefficient '" + t[q] + "'");
            std::size_t k = parse_index(t[q + 1], *dim, m.line);
            a.add(i, j, k, c);
        }
    }
    return a;
}

std::string print_zalg(const Algebra& a) {
    std::ostringstream os;
    os << "zalg 1\n";
    os << "dim " << a.dim() << "\n";
    if (!a.label().empty()) os << "label " << a.label() << "\n";
    for (const auto& p : a.params()) os << "param " << p.first << " " << to_string(p.second) << "\n";
    std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a.product_is_zero(i, j)) continue;
            os << "mul " << i + 1 << " " << j + 1 << " :";
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(a.c(i, j, k)) != 0) os << " " << to_string(a.c(i, j, k)) << " " << k + 1;
            os << "\n";
        }
    return os.str();
}

}  // namespace zex
