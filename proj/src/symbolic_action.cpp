#include "zex/symbolic_action.hpp"

#include <mutex>

namespace zex {

namespace {

std::vector<Poly> poly_product(const Algebra& a, const std::vector<Poly>& x, const std::vector<Poly>& y) {
    std::size_t n = a.dim();
    std::vector<Poly> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero() || a.product_is_zero(i, j)) continue;
            Poly xy = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(a.c(i, j, k)) != 0) r[k] += xy * a.c(i, j, k);
        }
    }
    return r;
}

template <typename R>
std::vector<Complex<R>> complex_product(const Algebra& a, const std::vector<Complex<R>>& x, const std::vector<Complex<R>>& y) {
    std::size_t n = a.dim();
    std::vector<Complex<R>> r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a.product_is_zero(i, j)) continue;
            Complex<R> xy = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(a.c(i, j, k)) != 0) r[k] += xy * Complex<R>::from_rational(a.c(i, j, k));
        }
    return r;
}

// Coefficient c with e_i∘e_1 = c·e_{i+1}, if the product has that shape.
std::optional<Rational> step_coefficient(const Algebra& a, std::size_t i) {
    Vec p = a.basis_product(i, 0);
    for (std::size_t k = 0; k < p.size(); ++k)
        if (k != i + 1 && sgn(p[k]) != 0) return std::nullopt;
    if (sgn(p[i + 1]) == 0) return std::nullopt;
    return p[i + 1];
}

const CohomologySpaces& family_cohomology(FamilyKind f, std::size_t n) {
    static std::mutex mu;
    static std::map<std::pair<int, std::size_t>, CohomologySpaces> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(int(f), n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, cohomology(make_f(int(f), n))).first;
    return it->second;
}

Rational draw_nonzero(std::mt19937_64& rng) {
    long num = long(rng() % 3) + 1;
    long den = long(rng() % 3) + 1;
    if (rng() % 2) num = -num;
    return make_rational(num, den);
}

Rational draw_any(std::mt19937_64& rng) {
    long num = long(rng() % 7) - 3;
    long den = long(rng() % 3) + 1;
    return make_rational(num, den);
}

Rational power(const Rational& x, unsigned k) {
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) r *= x;
    return r;
}

std::string pname(std::size_t i) { return "a_" + std::to_string(i) + "_1"; }

}  // namespace

std::optional<Matrix> generator_images(const Algebra& a, const Vec& img_e1, const Vec& img_elast) {
    std::size_t n = a.dim();
    if (img_e1.size() != n || img_elast.size() != n) throw std::invalid_argument("generator image has wrong length");
    std::vector<Vec> cols(n);
    cols[0] = img_e1;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        auto c = step_coefficient(a, i);
        if (!c) return std::nullopt;
        Vec p = product(a, cols[i], cols[0]);
        for (auto& v : p) v /= *c;
        cols[i + 1] = std::move(p);
    }
    if (n > 1) cols[n - 1] = img_elast;
    return Matrix::from_columns(cols, n);
}

bool is_automorphism(const Algebra& a, const Matrix& phi) {
    std::size_t n = a.dim();
    if (phi.rows() != n || phi.cols() != n) return false;
    if (rank(phi) != n) return false;
    std::vector<Vec> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = phi.col(j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec lhs = phi.apply(a.basis_product(i, j));
            if (lhs != product(a, cols[i], cols[j])) return false;
        }
    return true;
}

std::optional<Matrix> extend_from_generators(const Algebra& a, const Vec& img_e1, const Vec& img_elast) {
    auto m = generator_images(a, img_e1, img_elast);
    if (!m || !is_automorphism(a, *m)) return std::nullopt;
    return m;
}

Poly AutomorphismTemplate::nn_law() const {
    switch (family) {
        case FamilyKind::F1: return Poly::var("y");
        case FamilyKind::F2: return Poly::var("x", unsigned(n - 2));
        default: return side_root ? Poly::var("s") : Poly::var("x", unsigned((n - 1) / 2));
    }
}

Matrix AutomorphismTemplate::instantiate(const std::map<std::string, Rational>& values) const {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = entry[i][j].eval(values);
    return m;
}

AutomorphismTemplate automorphism_template(FamilyKind f, std::size_t n) {
    if (f != FamilyKind::F1 && f != FamilyKind::F2 && f != FamilyKind::F3) throw InvalidFamily("templates exist for F1, F2, F3");
    AutomorphismTemplate t;
    t.family = f;
    t.n = n;
    t.side_root = f == FamilyKind::F3 && n % 2 == 0;
    t.side_square = Poly::var("x", unsigned(n - 1));
    t.free_params.push_back("x");
    for (std::size_t i = 2; i + 1 <= n; ++i) t.free_params.push_back(pname(i));
    t.free_params.push_back("w");
    t.free_params.push_back("z");
    if (f == FamilyKind::F1) t.free_params.push_back("y");
    if (t.side_root) t.free_params.push_back("s");

    Algebra a = make_f(int(f), n);
    std::vector<std::vector<Poly>> cols(n, std::vector<Poly>(n));
    cols[0][0] = Poly::var("x");
    for (std::size_t i = 2; i + 1 <= n; ++i) cols[0][i - 1] = Poly::var(pname(i));
    cols[0][n - 1] = Poly::var("w");
    for (std::size_t i = 0; i + 2 < n; ++i) {
        Rational c = *step_coefficient(a, i);
        auto p = poly_product(a, cols[i], cols[0]);
        for (auto& q : p) q *= Rational(1 / c);
        cols[i + 1] = std::move(p);
    }
    cols[n - 1][n - 2] = Poly::var("z");
    cols[n - 1][n - 1] = t.nn_law();
    t.entry.assign(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t.entry[i][j] = cols[j][i];
    return t;
}

std::size_t AutReport::passed() const {
    std::size_t k = 0;
    for (const auto& s : samples) k += s.pass();
    return k;
}

AutReport verify_aut_template(FamilyKind f, std::size_t n, std::size_t samples, std::mt19937_64& rng, bool w_zero) {
    AutomorphismTemplate t = automorphism_template(f, n);
    Algebra a = make_f(int(f), n);
    AutReport rep{f, n, {}, w_zero};
    for (std::size_t k = 0; k < samples; ++k) {
        AutSample s;
        auto& v = s.values;
        Rational x;
        if (t.side_root) {
            Rational root = draw_nonzero(rng);
            x = root * root;
            v["s"] = power(root, unsigned(n - 1));
        } else {
            x = draw_nonzero(rng);
        }
        v["x"] = x;
        for (std::size_t i = 2; i + 1 <= n; ++i) v[pname(i)] = draw_any(rng);
        v["w"] = w_zero ? Rational(0) : draw_nonzero(rng);
        v["z"] = draw_any(rng);
        if (f == FamilyKind::F1) v["y"] = draw_nonzero(rng);

        Vec e1(n), en(n);
        e1[0] = x;
        for (std::size_t i = 2; i + 1 <= n; ++i) e1[i - 1] = v[pname(i)];
        e1[n - 1] = v["w"];
        en[n - 2] = v["z"];
        Rational law = t.nn_law().eval(v);
        en[n - 1] = law;
        auto m = extend_from_generators(a, e1, en);
        s.extended = m.has_value();
        if (m) {
            s.diagonal_ok = true;
            for (std::size_t i = 0; i + 1 < n; ++i)
                if ((*m)(i, i) != power(x, unsigned(i + 1))) s.diagonal_ok = false;
            s.nn_ok = (*m)(n - 1, n - 1) == law;
            s.pattern_ok = (*m)(n - 1, 0) == v["w"] && (*m)(n - 2, n - 1) == v["z"];
            for (std::size_t j = 1; j + 1 < n; ++j)
                if (sgn((*m)(n - 1, j)) != 0) s.pattern_ok = false;
            for (std::size_t i = 0; i + 2 < n; ++i)
                if (sgn((*m)(i, n - 1)) != 0) s.pattern_ok = false;
            s.derived_ok = *m == t.instantiate(v);
        }
        rep.samples.push_back(std::move(s));
    }
    return rep;
}

BilinearForm act(const BilinearForm& theta, const Matrix& phi) {
    if (phi.rows() != theta.ambient() || phi.cols() != theta.ambient()) throw std::invalid_argument("act: shape mismatch");
    return BilinearForm(phi.transpose() * theta.m * phi);
}

PolyMatrix act(const PolyMatrix& theta, const PolyMatrix& phi) {
    std::size_t n = phi.size();
    if (theta.size() != n) throw std::invalid_argument("act: shape mismatch");
    PolyMatrix r(n, std::vector<Poly>(n));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (theta[p][q].is_zero()) continue;
            for (std::size_t i = 0; i < n; ++i) {
                if (phi[p][i].is_zero()) continue;
                Poly left = phi[p][i] * theta[p][q];
                for (std::size_t j = 0; j < n; ++j)
                    if (!phi[q][j].is_zero()) r[i][j] += left * phi[q][j];
            }
        }
    return r;
}

std::vector<Poly> expected_action(FamilyKind f, std::size_t n) {
    Poly x = Poly::var("x"), y = Poly::var("y"), z = Poly::var("z"), w = Poly::var("w");
    Poly a1 = Poly::var("a1"), a2 = Poly::var("a2"), a3 = Poly::var("a3"), a4 = Poly::var("a4");
    if (f == FamilyKind::F1)
        return {a1 * x * y + a3 * y * w + a4 * x * z, a2 * x * y + a3 * y * w + Rational(long(n - 1)) * a4 * x * z, a3 * y * y,
                a4 * x.pow(unsigned(n))};
    if (f == FamilyKind::F2) {
        Poly s = x.pow(unsigned(n - 2));
        return {s * (x * a1 + w * a3), s * (x * a2 + w * a3), x.pow(unsigned(2 * n - 4)) * a3};
    }
    Poly s = n % 2 ? x.pow(unsigned((n - 1) / 2)) : Poly::var("s");
    return {s * (x * a1 + w * a3), s * (x * a2 + w * a3), x.pow(unsigned(n - 1)) * a3};
}

ActionReport verify_action_formula(FamilyKind f, std::size_t n) {
    AutomorphismTemplate t = automorphism_template(f, n);
    auto nab = nabla_basis(f, n);
    PolyMatrix theta(n, std::vector<Poly>(n));
    for (std::size_t k = 0; k < nab.size(); ++k) {
        Poly c = Poly::var("a" + std::to_string(k + 1));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(nab[k].m(i, j)) != 0) theta[i][j] += c * nab[k].m(i, j);
    }
    PolyMatrix img = act(theta, t.entry);
    if (t.side_root)
        for (auto& row : img)
            for (auto& p : row) p = p.reduce_square("s", t.side_square);
    const auto& coh = family_cohomology(f, n);
    Matrix P = coh.projection_matrix(), O = coh.outside_z2_matrix();
    auto apply = [&](const Matrix& M, std::size_t r) {
        Poly acc;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Rational& c = M(r, i * n + j);
                if (sgn(c) != 0 && !img[i][j].is_zero()) acc += img[i][j] * c;
            }
        return acc;
    };
    ActionReport rep{f, n, {}, expected_action(f, n), true};
    for (std::size_t r = 0; r < P.rows(); ++r) rep.computed.push_back(apply(P, r));
    for (std::size_t r = 0; r < O.rows(); ++r)
        if (!apply(O, r).is_zero()) rep.image_in_z2 = false;
    return rep;
}

bool constraint_holds(const std::string& c, const std::map<std::string, Rational>& env) {
    auto ne = c.find("!=");
    bool neq = ne != std::string::npos;
    auto pos = neq ? ne : c.find('=');
    if (pos == std::string::npos) throw std::invalid_argument("constraint needs '=' or '!=': " + c);
    auto lhs = RadicalExpr::parse(c.substr(0, pos)).eval_exact(env);
    auto rhs = RadicalExpr::parse(c.substr(pos + (neq ? 2 : 1))).eval_exact(env);
    if (!lhs || !rhs) throw std::invalid_argument("constraint is not rational: " + c);
    return neq ? *lhs != *rhs : *lhs == *rhs;
}

std::vector<std::string> case_variables(const ReductionCase& c) {
    std::vector<std::string> v;
    for (std::size_t t = 0; t < c.s; ++t)
        for (std::size_t i = 0; i < h2_dim(c.family); ++i) v.push_back(coeff_var(t, i));
    return v;
}

std::optional<std::map<std::string, Rational>> sample_case(const ReductionCase& c, std::mt19937_64& rng, std::size_t attempts) {
    static const long nums[] = {1, 2, 3, 5, 7};
    static const long dens[] = {1, 2, 3};
    auto vars = case_variables(c);
    std::size_t h = h2_dim(c.family);
    for (std::size_t at = 0; at < attempts; ++at) {
        std::map<std::string, Rational> env;
        for (const auto& v : vars) env[v] = make_rational(nums[rng() % 5], dens[rng() % 3]);
        bool ok = true;
        try {
            for (const auto& k : c.constraints) {
                if (k.find("!=") != std::string::npos) continue;
                auto eq = k.find('=');
                std::string lhs = k.substr(0, eq);
                lhs.erase(0, lhs.find_first_not_of(' '));
                lhs.erase(lhs.find_last_not_of(' ') + 1);
                if (!env.count(lhs)) continue;
                auto v = RadicalExpr::parse(k.substr(eq + 1)).eval_exact(env);
                if (!v) throw std::invalid_argument("assignment is not rational: " + k);
                env[lhs] = *v;
            }
            for (const auto& k : c.constraints)
                if (!constraint_holds(k, env)) ok = false;
        } catch (const DivisionByZero&) {
            ok = false;
        }
        if (!ok) continue;
        Matrix m(c.s, h);
        for (std::size_t t = 0; t < c.s; ++t)
            for (std::size_t i = 0; i < h; ++i) m(t, i) = env[coeff_var(t, i)];
        if (rank(m) != c.s) continue;
        return env;
    }
    return std::nullopt;
}

template <typename R>
std::size_t numeric_rank(std::vector<std::vector<Complex<R>>> rows, const R& tol) {
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    R mx(0);
    for (const auto& r : rows) {
        R s(0);
        for (const auto& v : r) s += v.re * v.re + v.im * v.im;
        using std::sqrt;
        R nr = sqrt(s);
        if (nr > mx) mx = nr;
    }
    R thr = tol * mx;
    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols && rk < rows.size(); ++c) {
        std::size_t p = rk;
        R best = abs(rows[rk][c]);
        for (std::size_t i = rk + 1; i < rows.size(); ++i) {
            R v = abs(rows[i][c]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (!(best > thr)) continue;
        std::swap(rows[rk], rows[p]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rk) continue;
            Complex<R> f = rows[i][c] / rows[rk][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rk][j];
        }
        ++rk;
    }
    return rk;
}

template <typename R>
ReductionOutcome<R> verify_reduction_case(const ReductionCase& c, const std::map<std::string, Rational>& sample, const R& tol) {
    using C = Complex<R>;
    for (const auto& k : c.constraints)
        if (!constraint_holds(k, sample)) throw ConstraintViolation("case " + c.id + ": constraint fails: " + k);
    ReductionOutcome<R> out;
    std::size_t n = c.n;
    std::map<std::string, C> env;
    for (const auto& [k, v] : sample) env[k] = C::from_rational(v);
    env["x"] = C(R(1));
    env["y"] = C(R(1));
    env["z"] = C(R(0));
    env["w"] = C(R(0));
    for (const auto& [p, e] : c.substitutions) env[p] = e.template eval<R>(env, tol);

    Algebra a = make_f(int(c.family), n);
    std::vector<std::vector<C>> cols(n, std::vector<C>(n));
    cols[0][0] = env["x"];
    cols[0][n - 1] = env["w"];
    for (std::size_t i = 0; i + 2 < n; ++i) {
        Rational st = *step_coefficient(a, i);
        auto p = complex_product<R>(a, cols[i], cols[0]);
        C inv = C(R(1)) / C::from_rational(st);
        for (auto& v : p) v *= inv;
        cols[i + 1] = std::move(p);
    }
    cols[n - 1][n - 2] = env["z"];
    if (c.family == FamilyKind::F1)
        cols[n - 1][n - 1] = env["y"];
    else if (c.family == FamilyKind::F2)
        cols[n - 1][n - 1] = principal_pow(env["x"], Rational(long(n - 2)));
    else
        cols[n - 1][n - 1] = principal_pow(env["x"], make_rational(long(n - 1), 2));

    const auto& coh = family_cohomology(c.family, n);
    Matrix P = coh.projection_matrix(), O = coh.outside_z2_matrix();
    auto nab = nabla_basis(c.family, n);
    std::size_t h = nab.size();
    std::vector<std::vector<C>> images;
    R outside(0);
    for (std::size_t t = 0; t < c.s; ++t) {
        Vec coeff(h);
        for (std::size_t i = 0; i < h; ++i) coeff[i] = sample.at(coeff_var(t, i));
        BilinearForm th = combine(nab, coeff);
        // flat image (φ^T Θ φ)_{ij}
        std::vector<C> flat(n * n);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                if (sgn(th.m(p, q)) == 0) continue;
                C tv = C::from_rational(th.m(p, q));
                for (std::size_t i = 0; i < n; ++i) {
                    C left = cols[i][p] * tv;
                    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] += left * cols[j][q];
                }
            }
        std::vector<C> coords(P.rows());
        for (std::size_t r = 0; r < P.rows(); ++r)
            for (std::size_t k = 0; k < n * n; ++k)
                if (sgn(P(r, k)) != 0) coords[r] += C::from_rational(P(r, k)) * flat[k];
        for (std::size_t r = 0; r < O.rows(); ++r) {
            C acc;
            for (std::size_t k = 0; k < n * n; ++k)
                if (sgn(O(r, k)) != 0) acc += C::from_rational(O(r, k)) * flat[k];
            R v = abs(acc);
            if (v > outside) outside = v;
        }
        images.push_back(std::move(coords));
    }
    std::vector<std::vector<C>> target;
    for (const auto& row : c.target) {
        std::vector<C> r;
        for (const auto& e : row) r.push_back(e.template eval<R>(env, tol));
        target.push_back(std::move(r));
    }
    auto both = images;
    both.insert(both.end(), target.begin(), target.end());
    out.rank_images = numeric_rank<R>(images, tol);
    out.rank_union = numeric_rank<R>(both, tol);
    out.rank_target = numeric_rank<R>(target, tol);
    out.pass = out.rank_images == c.s && out.rank_union == c.s && out.rank_target == c.s;
    out.outside_z2 = outside;

    R resid(0), scale(1);
    for (const auto& col : cols)
        for (const auto& v : col) {
            R m = abs(v);
            if (m * m > scale) scale = m * m;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<C> lhs(n);
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(a.c(i, j, k)) != 0)
                    for (std::size_t r = 0; r < n; ++r) lhs[r] += C::from_rational(a.c(i, j, k)) * cols[k][r];
            auto rhs = complex_product<R>(a, cols[i], cols[j]);
            for (std::size_t r = 0; r < n; ++r) {
                R d = abs(lhs[r] - rhs[r]);
                if (d > resid) resid = d;
            }
        }
    out.aut_residual = resid;
    out.phi_in_aut = resid <= tol * scale;
    return out;
}

template std::size_t numeric_rank<double>(std::vector<std::vector<Complex<double>>>, const double&);
template std::size_t numeric_rank<BigFloat>(std::vector<std::vector<Complex<BigFloat>>>, const BigFloat&);
template ReductionOutcome<double> verify_reduction_case<double>(const ReductionCase&, const std::map<std::string, Rational>&, const double&);
template ReductionOutcome<BigFloat> verify_reduction_case<BigFloat>(const ReductionCase&, const std::map<std::string, Rational>&,
                                                                    const BigFloat&);

}  // namespace zex
