#include "zex/poly.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace zex {

namespace {

struct VarTable {
    std::mutex mu;
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> ids;
};

VarTable& table() {
    static VarTable t;
    return t;
}

}  // namespace

std::size_t intern_variable(const std::string& name) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.ids.find(name);
    if (it != t.ids.end()) return it->second;
    t.names.push_back(name);
    t.ids.emplace(name, t.names.size() - 1);
    return t.names.size() - 1;
}

const std::string& variable_name(std::size_t id) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    return t.names.at(id);
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
}

void Monomial::trim() {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.e.resize(std::max(a.e.size(), b.e.size()));
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        unsigned s = unsigned(a.exp(i)) + b.exp(i);
        if (s > 0xffff) throw std::overflow_error("monomial exponent overflow");
        m.e[i] = static_cast<std::uint16_t>(s);
    }
    return m;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    std::size_t n = std::max(a.e.size(), b.e.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto x = a.exp(i), y = b.exp(i);
        if (x != y) return x < y;
    }
    return false;
}

Poly::Poly(const Rational& c) {
    if (sgn(c) != 0) t_.emplace(Monomial{}, c);
}

Poly Poly::var(const std::string& name, unsigned power) {
    Monomial m;
    std::size_t id = intern_variable(name);
    m.e.assign(id + 1, 0);
    m.e[id] = static_cast<std::uint16_t>(power);
    m.trim();
    Poly p;
    p.t_.emplace(m, Rational(1));
    return p;
}

std::optional<Rational> Poly::constant_value() const {
    if (t_.empty()) return Rational(0);
    if (t_.size() == 1 && t_.begin()->first.e.empty()) return t_.begin()->second;
    return std::nullopt;
}

std::set<std::string> Poly::variables() const {
    std::set<std::string> s;
    for (const auto& [m, c] : t_)
        for (std::size_t i = 0; i < m.e.size(); ++i)
            if (m.e[i]) s.insert(variable_name(i));
    return s;
}

unsigned Poly::degree() const { return t_.empty() ? 0 : t_.rbegin()->first.degree(); }

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) t_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& [m, v] : r.t_) v = -v;
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly acc(Rational(1)), base = *this;
    while (k) {
        if (k & 1) acc *= base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

Poly Poly::subst(const std::map<std::string, Poly>& values) const {
    std::map<std::size_t, const Poly*> by_id;
    for (const auto& [name, p] : values) by_id[intern_variable(name)] = &p;
    Poly out;
    for (const auto& [m, c] : t_) {
        Poly term(c);
        Monomial rest;
        rest.e = m.e;
        for (const auto& [id, p] : by_id) {
            if (id < rest.e.size() && rest.e[id]) {
                term *= p->pow(rest.e[id]);
                rest.e[id] = 0;
            }
        }
        rest.trim();
        Poly mono;
        mono.t_.emplace(rest, Rational(1));
        out += term * mono;
    }
    return out;
}

Poly Poly::subst(const std::string& name, const Poly& value) const { return subst(std::map<std::string, Poly>{{name, value}}); }

Rational Poly::eval(const std::map<std::string, Rational>& values) const {
    std::map<std::string, Poly> pv;
    for (const auto& [k, v] : values) pv.emplace(k, Poly(v));
    Poly r = subst(pv);
    auto c = r.constant_value();
    if (!c) throw std::invalid_argument("eval: unbound variables remain in " + r.print());
    return *c;
}

Poly Poly::reduce_square(const std::string& name, const Poly& square) const {
    std::size_t id = intern_variable(name);
    Poly out;
    for (const auto& [m, c] : t_) {
        unsigned k = m.exp(id);
        if (k < 2) {
            out.add_term(m, c);
            continue;
        }
        Monomial rest = m;
        rest.e[id] = static_cast<std::uint16_t>(k % 2);
        rest.trim();
        Poly mono;
        mono.t_.emplace(rest, c);
        out += mono * square.pow(k / 2);
    }
    return out;
}

std::string Poly::print() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = abs(c);
        bool neg = sgn(c) < 0;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (!m.e[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += variable_name(i);
            if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
        }
        if (mono.empty())
            s += to_string(a);
        else if (a == 1)
            s += mono;
        else
            s += to_string(a) + "*" + mono;
    }
    return s;
}

}  // namespace zex
