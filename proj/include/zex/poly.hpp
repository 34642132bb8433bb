#pragma once

#include "zex/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace zex {

// Exponent vector indexed by globally interned variable ids; trailing zeros are trimmed.
struct Monomial {
    std::vector<std::uint16_t> e;

    unsigned degree() const;
    std::uint16_t exp(std::size_t var) const { return var < e.size() ? e[var] : 0; }
    void trim();
    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

// Graded lexicographic: total degree first, then lexicographic with lower variable ids more significant.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

std::size_t intern_variable(const std::string& name);
const std::string& variable_name(std::size_t id);

class Poly {
public:
    using Terms = std::map<Monomial, Rational, GrlexLess>;

    Poly() = default;
    Poly(const Rational& c);
    Poly(long c) : Poly(Rational(c)) {}
    static Poly var(const std::string& name, unsigned power = 1);

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::optional<Rational> constant_value() const;
    std::set<std::string> variables() const;
    unsigned degree() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator-(const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned k) const;
    Poly subst(const std::string& name, const Poly& value) const;
    Poly subst(const std::map<std::string, Poly>& values) const;
    Rational eval(const std::map<std::string, Rational>& values) const;
    // Replace name^k by (name^(k mod 2)) * square^(k div 2).
    Poly reduce_square(const std::string& name, const Poly& square) const;

    // Terms in descending grlex order, e.g. "x^2 - 2*x*y + 1/2".
    std::string print() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    Terms t_;
};

}  // namespace zex
