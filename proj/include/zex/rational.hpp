#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace zex {

using Rational = mpq_class;
using Vec = std::vector<Rational>;

// Accepts "p", "p/q", "-p/q" and decimal/scientific forms like "1e-9" or "0.25".
Rational parse_rational(std::string_view s);
bool try_parse_rational(std::string_view s, Rational& out);
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

// mpq_class(p, q) does not reduce; every two-argument construction goes through here.
inline Rational make_rational(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Vec unit_vector(std::size_t n, std::size_t i);
Vec zero_vector(std::size_t n);

}  // namespace zex
