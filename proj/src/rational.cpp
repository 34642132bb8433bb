#include "zex/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace zex {

namespace {

bool parse_integer_part(std::string_view s, mpz_class& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    std::string t(s[0] == '+' ? s.substr(1) : s);
    return out.set_str(t, 10) == 0;
}

bool parse_decimal(std::string_view s, Rational& out) {
    std::string_view mant = s;
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string_view::npos) {
        mant = s.substr(0, epos);
        mpz_class e;
        if (!parse_integer_part(s.substr(epos + 1), e) || !e.fits_slong_p()) return false;
        exp10 = e.get_si();
        if (exp10 > 10000 || exp10 < -10000) return false;
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.remove_prefix(1);
    }
    std::string digits;
    long frac = 0;
    bool seen_dot = false;
    for (char ch : mant) {
        if (ch == '.') {
            if (seen_dot) return false;
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
            if (seen_dot) ++frac;
        } else {
            return false;
        }
    }
    if (digits.empty()) return false;
    mpz_class num(digits, 10);
    exp10 -= frac;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    Rational q = exp10 >= 0 ? Rational(num * p10) : Rational(num, p10);
    q.canonicalize();
    out = neg ? Rational(-q) : q;
    return true;
}

}  // namespace

bool try_parse_rational(std::string_view s, Rational& out) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) return false;
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        mpz_class p, q;
        if (!parse_integer_part(s.substr(0, slash), p)) return false;
        auto den = s.substr(slash + 1);
        if (den.empty() || den[0] == '-' || den[0] == '+') return false;
        if (!parse_integer_part(den, q) || q == 0) return false;
        out = Rational(p, q);
        out.canonicalize();
        return true;
    }
    mpz_class p;
    if (parse_integer_part(s, p)) {
        out = Rational(p);
        return true;
    }
    return parse_decimal(s, out);
}

Rational parse_rational(std::string_view s) {
    Rational q;
    if (!try_parse_rational(s, q)) throw std::invalid_argument("bad rational literal '" + std::string(s) + "'");
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Vec unit_vector(std::size_t n, std::size_t i) {
    Vec v(n);
    v.at(i) = 1;
    return v;
}

Vec zero_vector(std::size_t n) { return Vec(n); }

}  // namespace zex
