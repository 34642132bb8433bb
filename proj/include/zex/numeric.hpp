#pragma once

#include "zex/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace zex {

using BigFloat = boost::multiprecision::mpfr_float;

// Sets the working precision of BigFloat for the lifetime of the guard.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

template <typename R>
R real_from_rational(const Rational& q);
template <>
inline double real_from_rational<double>(const Rational& q) { return q.get_d(); }
template <>
inline BigFloat real_from_rational<BigFloat>(const Rational& q) {
    return BigFloat(q.get_num().get_str()) / BigFloat(q.get_den().get_str());
}

template <typename R>
R real_from_string(const std::string& s);
template <>
inline double real_from_string<double>(const std::string& s) { return std::stod(s); }
template <>
inline BigFloat real_from_string<BigFloat>(const std::string& s) { return BigFloat(s); }

// Minimal complex arithmetic over a real type R; std::complex is only specified for built-in floats.
template <typename R>
struct Complex {
    R re{0}, im{0};

    Complex() = default;
    Complex(R r) : re(std::move(r)), im(0) {}
    Complex(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    static Complex from_rational(const Rational& q) { return Complex(real_from_rational<R>(q)); }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        R r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        R d = o.re * o.re + o.im * o.im;
        R r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = r;
        return *this;
    }
    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
};

template <typename R>
R abs(const Complex<R>& z) {
    using std::sqrt;
    return sqrt(z.re * z.re + z.im * z.im);
}

// Principal branch of z^(p/q); 0^e is 0 for e > 0.
template <typename R>
Complex<R> principal_pow(const Complex<R>& z, const Rational& e) {
    using std::atan2;
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    R r = abs(z);
    if (r == 0) {
        if (sgn(e) > 0) return Complex<R>();
        throw std::domain_error("zero raised to a non-positive power");
    }
    if (e.get_den() == 1 && abs(e.get_num()) <= 64) {
        long k = e.get_num().get_si();
        Complex<R> acc(R(1)), base = z;
        long m = k < 0 ? -k : k;
        while (m) {
            if (m & 1) acc *= base;
            base *= base;
            m >>= 1;
        }
        return k < 0 ? Complex<R>(R(1)) / acc : acc;
    }
    R theta = atan2(z.im, z.re);
    R ef = real_from_rational<R>(e);
    R mag = exp(ef * log(r));
    R ang = ef * theta;
    return Complex<R>(mag * cos(ang), mag * sin(ang));
}

using ComplexD = Complex<double>;
using ComplexB = Complex<BigFloat>;

// Tolerance literals such as "1e-20" read exactly into R.
template <typename R>
R tolerance_from_rational(const Rational& t) {
    return real_from_rational<R>(t);
}

std::string format_real(double v, int digits = 6);
std::string format_real(const BigFloat& v, int digits = 6);

}  // namespace zex
