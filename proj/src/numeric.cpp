#include "zex/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace zex {

PrecisionScope::PrecisionScope(unsigned bits) : saved_(BigFloat::default_precision()) {
    // digits10 such that the backend allocates at least `bits` mantissa bits
    unsigned d10 = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
    BigFloat::default_precision(d10);
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_); }

std::string format_real(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string format_real(const BigFloat& v, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

}  // namespace zex
