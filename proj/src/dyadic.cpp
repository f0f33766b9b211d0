#include "netrel/dyadic.hpp"

#include "netrel/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <bit>

namespace netrel {

DyadicProb::DyadicProb(std::uint64_t numerator, unsigned bits) {
    if (bits > kMaxBits)
        throw InvalidArgument("probability denominator exceeds 2^" + std::to_string(kMaxBits));
    if (numerator > (std::uint64_t{1} << bits))
        throw InvalidArgument("probability greater than one");
    if (numerator == 0) {
        numerator_ = 0;
        bits_ = 1;
        return;
    }
    unsigned shift = std::min<unsigned>(std::countr_zero(numerator), bits);
    numerator >>= shift;
    bits -= shift;
    if (bits == 0) {  // exactly one
        numerator = 2;
        bits = 1;
    }
    numerator_ = numerator;
    bits_ = bits;
}

double DyadicProb::to_double() const noexcept {
    return static_cast<double>(numerator_) / static_cast<double>(denominator());
}

std::string DyadicProb::to_string() const {
    return std::to_string(numerator_) + "/" + std::to_string(denominator());
}

Dyadic::Dyadic(BigInt numerator, unsigned exponent) : num_(std::move(numerator)), exp_(exponent) {
    normalize();
}

void Dyadic::normalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    unsigned tz = static_cast<unsigned>(boost::multiprecision::lsb(boost::multiprecision::abs(num_)));
    unsigned shift = std::min(tz, exp_);
    num_ >>= shift;
    exp_ -= shift;
}

double Dyadic::to_double() const {
    using boost::multiprecision::cpp_bin_float_double;
    cpp_bin_float_double v(num_);
    return static_cast<double>(ldexp(v, -static_cast<int>(exp_)));
}

std::string Dyadic::to_string() const {
    return num_.str() + "/" + denominator().str();
}

Dyadic Dyadic::parse(std::string_view text) {
    auto parse_int = [](std::string_view s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
            if (!(s.size() > 1 && s[0] == '-' &&
                  s.find_first_not_of("0123456789", 1) == std::string_view::npos))
                throw InvalidArgument("not an integer: '" + std::string(s) + "'");
        }
        return BigInt(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Dyadic(parse_int(text), 0);
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den <= 0 || (den & (den - 1)) != 0)
        throw InvalidArgument("denominator is not a power of two: '" + std::string(text) + "'");
    return Dyadic(num, static_cast<unsigned>(boost::multiprecision::msb(den)));
}

Dyadic Dyadic::operator+(const Dyadic& rhs) const {
    unsigned e = std::max(exp_, rhs.exp_);
    return Dyadic((num_ << (e - exp_)) + (rhs.num_ << (e - rhs.exp_)), e);
}

Dyadic Dyadic::operator-(const Dyadic& rhs) const {
    unsigned e = std::max(exp_, rhs.exp_);
    return Dyadic((num_ << (e - exp_)) - (rhs.num_ << (e - rhs.exp_)), e);
}

Dyadic Dyadic::operator*(const Dyadic& rhs) const {
    return Dyadic(num_ * rhs.num_, exp_ + rhs.exp_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    unsigned e = std::max(a.exp_, b.exp_);
    BigInt lhs = a.num_ << (e - a.exp_);
    BigInt rhs = b.num_ << (e - b.exp_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

} // namespace netrel
