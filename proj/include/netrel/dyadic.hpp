#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace netrel {

using BigInt = boost::multiprecision::cpp_int;

// Edge failure probability numerator / 2^bits, held in canonical form:
// numerator odd, or bits == 1 (which covers 0 = 0/2, 1/2 and 1 = 2/2).
class DyadicProb {
public:
    static constexpr unsigned kMaxBits = 62;

    DyadicProb() = default;

    // numerator / 2^bits for any bits <= kMaxBits; reduced on construction.
    // Throws InvalidArgument unless 0 <= numerator <= 2^bits.
    DyadicProb(std::uint64_t numerator, unsigned bits);

    static DyadicProb half() { return DyadicProb(1, 1); }

    std::uint64_t numerator() const noexcept { return numerator_; }
    unsigned bits() const noexcept { return bits_; }
    std::uint64_t denominator() const noexcept { return std::uint64_t{1} << bits_; }

    bool is_zero() const noexcept { return numerator_ == 0; }
    bool is_one() const noexcept { return numerator_ == denominator(); }
    // Strictly inside (0,1); required by the weighted-to-unweighted transform.
    bool is_open() const noexcept { return !is_zero() && !is_one(); }
    bool is_half() const noexcept { return numerator_ == 1 && bits_ == 1; }

    DyadicProb complement() const { return DyadicProb(denominator() - numerator_, bits_); }
    double to_double() const noexcept;
    // "num/den" with the denominator written as an integer.
    std::string to_string() const;

    friend bool operator==(const DyadicProb&, const DyadicProb&) = default;

private:
    std::uint64_t numerator_ = 1;
    unsigned bits_ = 1;
};

// Exact rational with a power-of-two denominator. Every probability the
// toolkit computes exactly (realization weights, unreliabilities, count/2^M)
// lives here, so equality checks are bit-exact.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(BigInt numerator, unsigned exponent);
    explicit Dyadic(const DyadicProb& p) : Dyadic(BigInt(p.numerator()), p.bits()) {}

    static Dyadic zero() { return {}; }
    static Dyadic one() { return Dyadic(1, 0); }

    const BigInt& numerator() const noexcept { return num_; }
    unsigned exponent() const noexcept { return exp_; }
    BigInt denominator() const { return BigInt(1) << exp_; }

    double to_double() const;
    // "p/q"; integers are written "p/1".
    std::string to_string() const;
    // Accepts "p/q" with q a power of two, or a bare integer.
    static Dyadic parse(std::string_view text);

    Dyadic operator+(const Dyadic& rhs) const;
    Dyadic operator-(const Dyadic& rhs) const;
    Dyadic operator*(const Dyadic& rhs) const;
    Dyadic& operator+=(const Dyadic& rhs) { return *this = *this + rhs; }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.num_ == b.num_;
    }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

private:
    void normalize();

    BigInt num_ = 0;
    unsigned exp_ = 0;
};

} // namespace netrel
