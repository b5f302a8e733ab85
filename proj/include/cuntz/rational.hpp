#ifndef CUNTZ_RATIONAL_HPP
#define CUNTZ_RATIONAL_HPP

#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cuntz/error.hpp"

namespace cuntz {

namespace detail {

using wide = __int128;

inline std::int64_t narrow(wide v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("cuntz: 64-bit overflow in exact arithmetic");
    return static_cast<std::int64_t>(v);
}

inline wide gcd_wide(wide a, wide b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cuntz: integer overflow (add)");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("cuntz: integer overflow (sub)");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cuntz: integer overflow (mul)");
    return r;
}

} // namespace detail

/// Exact rational number with 64-bit numerator and denominator.
/**
 * Always kept in lowest terms with a positive denominator. Intermediate
 * products are formed in 128 bits and every result is range checked, so an
 * operation either returns the exact value or throws std::overflow_error.
 * Nothing is ever rounded.
 */
class rational {
public:
    constexpr rational() noexcept = default;
    constexpr rational(std::int64_t n) noexcept : num_(n) {} // NOLINT: implicit by intent

    rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }

    /// Parses "p", "-p", or "p/q". Whitespace is not accepted.
    static rational parse(std::string_view text)
    {
        auto slash = text.find('/');
        auto num_part = text.substr(0, slash);
        std::int64_t n = parse_int(num_part, text);
        std::int64_t d = 1;
        if (slash != std::string_view::npos) {
            d = parse_int(text.substr(slash + 1), text);
            if (d == 0) throw contract_error("zero denominator in rational '" + std::string(text) + "'");
        }
        return rational(n, d);
    }

    std::string str() const
    {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::int64_t floor() const noexcept
    {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    std::int64_t ceil() const noexcept
    {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    rational operator-() const
    {
        rational r;
        r.num_ = detail::checked_sub(0, num_);
        r.den_ = den_;
        return r;
    }

    friend rational operator+(const rational& a, const rational& b)
    {
        if (a.den_ == b.den_) return from_wide(detail::wide(a.num_) + b.num_, a.den_);
        return from_wide(detail::wide(a.num_) * b.den_ + detail::wide(b.num_) * a.den_, detail::wide(a.den_) * b.den_);
    }

    friend rational operator-(const rational& a, const rational& b)
    {
        if (a.den_ == b.den_) return from_wide(detail::wide(a.num_) - b.num_, a.den_);
        return from_wide(detail::wide(a.num_) * b.den_ - detail::wide(b.num_) * a.den_, detail::wide(a.den_) * b.den_);
    }

    friend rational operator*(const rational& a, const rational& b)
    {
        return from_wide(detail::wide(a.num_) * b.num_, detail::wide(a.den_) * b.den_);
    }

    friend rational operator/(const rational& a, const rational& b)
    {
        if (b.num_ == 0) throw std::domain_error("cuntz: rational division by zero");
        return from_wide(detail::wide(a.num_) * b.den_, detail::wide(a.den_) * b.num_);
    }

    rational& operator+=(const rational& o) { return *this = *this + o; }
    rational& operator-=(const rational& o) { return *this = *this - o; }
    rational& operator*=(const rational& o) { return *this = *this * o; }
    rational& operator/=(const rational& o) { return *this = *this / o; }

    friend bool operator==(const rational& a, const rational& b) noexcept
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::strong_ordering operator<=>(const rational& a, const rational& b) noexcept
    {
        if (a.den_ == b.den_) return a.num_ <=> b.num_;
        detail::wide l = detail::wide(a.num_) * b.den_;
        detail::wide r = detail::wide(b.num_) * a.den_;
        return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const rational& r) { return os << r.str(); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    void assign(std::int64_t n, std::int64_t d)
    {
        if (d == 0) throw std::domain_error("cuntz: zero denominator");
        *this = from_wide(n, d);
    }

    static rational from_wide(detail::wide n, detail::wide d)
    {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        detail::wide g = detail::gcd_wide(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        rational r;
        r.num_ = detail::narrow(n);
        r.den_ = detail::narrow(d);
        return r;
    }

    static std::int64_t parse_int(std::string_view s, std::string_view whole)
    {
        std::int64_t v = 0;
        const char* first = s.data();
        const char* last = s.data() + s.size();
        if (first != last && *first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (s.empty() || ec != std::errc{} || ptr != last)
            throw contract_error("malformed rational '" + std::string(whole) + "'");
        return v;
    }
};

inline rational abs(const rational& r) { return r.sign() < 0 ? -r : r; }

inline rational pow2_inverse(int exponent)
{
    if (exponent < 0 || exponent > 62) throw std::overflow_error("cuntz: 2^k out of range");
    return rational(1, std::int64_t{1} << exponent);
}

} // namespace cuntz

#endif
