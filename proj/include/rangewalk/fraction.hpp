#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rangewalk {

/// Exact rational in lowest terms with positive denominator. Used for ℓ so that the
/// zigzag schedule and its speed checks are evaluated without rounding.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Fraction() = default;
    Fraction(std::int64_t n, std::int64_t d) : num(n), den(d)
    {
        if (den == 0)
            throw std::invalid_argument("fraction with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

    /// Parses "0.3", "-1.25", "7" or "3/10".
    static Fraction parse(std::string_view text)
    {
        auto fail = [&] { throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'"); };
        if (text.empty())
            fail();
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            std::int64_t n = 0, d = 0;
            auto a = std::from_chars(text.data(), text.data() + slash, n);
            auto b = std::from_chars(text.data() + slash + 1, text.data() + text.size(), d);
            if (a.ec != std::errc{} || a.ptr != text.data() + slash || b.ec != std::errc{} ||
                b.ptr != text.data() + text.size() || d == 0)
                fail();
            return Fraction(n, d);
        }
        bool negative = false;
        std::size_t i = 0;
        if (text[0] == '-' || text[0] == '+') {
            negative = text[0] == '-';
            ++i;
        }
        std::int64_t n = 0, d = 1;
        bool digits = false, point = false;
        for (; i < text.size(); ++i) {
            char c = text[i];
            if (c == '.' && !point) {
                point = true;
                continue;
            }
            if (c < '0' || c > '9')
                fail();
            digits = true;
            if (__builtin_mul_overflow(n, 10, &n) || __builtin_add_overflow(n, c - '0', &n))
                fail();
            if (point && __builtin_mul_overflow(d, 10, &d))
                fail();
        }
        if (!digits)
            fail();
        return Fraction(negative ? -n : n, d);
    }

    /// Best rational approximation with denominator ≤ max_den (continued fractions).
    static Fraction approximate(double x, std::int64_t max_den = 1'000'000'000)
    {
        if (!std::isfinite(x))
            throw std::invalid_argument("cannot approximate a non-finite value");
        std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        double r = x;
        for (int iter = 0; iter < 64; ++iter) {
            const double a_f = std::floor(r);
            if (std::fabs(a_f) > 9e15)
                break;
            const auto a = static_cast<std::int64_t>(a_f);
            const std::int64_t q2 = q0 + a * q1;
            if (q2 > max_den)
                break;
            const std::int64_t p2 = p0 + a * p1;
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            const double frac = r - a_f;
            if (frac < 1e-15 || std::fabs(static_cast<double>(p1) / q1 - x) == 0.0)
                break;
            r = 1.0 / frac;
        }
        return Fraction(p1, q1);
    }

    /// Decimal text when the denominator divides a power of ten, else "num/den".
    std::string to_string() const
    {
        std::int64_t scale = 1;
        for (int k = 0; k <= 18; ++k) {
            if (scale % den == 0) {
                const std::int64_t scaled = num * (scale / den);
                std::string digits = std::to_string(scaled < 0 ? -scaled : scaled);
                if (k > 0) {
                    if (digits.size() <= static_cast<std::size_t>(k))
                        digits.insert(0, static_cast<std::size_t>(k) - digits.size() + 1, '0');
                    digits.insert(digits.size() - static_cast<std::size_t>(k), ".");
                }
                return (scaled < 0 ? "-" : "") + digits;
            }
            if (k < 18)
                scale *= 10;
        }
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Fraction&, const Fraction&) = default;
};

} // namespace rangewalk
