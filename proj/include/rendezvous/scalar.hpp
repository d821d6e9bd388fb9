/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rendezvous {

/// Exact rational number, always in canonical reduced form with the sign on
/// the numerator. Positions, distances, delta and lambda all live here.
class Scalar {
public:
    Scalar() = default;
    Scalar(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Scalar(long numerator, long denominator);
    explicit Scalar(mpq_class value);

    /// Accepts "p", "p/q", "-p/q" and finite decimals such as "1.25" or "-.5".
    static Scalar parse(std::string_view text);

    /// Canonical text: "p" when the denominator is 1, otherwise "p/q".
    [[nodiscard]] std::string str() const;

    [[nodiscard]] const mpq_class& raw() const { return value_; }
    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] Scalar abs() const;
    [[nodiscard]] double to_double() const { return value_.get_d(); }
    [[nodiscard]] std::size_t hash() const;

    /// Smallest integer >= value.
    [[nodiscard]] long ceil() const;

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    /// Throws std::domain_error on division by zero.
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
    Scalar operator-() const;

    friend bool operator==(const Scalar& lhs, const Scalar& rhs) { return cmp(lhs.value_, rhs.value_) == 0; }
    friend std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs)
    {
        const int c = cmp(lhs.value_, rhs.value_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& out, const Scalar& s);

private:
    mpq_class value_{0};
};

[[nodiscard]] inline Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
[[nodiscard]] inline Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

/// (1 - lambda) * a + lambda * b.
[[nodiscard]] Scalar convex_point(const Scalar& a, const Scalar& b, const Scalar& lambda);

/// min(a, b) <= p <= max(a, b).
[[nodiscard]] bool on_segment(const Scalar& p, const Scalar& a, const Scalar& b);

struct ScalarHash {
    std::size_t operator()(const Scalar& s) const { return s.hash(); }
};

}  // namespace rendezvous
