/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#include "rendezvous/scalar.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace rendezvous {

namespace {

bool all_digits(std::string_view s)
{
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

[[noreturn]] void bad_scalar(std::string_view text)
{
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
}

std::size_t hash_mpz(mpz_srcptr z)
{
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
    const std::size_t limbs = mpz_size(z);
    for (std::size_t i = 0; i < limbs; ++i)
        h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

Scalar::Scalar(long numerator, long denominator)
{
    if (denominator == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Scalar::Scalar(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Scalar Scalar::parse(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) bad_scalar(text);

    bool negative = false;
    std::string_view body = s;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (body.empty()) bad_scalar(text);

    mpq_class q;
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash);
        const auto den = body.substr(slash + 1);
        if (num.empty() || den.empty() || !all_digits(num) || !all_digits(den)) bad_scalar(text);
        mpz_class n(std::string(num), 10);
        mpz_class d(std::string(den), 10);
        if (d == 0) throw std::domain_error("rational with zero denominator");
        q = mpq_class(n, d);
    } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
        const auto whole = body.substr(0, dot);
        const auto frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || !all_digits(whole) || !all_digits(frac)) bad_scalar(text);
        mpz_class n(whole.empty() ? std::string("0") : std::string(whole), 10);
        mpz_class d = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) d *= 10;
        if (!frac.empty()) n = n * d + mpz_class(std::string(frac), 10);
        q = mpq_class(n, d);
    } else {
        if (!all_digits(body)) bad_scalar(text);
        q = mpq_class(mpz_class(std::string(body), 10));
    }
    q.canonicalize();
    if (negative) q = -q;
    return Scalar(std::move(q));
}

std::string Scalar::str() const
{
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Scalar Scalar::abs() const { return Scalar(mpq_class(::abs(value_))); }

std::size_t Scalar::hash() const
{
    return hash_mpz(value_.get_num_mpz_t()) * 31 + hash_mpz(value_.get_den_mpz_t());
}

long Scalar::ceil() const
{
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("ceiling does not fit in a long");
    return q.get_si();
}

Scalar& Scalar::operator+=(const Scalar& rhs)
{
    value_ += rhs.value_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs)
{
    value_ -= rhs.value_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs)
{
    value_ *= rhs.value_;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs)
{
    if (rhs.is_zero()) throw std::domain_error("division by zero");
    value_ /= rhs.value_;
    return *this;
}

Scalar Scalar::operator-() const { return Scalar(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& out, const Scalar& s) { return out << s.str(); }

Scalar convex_point(const Scalar& a, const Scalar& b, const Scalar& lambda)
{
    return a + lambda * (b - a);
}

bool on_segment(const Scalar& p, const Scalar& a, const Scalar& b)
{
    return min(a, b) <= p && p <= max(a, b);
}

}  // namespace rendezvous
