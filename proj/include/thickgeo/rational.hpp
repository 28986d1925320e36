#pragma once

#include "thickgeo/errors.hpp"

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

namespace thickgeo {

using Rational = mpq_class;

/// Parses "p", "p/q" or a plain decimal literal such as "-0.125". The result is canonical.
inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    if (s.empty()) throw InputError("empty rational literal");

    auto bad = [&] { return InputError("malformed rational literal '" + std::string(text) + "'"); };

    if (auto dot = s.find('.'); dot != std::string::npos) {
        if (s.find('/') != std::string::npos) throw bad();
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        std::string digits = s.substr(start, dot - start) + s.substr(dot + 1);
        if (digits.empty()) throw bad();
        for (char ch : digits) {
            if (!std::isdigit(static_cast<unsigned char>(ch))) throw bad();
        }
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
        Rational r(num, den);
        r.canonicalize();
        if (s[0] == '-') r = -r;
        return r;
    }

    std::size_t slash = s.find('/');
    auto valid_int = [](std::string_view part, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        }
        return true;
    };
    std::string num_part = s.substr(0, slash);
    if (!num_part.empty() && num_part[0] == '+') num_part.erase(0, 1);
    if (!valid_int(num_part, true)) throw bad();
    mpz_class num(num_part, 10);
    mpz_class den(1);
    if (slash != std::string::npos) {
        std::string den_part = s.substr(slash + 1);
        if (!valid_int(den_part, false)) throw bad();
        den = mpz_class(den_part, 10);
        if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Canonical "p/q" form ("p" for integers).
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Decimal rendering rounded half-to-even at `significant` digits, trailing zeros trimmed.
inline std::string to_decimal(const Rational& value, int significant = 12) {
    if (value == 0) return "0";
    Rational a = abs(value);

    // exponent e with 10^e <= a < 10^(e+1)
    long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
    auto pow10 = [](long k) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
        return p;
    };
    auto scaled_by = [&](long k) {
        Rational r = a;
        if (k >= 0) r *= Rational(pow10(k));
        else r /= Rational(pow10(k));
        return r;
    };
    while (scaled_by(-e) >= 10) ++e;
    while (scaled_by(-e) < 1) --e;

    Rational scaled = scaled_by(significant - 1 - e);
    mpz_class integer = scaled.get_num() / scaled.get_den();
    Rational frac = scaled - Rational(integer);
    if (frac > Rational(1, 2) || (frac == Rational(1, 2) && mpz_odd_p(integer.get_mpz_t()))) {
        ++integer;
    }
    if (integer == pow10(significant)) {
        integer /= 10;
        ++e;
    }

    std::string digits = integer.get_str(10);
    std::string out;
    if (value < 0) out.push_back('-');
    if (e >= -6 && e < significant) {
        if (e >= 0) {
            out += digits.substr(0, static_cast<std::size_t>(e) + 1);
            std::string rest = digits.substr(static_cast<std::size_t>(e) + 1);
            while (!rest.empty() && rest.back() == '0') rest.pop_back();
            if (!rest.empty()) out += "." + rest;
        } else {
            std::string rest = std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
            while (!rest.empty() && rest.back() == '0') rest.pop_back();
            out += "0." + rest;
        }
    } else {
        std::string rest = digits.substr(1);
        while (!rest.empty() && rest.back() == '0') rest.pop_back();
        out += digits.substr(0, 1);
        if (!rest.empty()) out += "." + rest;
        out += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
    }
    return out;
}

/// base^exponent for a small non-negative exponent.
inline Rational pow(const Rational& base, std::size_t exponent) {
    Rational result(1);
    for (std::size_t i = 0; i < exponent; ++i) result *= base;
    return result;
}

} // namespace thickgeo
