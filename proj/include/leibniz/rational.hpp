#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace leibniz {

/// Exact rational scalar. GMP keeps values canonical (lowest terms,
/// positive denominator), which is exactly the invariant we rely on.
using Scalar = mpq_class;

/// num/den with canonicalization (the raw two-argument mpq_class
/// constructor does not reduce).
inline Scalar frac(long num, long den)
{
    if (den == 0)
        throw std::invalid_argument("frac: zero denominator");
    Scalar s(num, den);
    s.canonicalize();
    return s;
}

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

/// Canonical string form: "p" for integers, "p/q" in lowest terms.
inline std::string scalar_to_string(const Scalar& s) { return s.get_str(); }

/// Strict parse of the canonical form. Accepts any "p" or "p/q" with
/// q > 0 and reduces; rejects everything else.
inline Scalar scalar_from_string(const std::string& text)
{
    const auto bad = [&]() -> std::runtime_error {
        return std::runtime_error("invalid scalar string: '" + text + "'");
    };
    if (text.empty())
        throw bad();
    std::size_t pos = text[0] == '-' ? 1 : 0;
    if (pos == text.size())
        throw bad();
    bool seen_slash = false;
    std::size_t digits_before = 0, digits_after = 0;
    for (std::size_t i = pos; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '/') {
            if (seen_slash)
                throw bad();
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digits_after : digits_before)++;
        } else {
            throw bad();
        }
    }
    if (digits_before == 0 || (seen_slash && digits_after == 0))
        throw bad();
    Scalar s;
    if (s.set_str(text, 10) != 0)
        throw bad();
    if (sgn(s.get_den()) <= 0)
        throw bad();
    s.canonicalize();
    return s;
}

} // namespace leibniz
