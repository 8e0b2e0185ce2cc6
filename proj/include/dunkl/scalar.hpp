#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "dunkl/errors.hpp"

namespace dunkl {

/// Exact scalar: arbitrary-precision rational. All combinatorics and the
/// weight-space algebra are exact when inputs are rational; `double` is the
/// floating alternative for irrational catalog families and external data.
using Rational = boost::multiprecision::cpp_rational;

enum class scalar_mode { exact, floating };

template <class K>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<Rational> = true;

template <class K>
constexpr scalar_mode mode_of() {
    return is_exact_v<K> ? scalar_mode::exact : scalar_mode::floating;
}

inline const char* mode_name(scalar_mode m) { return m == scalar_mode::exact ? "exact" : "float"; }

inline double to_double(const Rational& x) { return x.template convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rational rational_of_int(long long v) { return Rational(v); }

/// Parses "p", "-p", "p/q" (decimal digit strings). Throws bad_input otherwise.
inline Rational parse_rational(std::string_view s) {
    auto bad = [&] { fail(errc::bad_input, "malformed rational '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    auto check_int = [&](std::string_view t) {
        if (t.empty()) bad();
        std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (k == t.size()) bad();
        for (; k < t.size(); ++k)
            if (t[k] < '0' || t[k] > '9') bad();
        return std::string(t[0] == '+' ? t.substr(1) : t);
    };
    try {
        if (slash == std::string_view::npos)
            return Rational(boost::multiprecision::cpp_int(check_int(s)));
        std::string num = check_int(s.substr(0, slash)), den = check_int(s.substr(slash + 1));
        boost::multiprecision::cpp_int q{den};
        if (q == 0) bad();
        return Rational(boost::multiprecision::cpp_int(num), q);
    } catch (const std::exception&) {
        bad();
    }
    return Rational();  // unreachable
}

inline std::string format_scalar(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

/// Shortest round-trip decimal for doubles.
inline std::string format_scalar(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, r.ptr);
}

inline Rational abs_scalar(const Rational& x) { return x < 0 ? Rational(-x) : x; }
inline double abs_scalar(double x) { return std::fabs(x); }

}  // namespace dunkl
