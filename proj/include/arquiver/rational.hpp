// Exact scalar arithmetic: arbitrary-precision integers and rationals.
// Rat is always canonical (reduced, positive denominator); no rounding anywhere.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace arq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& x) { return numerator(x); }
inline Int rat_den(const Rat& x) { return denominator(x); }

// Build p/q with sign normalization (cpp_rational rejects negative denominators).
inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) { num = -num; den = -den; }
  return Rat(num, den);
}

// Text form: "p/q", with "/q" omitted when q == 1. cpp_rational's stream form
// already matches; keep explicit helpers so the contract is pinned in one place.
inline std::string rat_to_string(const Rat& x) {
  return x.str();
}

inline std::optional<Rat> rat_parse(std::string_view text) {
  // Accepted: optional sign, digits, optionally "/" sign-less digits.
  size_t slash = text.find('/');
  auto parse_int = [](std::string_view s) -> std::optional<Int> {
    if (s.empty()) return std::nullopt;
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i >= s.size()) return std::nullopt;
    for (size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9') return std::nullopt;
    Int v{std::string(s.substr(i))};
    return neg ? Int(-v) : v;
  };
  if (slash == std::string_view::npos) {
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rat(*n);
  }
  auto n = parse_int(text.substr(0, slash));
  auto d = parse_int(text.substr(slash + 1));
  if (!n || !d || *d == 0) return std::nullopt;
  return make_rat(*n, *d);
}

inline std::string int_to_string(const Int& x) { return x.str(); }

inline std::optional<Int> int_parse(std::string_view text) {
  auto r = rat_parse(text);
  if (!r || rat_den(*r) != 1) return std::nullopt;
  return rat_num(*r);
}

}  // namespace arq
