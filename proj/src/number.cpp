#include "cic/number.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cic {

namespace {

__extension__ typedef __int128 i128;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite number: '" + std::string(s) + "'");
  return v;
}

std::optional<Rational> make_rational(i128 num, i128 den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr auto lim = static_cast<i128>(std::numeric_limits<std::int64_t>::max());
  if (num > lim || num < -lim || den > lim) return std::nullopt;
  return Rational{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

// Plain decimal "[-+]digits[.digits]" to an exact rational, if it fits.
std::optional<Rational> decimal_to_rational(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;
  i128 num = 0;
  i128 den = 1;
  bool seen_point = false;
  int digits = 0;
  for (char ch : s) {
    if (ch == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (ch < '0' || ch > '9') return std::nullopt;
    if (++digits > 18) return std::nullopt;
    num = num * 10 + (ch - '0');
    if (seen_point) den *= 10;
  }
  if (digits == 0) return std::nullopt;
  return make_rational(neg ? -num : num, den);
}

}  // namespace

Number parse_number(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto lhs = trim(s.substr(0, slash));
    auto rhs = trim(s.substr(slash + 1));
    auto p = decimal_to_rational(lhs);
    auto q = decimal_to_rational(rhs);
    if (!p || !q) throw std::invalid_argument("malformed fraction: '" + std::string(s) + "'");
    if (q->num == 0) throw std::invalid_argument("zero denominator: '" + std::string(s) + "'");
    auto r = make_rational(static_cast<i128>(p->num) * q->den,
                           static_cast<i128>(p->den) * q->num);
    if (!r) {
      Number n(parse_double(lhs) / parse_double(rhs));
      return n;
    }
    return Number(*r);
  }

  Number n(parse_double(s));
  n.exact = decimal_to_rational(s);
  return n;
}

int compare_scaled(const Number& a, int factor, const Number& b, double tol) {
  if (a.exact && b.exact) {
    // a.num/a.den - factor*b.num/b.den  ~  a.num*b.den - factor*b.num*a.den
    const i128 lhs = static_cast<i128>(a.exact->num) * b.exact->den;
    const i128 rhs = static_cast<i128>(factor) * b.exact->num * a.exact->den;
    return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
  }
  const double fb = factor * b.value;
  const double diff = a.value - fb;
  const double scale = std::max({1.0, std::abs(a.value), std::abs(fb)});
  if (std::abs(diff) <= tol * scale) return 0;
  return diff > 0 ? 1 : -1;
}

std::string to_string(const Number& n) {
  if (n.exact) {
    if (n.exact->den == 1) return std::to_string(n.exact->num);
    return std::to_string(n.exact->num) + "/" + std::to_string(n.exact->den);
  }
  return format_double(n.value);
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace cic
