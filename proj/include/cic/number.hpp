#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cic {

/// Reduced fraction num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// A real input that remembers its exact rational value when it was entered
/// as a terminating decimal or a simple fraction such as "8/3".
struct Number {
  double value = 0.0;
  std::optional<Rational> exact;

  Number() = default;
  Number(double v) : value(v) {}  // NOLINT: implicit by intent
  explicit Number(Rational r) : value(r.to_double()), exact(r) {}
};

/// Parses "3", "-1.25", "8/3", "1e-6", " 2 ". Throws std::invalid_argument
/// on malformed text. Scientific notation and over-long decimals produce an
/// inexact Number.
Number parse_number(std::string_view text);

/// Sign of (a - factor * b) where factor is a small integer. Uses exact
/// rational arithmetic when both operands carry one; otherwise compares the
/// doubles with absolute tolerance `tol` scaled by max(1, |a|, |factor*b|).
int compare_scaled(const Number& a, int factor, const Number& b, double tol);

std::string to_string(const Number& n);

/// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace cic
