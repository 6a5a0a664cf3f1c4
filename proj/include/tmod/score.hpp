#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tmod {

// All modularity values are exact rationals. mpq_class keeps results in
// canonical form after every arithmetic operation.
using Score = mpq_class;

using Vertex = int;
using Time = int;  // 1-indexed

// Malformed input or a violated precondition. Maps to CLI exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enumeration would exceed the configured budget. Maps to CLI exit status 3.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

Score make_score(long num, long den = 1);

// Accepts "NUM" or "NUM/DEN" (optionally signed).
Score parse_rational(std::string_view text);

std::string to_string(const Score& s);

// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Score& s, int significant_digits = 12);

// Loyalty weight. Always a non-negative exact rational.
class Omega {
 public:
  Omega() = default;
  explicit Omega(Score value);
  static Omega parse(std::string_view text);

  const Score& value() const { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }

 private:
  Score value_{0};
};

}  // namespace tmod
