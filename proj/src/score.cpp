#include "tmod/score.hpp"

#include <cstdio>
#include <vector>

namespace tmod {

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("enumeration requires " + std::to_string(required) +
                         " assignments, budget is " + std::to_string(budget)),
      required_(required),
      budget_(budget) {}

Score make_score(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Score s(num, den);
  s.canonicalize();
  return s;
}

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  std::size_t i = 0;
  if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Score parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_integer(num, true) || (slash != std::string_view::npos && !valid_integer(den, false))) {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  mpz_class numerator(n, 10);
  mpz_class denominator(1);
  if (slash != std::string_view::npos) denominator = mpz_class(std::string(den), 10);
  if (denominator == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Score s(numerator, denominator);
  s.canonicalize();
  return s;
}

std::string to_string(const Score& s) { return s.get_str(); }

std::string to_decimal(const Score& s, int significant_digits) {
  if (sgn(s) == 0) return "0";
  mpf_class f(s, 512);
  std::vector<char> buf(64 + 2 * significant_digits);
  int len = gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant_digits, f.get_mpf_t());
  if (len >= static_cast<int>(buf.size())) {
    buf.resize(len + 1);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant_digits, f.get_mpf_t());
  }
  return std::string(buf.data());
}

Omega::Omega(Score value) : value_(std::move(value)) {
  if (sgn(value_) < 0) throw InputError("omega must be non-negative, got " + value_.get_str());
}

Omega Omega::parse(std::string_view text) { return Omega(parse_rational(text)); }

}  // namespace tmod
