#include "vilenkin/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace vilenkin {

Rational pow_rational(long base, long exponent) {
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), Integer(base).get_mpz_t(),
             static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(power);
  Rational result(Integer(1), power);
  result.canonicalize();
  return result;
}

long floor_log(const Rational& value, long p) {
  if (sgn(value) <= 0) throw std::invalid_argument("floor_log of a nonpositive value");
  long e = 0;
  Rational scaled = value;
  while (scaled >= p) {
    scaled /= p;
    ++e;
  }
  while (scaled < 1) {
    scaled *= p;
    --e;
  }
  return e;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed fraction: " + std::string(text));
    Integer d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    result = Rational(Integer(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw std::invalid_argument("malformed decimal: " + std::string(text));
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    Integer f{std::string(frac)};
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    result = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed number: " + std::string(text));
    result = Rational(Integer(std::string(body)));
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string to_fraction_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

bool has_p_power_denominator(const Rational& value, long p) {
  Integer den = value.get_den();
  Integer base(p);
  while (den > 1) {
    Integer g = gcd(den, base);
    if (g == 1) return false;
    den /= g;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t base, int exponent) {
  std::uint64_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace vilenkin
