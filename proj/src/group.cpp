#include "vilenkin/group.hpp"

#include <numbers>
#include <numeric>
#include <stdexcept>

namespace vilenkin {

GroupParams::GroupParams(int p_) : p(p_) {
  if (p < 2) throw std::invalid_argument("Vilenkin parameter p must be >= 2");
}

// ---- PAdicRational --------------------------------------------------------

PAdicRational::PAdicRational(int p, Integer numerator, long exponent)
    : p_(GroupParams(p).p), numerator_(std::move(numerator)), exponent_(exponent) {
  if (numerator_ < 0) throw std::invalid_argument("PAdicRational must be nonnegative");
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  while (numerator_ % p_ == 0) {
    numerator_ /= p_;
    --exponent_;
  }
}

PAdicRational PAdicRational::from_rational(const Rational& value, int p) {
  GroupParams params(p);
  if (sgn(value) < 0) throw std::invalid_argument("negative lambda-coordinate");
  if (!has_p_power_denominator(value, p))
    throw std::invalid_argument("denominator of " + to_fraction_string(value) +
                                " is not a power of " + std::to_string(p));
  long e = 0;
  Integer power = 1;
  while (power % value.get_den() != 0) {
    power *= p;
    ++e;
  }
  Integer numerator = value.get_num() * (power / value.get_den());
  return PAdicRational(p, numerator, e);
}

Rational PAdicRational::value() const {
  Rational r(numerator_);
  return r * pow_rational(p_, -exponent_);
}

// ---- RootOfUnity ----------------------------------------------------------

namespace {

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

RootOfUnity::RootOfUnity(long order, long exponent) : order_(order), exponent_(0) {
  if (order < 1) throw std::invalid_argument("root of unity order must be >= 1");
  exponent_ = mod(exponent, order);
}

RootOfUnity RootOfUnity::pow(long k) const {
  return RootOfUnity(order_, static_cast<long>((static_cast<__int128>(exponent_) * k) % order_));
}

RootOfUnity RootOfUnity::lift(long order) const {
  if (order % order_ != 0) throw std::invalid_argument("lift order must be a multiple");
  return RootOfUnity(order, exponent_ * (order / order_));
}

std::complex<double> RootOfUnity::to_complex() const {
  // Exact quarter turns avoid cos/sin rounding at 0, pi/2, pi, 3pi/2.
  if ((4 * exponent_) % order_ == 0) {
    switch ((4 * exponent_) / order_) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  double angle = 2.0 * std::numbers::pi * static_cast<double>(exponent_) /
                 static_cast<double>(order_);
  return std::polar(1.0, angle);
}

RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
  long order = std::lcm(a.order_, b.order_);
  return RootOfUnity(order, a.lift(order).exponent_ + b.lift(order).exponent_);
}

bool operator==(const RootOfUnity& a, const RootOfUnity& b) {
  long order = std::lcm(a.order_, b.order_);
  return a.lift(order).exponent_ == b.lift(order).exponent_;
}

// ---- CyclotomicSum --------------------------------------------------------

std::vector<Integer> cyclotomic_polynomial(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic polynomial index must be >= 1");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<Integer> poly(n + 1, Integer(0));
  poly[0] = -1;
  poly[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto divisor = cyclotomic_polynomial(d);
    std::size_t deg = divisor.size() - 1;
    std::vector<Integer> quotient(poly.size() - deg, Integer(0));
    for (std::size_t i = poly.size(); i-- > deg;) {
      Integer c = poly[i];  // divisor is monic
      quotient[i - deg] = c;
      for (std::size_t t = 0; t <= deg; ++t) poly[i - deg + t] -= c * divisor[t];
    }
    poly = std::move(quotient);
  }
  return poly;
}

CyclotomicSum::CyclotomicSum(long order) : order_(order), coeffs_(order, Rational(0)) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
}

void CyclotomicSum::add(const RootOfUnity& root, const Rational& coeff) {
  if (order_ % root.order() != 0)
    throw std::invalid_argument("root order does not divide the cyclotomic order");
  coeffs_[root.lift(order_).exponent()] += coeff;
}

void CyclotomicSum::add(const CyclotomicSum& other) {
  if (other.order_ != order_) throw std::invalid_argument("cyclotomic order mismatch");
  for (long e = 0; e < order_; ++e) coeffs_[e] += other.coeffs_[e];
}

void CyclotomicSum::scale(const Rational& factor) {
  for (auto& c : coeffs_) c *= factor;
}

std::vector<Rational> CyclotomicSum::reduced() const {
  auto phi = cyclotomic_polynomial(order_);
  std::size_t deg = phi.size() - 1;
  std::vector<Rational> r = coeffs_;
  for (std::size_t i = r.size(); i-- > deg;) {
    Rational c = r[i];
    if (c == 0) continue;
    for (std::size_t t = 0; t <= deg; ++t) r[i - deg + t] -= c * Rational(phi[t]);
  }
  r.resize(deg);
  return r;
}

bool CyclotomicSum::is_zero() const {
  for (const auto& c : reduced())
    if (c != 0) return false;
  return true;
}

std::optional<Rational> CyclotomicSum::rational_value() const {
  auto r = reduced();
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] != 0) return std::nullopt;
  return r.empty() ? Rational(0) : r[0];
}

bool CyclotomicSum::equals(const Rational& value) const {
  auto v = rational_value();
  return v && *v == value;
}

std::complex<double> CyclotomicSum::to_complex() const {
  std::complex<double> sum{0.0, 0.0};
  for (long e = 0; e < order_; ++e)
    if (coeffs_[e] != 0) sum += coeffs_[e].get_d() * RootOfUnity(order_, e).to_complex();
  return sum;
}

// ---- GroupElement ---------------------------------------------------------

GroupElement::GroupElement(int p) : p_(GroupParams(p).p) {}

GroupElement::GroupElement(int p, const std::map<int, int>& digits) : p_(GroupParams(p).p) {
  for (auto [pos, d] : digits) {
    if (d < 0 || d >= p_) throw std::invalid_argument("digit out of range {0,...,p-1}");
    if (d != 0) digits_.emplace(pos, d);
  }
}

int GroupElement::digit(int position) const {
  auto it = digits_.find(position);
  return it == digits_.end() ? 0 : it->second;
}

int GroupElement::leading_position() const {
  if (digits_.empty()) throw std::logic_error("N(x) is undefined for the zero element");
  return digits_.begin()->first;
}

int GroupElement::finest_position() const {
  if (digits_.empty()) throw std::logic_error("zero element has no digits");
  return digits_.rbegin()->first;
}

GroupElement GroupElement::truncated_below(int limit) const {
  std::map<int, int> kept(digits_.begin(), digits_.lower_bound(limit));
  return GroupElement(p_, kept);
}

namespace {

void require_same_p(const GroupElement& x, const GroupElement& y) {
  if (x.p() != y.p()) throw std::invalid_argument("group elements from different G_p");
}

}  // namespace

PAdicRational lambda(const GroupElement& x) {
  if (x.is_zero()) return PAdicRational::zero(x.p());
  // Horner over positions N..F: value = (sum x_j p^{F-j}) / p^{F+1}.
  int finest = x.finest_position();
  Integer numerator = 0;
  for (int pos = x.leading_position(); pos <= finest; ++pos)
    numerator = numerator * x.p() + x.digit(pos);
  return PAdicRational(x.p(), numerator, static_cast<long>(finest) + 1);
}

GroupElement lambda_inv(const PAdicRational& q) {
  std::map<int, int> digits;
  Integer n = q.numerator();
  // q = n / p^e: the least significant base-p digit of n sits at position e - 1.
  int pos = static_cast<int>(q.exponent()) - 1;
  while (n > 0) {
    Integer d = n % q.p();
    if (d != 0) digits.emplace(pos, static_cast<int>(d.get_si()));
    n /= q.p();
    --pos;
  }
  return GroupElement(q.p(), digits);
}

GroupElement lambda_inv(const Rational& q, int p) {
  return lambda_inv(PAdicRational::from_rational(q, p));
}

GroupElement add(const GroupElement& x, const GroupElement& y) {
  require_same_p(x, y);
  std::map<int, int> digits = x.digits();
  for (auto [pos, d] : y.digits()) digits[pos] = (digits[pos] + d) % x.p();
  return GroupElement(x.p(), digits);
}

GroupElement neg(const GroupElement& x) {
  std::map<int, int> digits;
  for (auto [pos, d] : x.digits()) digits.emplace(pos, x.p() - d);
  return GroupElement(x.p(), digits);
}

GroupElement sub(const GroupElement& x, const GroupElement& y) { return add(x, neg(y)); }

PAdicRational norm_g(const GroupElement& x) {
  if (x.is_zero()) return PAdicRational::zero(x.p());
  return PAdicRational::power(x.p(), -x.leading_position());
}

GroupElement dilate(const GroupElement& x, int k) {
  std::map<int, int> digits;
  for (auto [pos, d] : x.digits()) digits.emplace(pos - k, d);
  return GroupElement(x.p(), digits);
}

RootOfUnity character(const GroupElement& x, const GroupElement& xi) {
  require_same_p(x, xi);
  long sum = 0;
  for (auto [pos, d] : x.digits()) sum += static_cast<long>(d) * xi.digit(-1 - pos);
  return RootOfUnity(x.p(), sum);
}

RootOfUnity walsh(std::uint64_t n, const GroupElement& x) {
  return character(lambda_inv(Rational(Integer(std::to_string(n))), x.p()), x);
}

std::string to_string(const GroupElement& x) {
  return "{\"p\":" + std::to_string(x.p()) + ",\"lambda\":\"" + lambda(x).to_string() + "\"}";
}

}  // namespace vilenkin
