#pragma once

#include "vilenkin/rational.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vilenkin {

/// Vilenkin parameter p >= 2.
struct GroupParams {
  int p;

  explicit GroupParams(int p_);
};

/// Nonnegative rational with a p-power denominator, stored as numerator / p^exponent
/// with the numerator not divisible by p (zero is 0 / p^0).
class PAdicRational {
 public:
  PAdicRational(int p, Integer numerator, long exponent);

  /// Throws std::invalid_argument if value < 0 or its denominator is not a power of p.
  static PAdicRational from_rational(const Rational& value, int p);
  static PAdicRational zero(int p) { return PAdicRational(p, Integer(0), 0); }
  /// p^e exactly.
  static PAdicRational power(int p, long e) { return PAdicRational(p, Integer(1), -e); }

  int p() const { return p_; }
  const Integer& numerator() const { return numerator_; }
  long exponent() const { return exponent_; }
  bool is_zero() const { return numerator_ == 0; }

  Rational value() const;
  std::string to_string() const { return to_fraction_string(value()); }

  friend bool operator==(const PAdicRational& a, const PAdicRational& b) {
    return a.p_ == b.p_ && a.numerator_ == b.numerator_ && a.exponent_ == b.exponent_;
  }

 private:
  int p_;
  Integer numerator_;
  long exponent_;
};

/// exp(2*pi*i*exponent/order), exactly.
class RootOfUnity {
 public:
  RootOfUnity(long order, long exponent);
  static RootOfUnity one(long order = 1) { return RootOfUnity(order, 0); }

  long order() const { return order_; }
  long exponent() const { return exponent_; }
  bool is_one() const { return exponent_ == 0; }

  RootOfUnity conj() const { return RootOfUnity(order_, order_ - exponent_); }
  RootOfUnity pow(long k) const;
  /// Same root expressed with a larger order that is a multiple of order().
  RootOfUnity lift(long order) const;

  std::complex<double> to_complex() const;

  friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b);
  /// Equal as complex numbers, whatever the stored order.
  friend bool operator==(const RootOfUnity& a, const RootOfUnity& b);

 private:
  long order_;
  long exponent_;
};

/// Exact element sum_e c_e * zeta_P^e of the cyclotomic field Q(zeta_P).
class CyclotomicSum {
 public:
  explicit CyclotomicSum(long order);

  long order() const { return order_; }
  void add(const RootOfUnity& root, const Rational& coeff = Rational(1));
  void add(const CyclotomicSum& other);
  void scale(const Rational& factor);

  /// Reduced modulo the P-th cyclotomic polynomial; the representation is unique there.
  bool is_zero() const;
  /// The rational value, if this element lies in Q.
  std::optional<Rational> rational_value() const;
  bool equals(const Rational& value) const;

  std::complex<double> to_complex() const;

 private:
  std::vector<Rational> reduced() const;

  long order_;
  std::vector<Rational> coeffs_;
};

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(long n);

/// Point of G_p with finitely many nonzero digits; position j carries weight p^{-j-1}.
/// Only nonzero digits are stored, so elements with infinite (p-1)-tails are unrepresentable.
class GroupElement {
 public:
  explicit GroupElement(int p);
  GroupElement(int p, const std::map<int, int>& digits);

  int p() const { return p_; }
  const std::map<int, int>& digits() const { return digits_; }
  int digit(int position) const;
  bool is_zero() const { return digits_.empty(); }

  /// N(x): position of the leading (smallest-position) nonzero digit. Undefined for zero.
  int leading_position() const;
  /// Largest position carrying a nonzero digit. Undefined for zero.
  int finest_position() const;

  /// Keeps only digits at positions < limit.
  GroupElement truncated_below(int limit) const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.p_ == b.p_ && a.digits_ == b.digits_;
  }

 private:
  int p_;
  std::map<int, int> digits_;
};

PAdicRational lambda(const GroupElement& x);
GroupElement lambda_inv(const PAdicRational& q);
GroupElement lambda_inv(const Rational& q, int p);

GroupElement add(const GroupElement& x, const GroupElement& y);
GroupElement sub(const GroupElement& x, const GroupElement& y);
GroupElement neg(const GroupElement& x);

inline GroupElement operator+(const GroupElement& x, const GroupElement& y) { return add(x, y); }
inline GroupElement operator-(const GroupElement& x, const GroupElement& y) { return sub(x, y); }
inline GroupElement operator-(const GroupElement& x) { return neg(x); }

/// ||x||_G = p^{-N(x)}, with ||0||_G = 0.
PAdicRational norm_g(const GroupElement& x);

/// D^k x, so that lambda(dilate(x, k)) = p^k lambda(x).
GroupElement dilate(const GroupElement& x, int k);

/// chi(x, xi) = exp(2 pi i / p * sum_j x_j xi_{-1-j}).
RootOfUnity character(const GroupElement& x, const GroupElement& xi);

/// w_n(x) = chi(lambda^{-1}(n), x).
RootOfUnity walsh(std::uint64_t n, const GroupElement& x);

/// Serializes as {"p":..,"lambda":"a/b"} text.
std::string to_string(const GroupElement& x);

}  // namespace vilenkin
