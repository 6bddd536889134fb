#pragma once

#include "vilenkin/group.hpp"
#include "vilenkin/rational.hpp"

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>

namespace vilenkin {

/// Raised when an exact computation would leave the rational-complex field,
/// i.e. it needs a root of unity other than +-1, +-i.
class BackendBoundaryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Complex number with exact rational parts.
struct ExactComplex {
  Rational re;
  Rational im;

  ExactComplex() : re(0), im(0) {}
  ExactComplex(int v) : re(v), im(0) {}  // NOLINT: Eigen builds zeros from int
  ExactComplex(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  ExactComplex& operator+=(const ExactComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ExactComplex& operator*=(const ExactComplex& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  ExactComplex& operator/=(const ExactComplex& o) {
    Rational d = o.re * o.re + o.im * o.im;
    Rational r = (re * o.re + im * o.im) / d;
    Rational i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {Rational(-a.re), Rational(-a.im)}; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const ExactComplex& z) {
    return os << "(" << to_fraction_string(z.re) << "," << to_fraction_string(z.im) << ")";
  }
};

using Exact = ExactComplex;
using Float = std::complex<double>;

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactComplex> {
  using Real = Rational;
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";

  static ExactComplex from_rational(const Rational& r) { return ExactComplex(r); }
  static ExactComplex from_complex(const Rational& re, const Rational& im) { return {re, im}; }
  static Real real_from_rational(const Rational& r) { return r; }

  /// Only quarter turns are representable.
  static ExactComplex root(const RootOfUnity& z) {
    if ((4 * z.exponent()) % z.order() != 0)
      throw BackendBoundaryError("exact backend cannot represent exp(2 pi i * " +
                                 std::to_string(z.exponent()) + "/" + std::to_string(z.order()) +
                                 "); use the f64 backend or p in {2, 4}");
    switch ((4 * z.exponent()) / z.order()) {
      case 0: return {Rational(1), Rational(0)};
      case 1: return {Rational(0), Rational(1)};
      case 2: return {Rational(-1), Rational(0)};
      default: return {Rational(0), Rational(-1)};
    }
  }
  static bool supports_order(long order) { return 4 % order == 0; }

  static ExactComplex conj(const ExactComplex& z) { return {z.re, Rational(-z.im)}; }
  static Real abs2(const ExactComplex& z) { return z.re * z.re + z.im * z.im; }
  static Real real(const ExactComplex& z) { return z.re; }
  static Real imag(const ExactComplex& z) { return z.im; }
  static bool is_zero(const ExactComplex& z) { return z.re == 0 && z.im == 0; }
  static std::complex<double> to_complex(const ExactComplex& z) {
    return {z.re.get_d(), z.im.get_d()};
  }
  static double to_double(const Real& r) { return r.get_d(); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  using Real = double;
  static constexpr bool exact = false;
  static constexpr const char* name = "f64";

  static Float from_rational(const Rational& r) { return {r.get_d(), 0.0}; }
  static Float from_complex(const Rational& re, const Rational& im) {
    return {re.get_d(), im.get_d()};
  }
  static Real real_from_rational(const Rational& r) { return r.get_d(); }
  static Float root(const RootOfUnity& z) { return z.to_complex(); }
  static bool supports_order(long) { return true; }
  static Float conj(const Float& z) { return std::conj(z); }
  static Real abs2(const Float& z) { return std::norm(z); }
  static Real real(const Float& z) { return z.real(); }
  static Real imag(const Float& z) { return z.imag(); }
  static bool is_zero(const Float& z) { return z == Float(0.0, 0.0); }
  static std::complex<double> to_complex(const Float& z) { return z; }
  static double to_double(Real r) { return r; }
};

template <class Scalar>
using RealOf = typename ScalarTraits<Scalar>::Real;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
inline constexpr bool is_exact_v = ScalarTraits<Scalar>::exact;

/// p^e as the backend's real type.
template <class Scalar>
RealOf<Scalar> real_pow(long p, long e) {
  if constexpr (is_exact_v<Scalar>) {
    return pow_rational(p, e);
  } else {
    return std::pow(static_cast<double>(p), static_cast<double>(e));
  }
}

template <class Scalar>
Scalar scalar_pow(long p, long e) {
  return ScalarTraits<Scalar>::from_rational(pow_rational(p, e));
}

/// sum_k |v_k|^2.
template <class Scalar>
RealOf<Scalar> abs2_sum(const Vector<Scalar>& v) {
  RealOf<Scalar> total(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) total += ScalarTraits<Scalar>::abs2(v[i]);
  return total;
}

}  // namespace vilenkin

namespace Eigen {

template <>
struct NumTraits<vilenkin::ExactComplex> : GenericNumTraits<vilenkin::ExactComplex> {
  using Real = vilenkin::ExactComplex;
  using NonInteger = vilenkin::ExactComplex;
  using Nested = vilenkin::ExactComplex;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 64
  };
  static int digits10() { return 0; }
  static int max_digits10() { return 0; }
};

}  // namespace Eigen
