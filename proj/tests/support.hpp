#pragma once

#include "vilenkin/haar.hpp"
#include "vilenkin/signal.hpp"
#include "vilenkin/uncertainty.hpp"
#include "vilenkin/vct.hpp"

#include <doctest.h>

#include <random>
#include <string>

namespace testing {

using namespace vilenkin;

inline Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline Exact cx(long re, long im = 0) { return Exact(q(re), q(im)); }

/// Small random rational in [-range, range] with denominator up to den.
inline Rational random_rational(std::mt19937_64& rng, int range = 4, int den = 4) {
  std::uniform_int_distribution<int> d(1, den);
  int b = d(rng);
  std::uniform_int_distribution<int> n(-range * b, range * b);
  return q(n(rng), b);
}

template <class Scalar>
Scalar random_scalar(std::mt19937_64& rng, bool complex = true) {
  if constexpr (is_exact_v<Scalar>) {
    return Exact(random_rational(rng), complex ? random_rational(rng) : q(0));
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return Float(u(rng), complex ? u(rng) : 0.0);
  }
}

/// Random nonzero step function on grid (m, M) with a sprinkling of zero cells.
template <class Scalar>
StepFunction<Scalar> random_step(std::mt19937_64& rng, int p, int m, int M, bool complex = true) {
  Grid g(p, m, M);
  auto f = StepFunction<Scalar>::zero(g);
  std::bernoulli_distribution keep(0.7);
  for (Index k = 0; k < g.size(); ++k)
    if (keep(rng)) f.values()[static_cast<Eigen::Index>(k)] = random_scalar<Scalar>(rng, complex);
  if (f.is_zero()) f.values()[0] = Scalar(1);
  return f;
}

template <class Scalar>
Vector<Scalar> random_vector(std::mt19937_64& rng, Index len, bool complex = true) {
  Vector<Scalar> v(static_cast<Eigen::Index>(len));
  for (Index i = 0; i < len; ++i) v[static_cast<Eigen::Index>(i)] = random_scalar<Scalar>(rng, complex);
  return v;
}

inline GroupElement random_element(std::mt19937_64& rng, int p, int lo = -4, int hi = 6) {
  std::map<int, int> digits;
  std::uniform_int_distribution<int> pos(lo, hi), dig(0, p - 1), count(0, 5);
  for (int i = count(rng); i > 0; --i) digits[pos(rng)] = dig(rng);
  return GroupElement(p, digits);
}

inline double max_abs_diff(const Vector<Float>& a, const Vector<Float>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double rel_error(const Vector<Float>& a, const Vector<Float>& b) {
  return max_abs_diff(a, b) / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace testing
