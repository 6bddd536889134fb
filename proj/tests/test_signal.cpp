#include "support.hpp"

using namespace testing;

namespace {

GroupElement el(int p, const Rational& r) { return lambda_inv(r, p); }

template <class S>
Atom<S> atom(S c, int n, int p, const Rational& a, const Rational& b) {
  return Atom<S>{c, n, el(p, a), el(p, b)};
}

template <class S>
Atom<S> random_atom(std::mt19937_64& rng, int p) {
  std::uniform_int_distribution<int> scale(-2, 2);
  return Atom<S>{random_scalar<S>(rng), scale(rng), random_element(rng, p, -2, 3), random_element(rng, p, -2, 3)};
}

/// c chi(b, x) 1_{I_n + a}(x) at a point.
template <class S>
S evaluate(const Atom<S>& a, const GroupElement& x) {
  auto offset = x - a.translation;
  if (!offset.is_zero() && offset.leading_position() < a.scale) return S(0);
  return a.coeff * ScalarTraits<S>::root(character(a.modulation, x));
}

}  // namespace

TEST_CASE("step_from_atoms") {
  auto phi = step_from_atoms<Exact>(2, {atom(cx(1), 0, 2, q(0), q(0))});
  CHECK(phi.grid() == Grid(2, 0, 0));
  CHECK(phi[0] == cx(1));

  auto f2 = step_from_atoms<Exact>(2, {atom(cx(1), 2, 2, q(0), q(0)), atom(cx(1), 3, 2, q(1, 4), q(0))});
  REQUIRE(f2.grid() == Grid(2, 3, -1));
  const int expected[] = {1, 1, 1, 0};
  for (Index k = 0; k < 4; ++k) CHECK(f2[k] == cx(expected[k]));
  CHECK(same_function(f2, interval_indicator<Exact>(2, q(0), q(3, 8))));

  // Ff2 = 1[0,4)/4 + w1(./4) 1[0,8)/8
  auto ff2 = step_from_atoms<Exact>(2, {atom(Exact(q(1, 4)), -2, 2, q(0), q(0)), atom(Exact(q(1, 8)), -3, 2, q(0), q(1, 4))});
  REQUIRE(ff2.grid() == Grid(2, -1, 3));
  for (Index k = 0; k < 4; ++k) {
    Rational v = (k < 2 ? q(1, 4) : q(0)) + (k % 2 == 0 ? q(1, 8) : q(-1, 8));
    CHECK(ff2[k] == Exact(v));
  }
}

TEST_CASE("translate_dilate") {
  auto f = interval_indicator<Exact>(2, q(0), q(1, 2));
  CHECK(same_function(translate_dilate(f, 0, PAdicRational::zero(2)), f));
  CHECK(same_function(translate_dilate(f, 0, PAdicRational::from_rational(q(1, 2), 2)),
                      interval_indicator<Exact>(2, q(1, 2), q(1))));

  auto phi = interval_indicator<Exact>(2, q(0), q(1));
  auto d = translate_dilate(phi, 1, PAdicRational::zero(2));
  CHECK(d.half_exponent() == 1);
  CHECK(same_function(d, StepFunction<Exact>(Grid(2, 1, -1), Vector<Exact>::Constant(1, cx(1)), 1)));
  CHECK(d.norm2() == 1);
}

TEST_CASE("fourier_atom") {
  auto phi = atom(cx(1), 0, 2, q(0), q(0));
  auto fphi = fourier_atom(phi);
  CHECK(same_function(step_from_atoms<Exact>(2, {fphi}), step_from_atoms<Exact>(2, {phi})));

  auto f1 = fourier_atom(atom(cx(1), 2, 2, q(0), q(0)));
  CHECK(same_function(step_from_atoms<Exact>(2, {f1}), Exact(q(1, 4)) * interval_indicator<Exact>(2, q(0), q(4))));

  auto g1 = fourier_atom(atom(cx(1), 2, 2, q(3, 4), q(0)));
  CHECK(same_function(step_from_atoms<Exact>(2, {g1}),
                      step_from_atoms<Exact>(2, {atom(Exact(q(1, 4)), -2, 2, q(0), q(3, 4))})));
}

TEST_CASE("Walsh polynomial conversions") {
  auto f1 = interval_indicator<Exact>(2, q(0), q(1, 4));
  auto w = step_to_walsh_poly(f1);
  CHECK(w.n == 2);
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(w.coeffs[k] == Exact(q(1, 4)));

  Vector<Exact> delta = Vector<Exact>::Constant(8, cx(0));
  delta[0] = cx(1);
  auto one = walsh_poly_to_step(WalshPolynomial<Exact>{2, 3, delta});
  for (Index k = 0; k < 8; ++k) CHECK(one[k] == cx(1));

  CHECK_THROWS(step_to_walsh_poly(interval_indicator<Exact>(2, q(1, 2), q(3, 2))));

  std::mt19937_64 rng(11);
  for (int p : {2, 4}) {
    for (int n = 0; n <= 3; ++n) {
      WalshPolynomial<Exact> wp{p, n, random_vector<Exact>(rng, ipow(p, n))};
      auto step = walsh_poly_to_step(wp);
      auto back = step_to_walsh_poly(step);
      CHECK(back.coeffs == wp.coeffs);
      CHECK(abs2_sum<Exact>(wp.coeffs) == pow_rational(p, -n) * abs2_sum<Exact>(step.values()));
    }
  }
}

TEST_CASE("Walsh polynomial evaluates sum a_k w_k") {
  std::mt19937_64 rng(12);
  const int p = 3, n = 2;
  WalshPolynomial<Float> wp{p, n, random_vector<Float>(rng, 9)};
  auto step = walsh_poly_to_step(wp);
  for (long s = 0; s < 9; ++s) {
    Float v(0);
    auto x = lambda_inv(q(s, 9), p);
    for (long k = 0; k < 9; ++k) v += wp.coeffs[k] * walsh(static_cast<std::uint64_t>(k), x).to_complex();
    CHECK(std::abs(v - step[static_cast<Index>(s)]) < 1e-12);
  }
}

TEST_CASE("property: atoms agree with pointwise evaluation") {
  std::mt19937_64 rng(13);
  for (int p : {2, 4}) {
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_atom<Exact>(rng, p);
      auto f = step_from_atoms<Exact>(p, {a});
      for (Index k = 0; k < f.size(); ++k) CHECK(f[k] == evaluate(a, lambda_inv(f.grid().cell_start(k), p)));
    }
  }
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_atom<Float>(rng, p);
      auto f = step_from_atoms<Float>(p, {a});
      for (Index k = 0; k < f.size(); ++k)
        CHECK(std::abs(f[k] - evaluate(a, lambda_inv(f.grid().cell_start(k), p))) < 1e-12);
    }
  }
}

TEST_CASE("property: fourier_atom agrees with fourier_step") {
  std::mt19937_64 rng(14);
  for (int p : {2, 4}) {
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_atom<Exact>(rng, p);
      CHECK(same_function(step_from_atoms<Exact>(p, {fourier_atom(a)}), fourier_step(step_from_atoms<Exact>(p, {a}))));
    }
  }
  for (int p : {2, 3, 5}) {
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_atom<Float>(rng, p);
      CHECK(same_function(step_from_atoms<Float>(p, {fourier_atom(a)}), fourier_step(step_from_atoms<Float>(p, {a})), 1e-10));
    }
  }
}

TEST_CASE("property: translate_dilate preserves the norm") {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<int> jd(-3, 3), hd(0, 40);
  for (int p : {2, 3, 4}) {
    for (int trial = 0; trial < 40; ++trial) {
      auto f = random_step<Exact>(rng, p, 1, 1);
      int j = jd(rng);
      auto h = PAdicRational(p, Integer(hd(rng)), 2);
      auto g = translate_dilate(f, j, h);
      CHECK(g.norm2() == f.norm2());
      if (j % 2 == 0) CHECK(g.with_half_exponent(0).norm2() == f.norm2());
    }
  }
}

TEST_CASE("property: translate_dilate is the literal translation") {
  std::mt19937_64 rng(16);
  std::uniform_int_distribution<int> hd(0, 15);
  const int p = 2;
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_step<Exact>(rng, p, 2, 1);
    Rational h = q(hd(rng), 4);
    auto g = translate_dilate(f, 0, PAdicRational::from_rational(h, p));
    auto hx = lambda_inv(h, p);
    for (Index k = 0; k < g.size(); ++k) {
      auto x = lambda_inv(g.grid().cell_start(k), p);
      Index src = detail::to_index(detail::cell_of(x + hx, f.grid().m));
      CHECK(g[k] == (src < f.size() ? f[src] : cx(0)));
    }
  }
}

TEST_CASE("property: step_from_atoms is linear") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_atom<Exact>(rng, 2), b = random_atom<Exact>(rng, 2);
    Exact s = random_scalar<Exact>(rng), t = random_scalar<Exact>(rng);
    auto a2 = a, b2 = b;
    a2.coeff = s * a.coeff;
    b2.coeff = t * b.coeff;
    auto combined = step_from_atoms<Exact>(2, {a2, b2});
    auto separate = s * step_from_atoms<Exact>(2, {a}) + t * step_from_atoms<Exact>(2, {b});
    CHECK(same_function(combined, separate));
  }
}

TEST_CASE("refinement preserves the function") {
  std::mt19937_64 rng(18);
  auto f = random_step<Exact>(rng, 3, 1, 0);
  auto r = f.refined(3, 2);
  CHECK(same_function(f, r));
  CHECK(r.norm2() == f.norm2());
  CHECK_THROWS(f.refined(0, 0));
}
