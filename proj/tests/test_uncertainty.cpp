#include "support.hpp"

#include <algorithm>
#include <set>

using namespace testing;

namespace {

StepFunction<Exact> indicator(int p, const Rational& lo, const Rational& hi) {
  return interval_indicator<Exact>(p, lo, hi);
}

GroupElement at(const Rational& x, int p) { return lambda_inv(x, p); }

/// Exhaustive scan over every center cell of [0, p^{M+1}) at the grid resolution.
Rational brute_variance(const StepFunction<Exact>& f, Metric metric, std::set<Index>* argmin = nullptr) {
  const Grid& g = f.grid();
  const Index cells = ipow(g.p, g.m + g.M + 1);
  std::optional<Rational> best;
  std::set<Index> where;
  for (Index c = 0; c < cells; ++c) {
    Rational v = second_moment(f, at(g.cell_start(c), g.p), metric);
    if (!best || v < *best) {
      best = v;
      where = {c};
    } else if (v == *best) {
      where.insert(c);
    }
  }
  if (argmin) *argmin = where;
  return *best / f.norm2();
}

}  // namespace

TEST_CASE("second_moment examples") {
  CHECK(second_moment(indicator(2, q(0), q(1)), GroupElement(2), Metric::gnorm) == q(4, 7));
  CHECK(second_moment(indicator(2, q(0), q(1, 4)), GroupElement(2), Metric::lambda) == q(1, 192));
  // one cell [3/4, 1) seen from 0: ||x|| = 1 there
  CHECK(second_moment(indicator(2, q(3, 4), q(1)), GroupElement(2), Metric::gnorm) == q(1, 4));
  // one cell [2, 3) at p = 3 seen from 1/3: ||x - 1/3|| = 3
  CHECK(second_moment(indicator(3, q(2), q(3)), at(q(1, 3), 3), Metric::gnorm) == q(9));
  // the center's digits finer than the grid do not matter
  auto f = indicator(2, q(0), q(3, 8));
  CHECK(second_moment(f, at(q(1, 8), 2), Metric::lambda) == second_moment(f, at(q(3, 16), 2), Metric::lambda));
}

TEST_CASE("variance examples") {
  auto f1 = variance(indicator(2, q(0), q(1, 4)), Metric::gnorm);
  CHECK(f1.value == q(1, 28));
  CHECK(f1.argmin == std::vector<CellInterval>{{q(0), q(1, 4)}});

  CHECK(variance(indicator(2, q(0), q(1, 4)), Metric::lambda).value == q(1, 48));
  CHECK(variance(indicator(4, q(0), q(1, 4)), Metric::gnorm).value == q(1, 21));

  // g2 = 1[3/4, 9/8), lambda metric: cross-checked by an exhaustive center scan
  auto g2f = indicator(2, q(3, 4), q(9, 8));
  auto g2 = variance(g2f, Metric::lambda);
  std::set<Index> brute_cells;
  CHECK(g2.value == brute_variance(g2f, Metric::lambda, &brute_cells));
  CHECK(g2.value == q(161, 192));
  CHECK(g2.argmin == std::vector<CellInterval>{{q(1, 4), q(3, 8)}});
  CHECK(std::set<Index>(g2.argmin_cells.begin(), g2.argmin_cells.end()) == brute_cells);

  CHECK_THROWS_AS(variance(StepFunction<Exact>::zero(Grid(2, 1, 0)), Metric::lambda), std::invalid_argument);
}

TEST_CASE("up examples") {
  auto f1 = indicator(2, q(0), q(1, 4));
  auto g = up(f1, Metric::gnorm);
  CHECK(g.v_time == q(1, 28));
  CHECK(g.v_freq == q(64, 7));
  CHECK(g.up == q(16, 49));
  auto l = up(f1, Metric::lambda);
  CHECK(l.v_time == q(1, 48));
  CHECK(l.v_freq == q(16, 3));
  CHECK(l.up == q(1, 9));
  CHECK(l.argmin_freq == std::vector<CellInterval>{{q(0), q(4)}});

  // f2 = 1[0, 3/8): the moment about 0 is 9/224 and 0 is a minimizer
  auto f2 = indicator(2, q(0), q(3, 8));
  auto g2 = up(f2, Metric::gnorm);
  CHECK(second_moment(f2, GroupElement(2), Metric::gnorm) == q(9, 224));
  CHECK(g2.v_time == brute_variance(f2, Metric::gnorm));
  CHECK(g2.v_time == q(3, 28));
  CHECK(g2.v_freq == q(96, 7));

  auto g2l = up(indicator(2, q(3, 4), q(9, 8)), Metric::gnorm);
  CHECK(g2l.v_time == q(19, 14));
  CHECK(g2l.v_freq == q(255, 14));
  CHECK(g2l.up == q(4845, 196));

  auto atoms = up_atoms<Exact>(2, {Atom<Exact>{cx(1), 2, GroupElement(2), GroupElement(2)}}, Metric::gnorm);
  CHECK(atoms.up == q(16, 49));

  auto fl = up(interval_indicator<Float>(2, q(0), q(1, 4)), Metric::gnorm);
  CHECK(std::abs(fl.up - 16.0 / 49) < 1e-12);
}

TEST_CASE("Walsh pathway examples") {
  Vector<Exact> a = Vector<Exact>::Constant(4, Exact(q(1, 4)));
  auto v = variance_lambda_walsh(WalshPolynomial<Exact>{2, 2, a});
  CHECK(v.v_freq == q(16, 3));
  CHECK(v.v_time == q(1, 48));

  Vector<Exact> delta = Vector<Exact>::Constant(4, cx(0));
  delta[0] = cx(1);
  auto one = variance_lambda_walsh(WalshPolynomial<Exact>{2, 2, delta});
  CHECK(one.v_freq == q(1, 3));
  CHECK(one.v_time == q(1, 3));

  Vector<Float> af = Vector<Float>::Constant(9, Float(1.0 / 9));
  auto vf = variance_lambda_walsh(WalshPolynomial<Float>{3, 2, af});
  auto direct = variance(walsh_poly_to_step(WalshPolynomial<Float>{3, 2, af}), Metric::lambda);
  CHECK(std::abs(vf.v_time - direct.value) < 1e-12);
}

TEST_CASE("moment_via_haar examples") {
  CHECK(moment_via_haar(indicator(2, q(0), q(1))) == q(4, 7));
  CHECK(moment_via_haar(haar_function<Exact>(1, 0, 0, 2)) == 4);
  CHECK(moment_via_haar(indicator(2, q(0), q(1, 4))) == q(16, 7));
}

TEST_CASE("check_bounds examples") {
  auto f1 = check_bounds(indicator(2, q(0), q(1, 4)));
  CHECK(f1.ok());
  CHECK(f1.lower_comparison == q(1, 49));
  auto g2 = check_bounds(indicator(2, q(3, 4), q(9, 8)));
  CHECK(g2.ok());
  CHECK(g2.up_g == q(4845, 196));
}

TEST_CASE("property: bounds on random functions") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> md(0, 3), Md(-1, 2);
  for (int p : {2, 4}) {
    for (int trial = 0; trial < 100; ++trial) {
      int m = md(rng), M = std::max(Md(rng), -m);
      if (p == 4) m = std::min(m, 2);
      auto r = check_bounds(random_step<Exact>(rng, p, m, M));
      CHECK(r.lower_bound_ok);
      CHECK(r.comparison_ok);
    }
  }
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 100; ++trial) {
      auto r = check_bounds(random_step<Float>(rng, p, 2, 0));
      CHECK(r.lower_bound_ok);
      CHECK(r.comparison_ok);
    }
  }
}

TEST_CASE("property: translation invariance") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> hd(0, 31);
  for (Metric metric : {Metric::lambda, Metric::gnorm}) {
    for (int trial = 0; trial < 30; ++trial) {
      auto f = random_step<Exact>(rng, 2, 2, 1);
      Rational h = q(hd(rng), 4);
      auto hx = PAdicRational::from_rational(h, 2);
      auto g = translate_dilate(f, 0, hx);
      auto vf = variance(f, metric), vg = variance(g, metric);
      CHECK(vf.value == vg.value);
      // g(x) = f(x + h): minimizers move by -h
      std::set<Rational> moved, found;
      for (Index c : vf.argmin_cells) moved.insert(lambda(at(f.grid().cell_start(c), 2) - lambda_inv(hx)).value());
      for (Index c : vg.argmin_cells) found.insert(g.grid().cell_start(c));
      CHECK(moved == found);
    }
  }
}

TEST_CASE("property: objective is constant on cells") {
  std::mt19937_64 rng(43);
  for (int p : {2, 3, 4}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto f = random_step<Exact>(rng, p, 1, 1);
      const Grid& g = f.grid();
      for (Index c = 0; c < g.size(); ++c) {
        auto base = at(g.cell_start(c), p);
        for (Metric metric : {Metric::lambda, Metric::gnorm}) {
          Rational v = second_moment(f, base, metric);
          for (int rep = 1; rep < p; ++rep) {
            auto finer = base + GroupElement(p, {{g.m, rep}, {g.m + 2, p - 1}});
            CHECK(second_moment(f, finer, metric) == v);
          }
        }
      }
    }
  }
}

TEST_CASE("property: minimizers lie in the enclosing ball and match an exhaustive scan") {
  std::mt19937_64 rng(44);
  for (int p : {2, 4}) {
    for (Metric metric : {Metric::lambda, Metric::gnorm}) {
      for (int trial = 0; trial < 20; ++trial) {
        auto f = random_step<Exact>(rng, p, 2, 0);
        std::set<Index> brute;
        auto v = variance(f, metric);
        CHECK(v.value == brute_variance(f, metric, &brute));
        CHECK(std::set<Index>(v.argmin_cells.begin(), v.argmin_cells.end()) == brute);
        auto supp = f.support();
        Index block = 1;
        while (supp.front() / block != supp.back() / block) block *= p;
        for (Index c : brute) CHECK(c / block == supp.front() / block);
      }
    }
  }
}

TEST_CASE("property: three pathways agree") {
  std::mt19937_64 rng(45);
  std::uniform_int_distribution<int> md(0, 4);
  for (int trial = 0; trial < 30; ++trial) {
    int m = md(rng);
    auto f = random_step<Exact>(rng, 2, m, 0);
    auto wp = step_to_walsh_poly(f);
    CHECK(variance_lambda_walsh(wp).v_time == variance(f, Metric::lambda).value);
    Rational direct = second_moment(fourier_step(f), GroupElement(2), Metric::gnorm);
    CHECK(moment_via_haar(f) == direct);
    CHECK(modified_gibbs(f).norm2() == direct);
  }
}
