#include "support.hpp"

using namespace testing;

namespace {

Vector<Exact> exact_vec(std::initializer_list<Rational> xs) {
  Vector<Exact> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v[i++] = Exact(x);
  return v;
}

}  // namespace

TEST_CASE("vct_forward examples") {
  CHECK(vct_forward(exact_vec({q(1), q(0)}), 2, 1).entries == exact_vec({q(1, 2), q(1, 2)}));
  CHECK(vct_forward(exact_vec({q(1), q(1), q(1), q(1)}), 2, 2).entries == exact_vec({q(1), q(0), q(0), q(0)}));
  CHECK(vct_forward(exact_vec({q(1), q(0), q(0), q(0)}), 2, 2).entries ==
        exact_vec({q(1, 4), q(1, 4), q(1, 4), q(1, 4)}));
  CHECK_THROWS_AS(vct_forward(exact_vec({q(1), q(0), q(0)}), 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(vct_forward(exact_vec({q(1), q(0), q(0)}), 3, 1), BackendBoundaryError);
}

TEST_CASE("vct_inverse examples") {
  CHECK(vct_inverse(SpectrumVector<Exact>{2, 2, exact_vec({q(1), q(0), q(0), q(0)})}) ==
        exact_vec({q(1), q(1), q(1), q(1)}));
  CHECK(vct_inverse(SpectrumVector<Exact>{2, 2, exact_vec({q(1, 4), q(1, 4), q(1, 4), q(1, 4)})}) ==
        exact_vec({q(1), q(0), q(0), q(0)}));
  std::mt19937_64 rng(21);
  for (int n = 0; n <= 8; ++n) {
    auto x = random_vector<Exact>(rng, ipow(2, n));
    CHECK(vct_inverse(vct_forward(x, 2, n)) == x);
  }
}

TEST_CASE("kernel is the Walsh function table") {
  for (int p : {2, 3, 5}) {
    const int n = 2;
    const long N = static_cast<long>(ipow(p, n));
    for (long s = 0; s < N; ++s) {
      Vector<Float> x = Vector<Float>::Zero(N);
      x[s] = 1.0;
      auto y = vct_forward(x, p, n).entries;
      auto xs = lambda_inv(q(s, N), p);
      for (long k = 0; k < N; ++k)
        CHECK(std::abs(y[k] - walsh(static_cast<std::uint64_t>(k), xs).to_complex() / static_cast<double>(N)) < 1e-14);
    }
  }
}

TEST_CASE("fourier_step examples") {
  auto f1 = interval_indicator<Exact>(2, q(0), q(1, 4));
  CHECK(same_function(fourier_step(f1), Exact(q(1, 4)) * interval_indicator<Exact>(2, q(0), q(4))));

  auto g2 = interval_indicator<Exact>(2, q(3, 4), q(9, 8));
  auto expected = step_from_atoms<Exact>(
      2, {Atom<Exact>{Exact(q(1, 4)), -2, GroupElement(2), lambda_inv(q(3, 4), 2)},
          Atom<Exact>{Exact(q(1, 8)), -3, GroupElement(2), lambda_inv(q(1), 2)}});
  CHECK(same_function(fourier_step(g2), expected));

  auto phi = interval_indicator<Exact>(2, q(0), q(1));
  CHECK(same_function(fourier_step(phi), phi));
  CHECK(same_function(inverse_fourier_step(fourier_step(g2)), g2));
}

TEST_CASE("group_correlate examples") {
  std::mt19937_64 rng(22);
  auto u = random_vector<Exact>(rng, 8);
  Vector<Exact> delta = Vector<Exact>::Constant(8, cx(0));
  delta[0] = cx(1);
  CHECK(group_correlate(u, delta, 2, 3) == u);

  auto e0 = exact_vec({q(1), q(0), q(0), q(0)});
  auto e1 = exact_vec({q(0), q(1), q(0), q(0)});
  auto r = group_correlate(e0, e1, 2, 2);
  CHECK(r == e1);  // r_c = u_{c xor 1}

  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_vector<Float>(rng, 81), b = random_vector<Float>(rng, 81);
    CHECK(rel_error(group_correlate(a, b, 3, 4), group_correlate_direct(a, b, 3)) < 1e-12);
  }
  for (int n = 0; n <= 5; ++n) {
    auto a = random_vector<Exact>(rng, ipow(4, n)), b = random_vector<Exact>(rng, ipow(4, n));
    CHECK(group_correlate(a, b, 4, n) == group_correlate_direct(a, b, 4));
  }
}

TEST_CASE("property: fast equals naive, exact backend, bit for bit") {
  std::mt19937_64 rng(23);
  for (int n = 0; n <= 10; ++n) {
    auto x = random_vector<Exact>(rng, ipow(2, n));
    CHECK(vct_forward(x, 2, n).entries == vct_forward_naive(x, 2, n).entries);
    SpectrumVector<Exact> y{2, n, x};
    CHECK(vct_inverse(y) == vct_inverse_naive(y));
  }
  for (int n = 0; n <= 5; ++n) {
    auto x = random_vector<Exact>(rng, ipow(4, n));
    CHECK(vct_forward(x, 4, n).entries == vct_forward_naive(x, 4, n).entries);
    SpectrumVector<Exact> y{4, n, x};
    CHECK(vct_inverse(y) == vct_inverse_naive(y));
  }
}

TEST_CASE("property: fast equals naive, float backend") {
  std::mt19937_64 rng(24);
  // naive is O(N^2); sizes capped at 2^12 entries
  struct Case {
    int p, n_max;
  };
  for (Case c : {Case{2, 12}, Case{3, 7}, Case{5, 5}, Case{8, 4}}) {
    for (int n = 0; n <= c.n_max; ++n) {
      auto x = random_vector<Float>(rng, ipow(c.p, n));
      CHECK(rel_error(vct_forward(x, c.p, n).entries, vct_forward_naive(x, c.p, n).entries) < 1e-12);
      SpectrumVector<Float> y{c.p, n, x};
      CHECK(rel_error(vct_inverse(y), vct_inverse_naive(y)) < 1e-12);
    }
  }
}

TEST_CASE("property: fast kernel is deterministic") {
  std::mt19937_64 rng(25);
  auto x = random_vector<Float>(rng, ipow(3, 8));
  auto a = vct_forward(x, 3, 8).entries;
  auto b = vct_forward(x, 3, 8).entries;
  CHECK((a.array() == b.array()).all());
}

TEST_CASE("property: discrete Plancherel, exact") {
  std::mt19937_64 rng(26);
  for (int p : {2, 4}) {
    for (int n = 0; n <= 5; ++n) {
      auto x = random_vector<Exact>(rng, ipow(p, n));
      CHECK(abs2_sum<Exact>(vct_forward(x, p, n).entries) == pow_rational(p, -n) * abs2_sum<Exact>(x));
    }
  }
}

TEST_CASE("property: Fourier Plancherel and double transform reflects") {
  std::mt19937_64 rng(27);
  for (int p : {2, 4}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto f = random_step<Exact>(rng, p, 1, 1);
      auto ff = fourier_step(f);
      CHECK(ff.norm2() == f.norm2());
      auto fff = fourier_step(ff);
      // FFf(x) = f(-x)
      for (Index k = 0; k < f.size(); ++k) CHECK(fff[digits::neg(k, p)] == f[k]);
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    auto a = Atom<Exact>{random_scalar<Exact>(rng), 1, random_element(rng, 2, -1, 2), random_element(rng, 2, -1, 2)};
    auto reflected = Atom<Exact>{a.coeff, a.scale, neg(a.translation), neg(a.modulation)};
    CHECK(same_function(fourier_step(fourier_step(step_from_atoms<Exact>(2, {a}))), step_from_atoms<Exact>(2, {reflected})));
  }
}
