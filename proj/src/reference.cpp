#include "vilenkin/reference.hpp"

#include "vilenkin/io.hpp"
#include "vilenkin/uncertainty.hpp"

#include <cmath>
#include <sstream>

namespace vilenkin::reference {

namespace {

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

std::string intervals_string(const std::vector<CellInterval>& cells) {
  std::ostringstream out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << " u ";
    out << "[" << to_fraction_string(cells[i].lo) << "," << to_fraction_string(cells[i].hi) << ")";
  }
  return out.str();
}

Check exact_check(std::string name, const Rational& expected, const Rational& actual) {
  return {std::move(name), to_fraction_string(expected), to_fraction_string(actual), expected == actual};
}

Check float_check(std::string name, const Rational& expected, double actual, double tol) {
  double e = expected.get_d();
  bool ok = std::abs(actual - e) <= tol * std::max(1.0, std::abs(e));
  return {std::move(name), to_fraction_string(expected) + " (~" + io::format(e) + ")", io::format(actual), ok};
}

Check interval_check(std::string name, const std::vector<CellInterval>& expected,
                     const std::vector<CellInterval>& actual) {
  return {std::move(name), intervals_string(expected), intervals_string(actual), expected == actual};
}

}  // namespace

std::vector<NamedSignal> example_signals() {
  return {{"f1", q(0), q(1, 4)}, {"g1", q(3, 4), q(1)}, {"f2", q(0), q(3, 8)}, {"g2", q(3, 4), q(9, 8)}};
}

Rational closed_form_time(int k) {
  Rational P = pow_rational(2, k);
  return 1 - 4 / P + 4 / (P * (P * P + P + 1));
}

Rational closed_form_freq(int k) {
  Rational P = pow_rational(2, k);
  return q(3, 4) * P * P + q(1, 4) * P * P / (P * P + P + 1);
}

std::vector<Check> run_checks(bool corrupt) {
  struct Row {
    Rational v_lam, v_lam_f, up_lam, v_g, v_g_f, up_g;
  };
  const Row rows[] = {
      {q(1, 48), q(16, 3), q(1, 9), q(1, 28), q(64, 7), q(16, 49)},
      {q(1, 48), q(16, 3), q(1, 9), q(1, 28), q(64, 7), q(16, 49)},
      {q(3, 64), q(8), q(3, 8), q(4, 21), q(96, 7), q(128, 49)},
      {q(71, 64), q(32, 3), q(71, 6), q(19, 14), q(255, 14), q(4845, 196)},
  };
  const std::vector<std::vector<CellInterval>> argmin_time = {
      {{q(0), q(1, 4)}}, {{q(3, 4), q(1)}}, {{q(0), q(1, 8)}}, {{q(3, 4), q(7, 8)}}};
  const std::vector<std::vector<CellInterval>> argmin_freq = {
      {{q(0), q(4)}}, {{q(0), q(4)}}, {{q(0), q(2)}}, {{q(0), q(4)}}};

  std::vector<Check> checks;
  auto signals = example_signals();
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const auto& s = signals[i];
    Row expected = rows[i];
    if (corrupt && i == 0) expected.up_lam = q(1, 8);
    auto f = interval_indicator<Exact>(2, s.lo, s.hi);
    auto lam = up(f, Metric::lambda);
    auto gn = up(f, Metric::gnorm);
    checks.push_back(exact_check("V_lambda(" + s.name + ")", expected.v_lam, lam.v_time));
    checks.push_back(exact_check("V_lambda(F" + s.name + ")", expected.v_lam_f, lam.v_freq));
    checks.push_back(exact_check("UP_lambda(" + s.name + ")", expected.up_lam, lam.up));
    checks.push_back(exact_check("V_G(" + s.name + ")", expected.v_g, gn.v_time));
    checks.push_back(exact_check("V_G(F" + s.name + ")", expected.v_g_f, gn.v_freq));
    checks.push_back(exact_check("UP_G(" + s.name + ")", expected.up_g, gn.up));
    checks.push_back(interval_check("argmin_time(" + s.name + ")", argmin_time[i], lam.argmin_time));
    checks.push_back(interval_check("argmin_freq(" + s.name + ")", argmin_freq[i], lam.argmin_freq));
  }

  // f1 = 1[0, 1/4) over p = 2^k.
  for (int k = 1; k <= 2; ++k) {
    const int p = 1 << k;
    auto f = interval_indicator<Exact>(p, q(0), q(1, 4));
    auto gn = up(f, Metric::gnorm);
    std::string tag = "[p=" + std::to_string(p) + "]";
    if (k == 1) {  // the closed forms assume 2^k >= 4
      checks.push_back(exact_check("UP_G(f1)" + tag, q(16, 49), gn.up));
      continue;
    }
    checks.push_back(exact_check("V_G(f1)" + tag, closed_form_time(k), gn.v_time));
    checks.push_back(exact_check("V_G(Ff1)" + tag, closed_form_freq(k), gn.v_freq));
    checks.push_back(exact_check("UP_G(f1)" + tag, q(256, 441), gn.up));
  }
  {
    const int k = 3, p = 8;
    auto f = interval_indicator<Exact>(p, q(0), q(1, 4));
    auto time = variance(f, Metric::gnorm);
    auto ff = fourier_step(interval_indicator<Float>(p, q(0), q(1, 4)));
    auto freq = variance(ff, Metric::gnorm);
    std::string tag = "[p=8]";
    checks.push_back(exact_check("V_G(f1)" + tag, closed_form_time(k), time.value));
    checks.push_back(float_check("V_G(Ff1)" + tag, closed_form_freq(k), freq.value, 1e-9));
    checks.push_back(float_check("UP_G(f1)" + tag, closed_form_time(k) * closed_form_freq(k),
                                 time.value.get_d() * freq.value, 1e-9));
  }
  return checks;
}

}  // namespace vilenkin::reference
