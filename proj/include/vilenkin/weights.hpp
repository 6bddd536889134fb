#pragma once

#include "vilenkin/rational.hpp"
#include "vilenkin/signal.hpp"

#include <string>
#include <vector>

namespace vilenkin {

/// lambda: d(x, y) = lambda(x - y); gnorm: d(x, y) = ||x - y||_G.
enum class Metric { lambda, gnorm };

inline const char* to_string(Metric m) { return m == Metric::lambda ? "lambda" : "gnorm"; }

inline Integer to_integer(Index k) { return Integer(std::to_string(k)); }

/// ||x||_G on cell t >= 1 of resolution m (constant there): p^{s+1} with p^s <= t p^{-m} < p^{s+1}.
inline Rational cell_gnorm(int p, int m, Index t) {
  if (t == 0) throw std::invalid_argument("||.||_G is not constant on the cell containing 0");
  return pow_rational(p, floor_log(Rational(to_integer(t)), p) - m + 1);
}

/// int_{I_m} ||t||_G^2 dt = p^{-3m} p^2 (p-1) / (p^3 - 1).
inline Rational zero_cell_gnorm_moment(int p, int m) {
  Rational shells(Integer(p) * p * (p - 1), Integer(p) * p * p - 1);
  shells.canonicalize();
  return pow_rational(p, -3 * m) * shells;
}

/// int over cell t (resolution m) of d(x, 0)^2.
inline Rational cell_moment(int p, int m, Index t, Metric metric) {
  if (metric == Metric::lambda) {
    Integer k = to_integer(t);
    Rational r(3 * k * k + 3 * k + 1, 3);
    r.canonicalize();
    return r * pow_rational(p, -3 * m);
  }
  if (t == 0) return zero_cell_gnorm_moment(p, m);
  Rational norm = cell_gnorm(p, m, t);
  return pow_rational(p, -m) * norm * norm;
}

/// Per-cell second moments about 0 on a grid.
struct CellWeights {
  Grid grid;
  Metric metric;
  std::vector<Rational> w;

  CellWeights(Grid g, Metric metric_) : grid(g), metric(metric_) {
    w.reserve(g.size());
    for (Index t = 0; t < g.size(); ++t) w.push_back(cell_moment(g.p, g.m, t, metric));
  }
};

}  // namespace vilenkin
