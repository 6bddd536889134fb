#pragma once

#include "vilenkin/haar.hpp"
#include "vilenkin/scalar.hpp"
#include "vilenkin/signal.hpp"
#include "vilenkin/vct.hpp"
#include "vilenkin/weights.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace vilenkin {

inline constexpr double LOWER_BOUND_C = 8.5e-5;

/// Half-open lambda-interval [lo, hi).
struct CellInterval {
  Rational lo;
  Rational hi;

  friend bool operator==(const CellInterval& a, const CellInterval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// Merges sorted cell indices into maximal lambda-intervals.
inline std::vector<CellInterval> merge_cells(const Grid& grid, const std::vector<Index>& cells) {
  std::vector<CellInterval> out;
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    while (j + 1 < cells.size() && cells[j + 1] == cells[j] + 1) ++j;
    out.push_back({grid.cell_start(cells[i]), grid.cell_start(cells[j] + 1)});
    i = j + 1;
  }
  return out;
}

namespace detail {

template <class Scalar>
RealOf<Scalar> weight_as(const Rational& w) {
  return ScalarTraits<Scalar>::real_from_rational(w);
}

template <class Scalar>
void require_nonzero(const StepFunction<Scalar>& f) {
  if (f.is_zero()) throw std::invalid_argument("variance of the zero function is undefined");
}

}  // namespace detail

/// int d(x, center)^2 |f(x)|^2 dx. The center only matters through its cell at the
/// grid resolution; coarser digits outside the grid are allowed.
template <class Scalar>
RealOf<Scalar> second_moment(const StepFunction<Scalar>& f, const GroupElement& center, Metric metric) {
  const Grid& g = f.grid();
  if (center.p() != g.p) throw std::invalid_argument("center over a different p");
  Index c = detail::to_index(detail::cell_of(center, g.m));
  RealOf<Scalar> total(0);
  for (Index k = 0; k < g.size(); ++k) {
    const Scalar& v = f[k];
    if (ScalarTraits<Scalar>::is_zero(v)) continue;
    Index shifted = digits::sub(k, c, g.p);
    total += ScalarTraits<Scalar>::abs2(v) * detail::weight_as<Scalar>(cell_moment(g.p, g.m, shifted, metric));
  }
  return real_pow<Scalar>(g.p, f.half_exponent()) * total;
}

template <class Scalar>
struct VarianceResult {
  RealOf<Scalar> value;
  Grid grid;
  std::vector<Index> argmin_cells;
  std::vector<CellInterval> argmin;
};

/// V(f) = min over centers of the normalized second moment. Centers outside the
/// smallest ball holding supp f cannot do better, and inside it the objective is
/// constant on cells, so the scan is over the cells of that ball.
template <class Scalar>
VarianceResult<Scalar> variance(const StepFunction<Scalar>& f, Metric metric) {
  using Real = RealOf<Scalar>;
  detail::require_nonzero(f);
  const Grid& g = f.grid();
  const int p = g.p;
  auto supp = f.support();
  Index lo = supp.front(), hi = supp.back();
  int t = 0;
  Index block = 1;
  while (lo / block != hi / block) {
    block *= static_cast<Index>(p);
    ++t;
  }
  const Index base = (lo / block) * block;

  Vector<Scalar> u(static_cast<Eigen::Index>(block));
  Vector<Scalar> w(static_cast<Eigen::Index>(block));
  Real mass(0);
  for (Index l = 0; l < block; ++l) {
    Real a = ScalarTraits<Scalar>::abs2(f[base + l]);
    mass += a;
    u[static_cast<Eigen::Index>(l)] = Scalar(a);
    w[static_cast<Eigen::Index>(l)] = ScalarTraits<Scalar>::from_rational(cell_moment(p, g.m, l, metric));
  }

  Vector<Scalar> objective = ScalarTraits<Scalar>::supports_order(p) && block > 1
                                 ? group_correlate(u, w, p, t)
                                 : group_correlate_direct(u, w, p);

  std::vector<Real> values(static_cast<std::size_t>(block));
  for (Index c = 0; c < block; ++c) values[c] = ScalarTraits<Scalar>::real(objective[static_cast<Eigen::Index>(c)]);
  Real best = *std::min_element(values.begin(), values.end());

  std::vector<Index> cells;
  for (Index c = 0; c < block; ++c) {
    bool tie;
    if constexpr (is_exact_v<Scalar>)
      tie = values[c] == best;
    else
      tie = values[c] - best <= 1e-12 * std::max(std::abs(best), 1e-300);
    if (tie) cells.push_back(base + c);
  }
  Real value = best / mass * real_pow<Scalar>(p, g.m);
  auto intervals = merge_cells(g, cells);
  return VarianceResult<Scalar>{value, g, std::move(cells), std::move(intervals)};
}

template <class Scalar>
struct UPReport {
  using Real = RealOf<Scalar>;

  Metric metric;
  bool exact;
  Real v_time;
  Real v_freq;
  Real up;
  std::vector<CellInterval> argmin_time;
  std::vector<CellInterval> argmin_freq;
};

template <class Scalar>
UPReport<Scalar> up_from_spectrum(const StepFunction<Scalar>& f, const StepFunction<Scalar>& spectrum, Metric metric) {
  auto time = variance(f, metric);
  auto freq = variance(spectrum, metric);
  return UPReport<Scalar>{metric,          is_exact_v<Scalar>, time.value, freq.value, time.value * freq.value,
                          time.argmin,     freq.argmin};
}

/// UP(f) = V(f) V(Ff).
template <class Scalar>
UPReport<Scalar> up(const StepFunction<Scalar>& f, Metric metric) {
  detail::require_nonzero(f);
  return up_from_spectrum(f, fourier_step(f), metric);
}

/// UP from an atom list; the transform is taken atom by atom, so the exact backend
/// also works for p outside {2, 4} when no irrational phases arise.
template <class Scalar>
UPReport<Scalar> up_atoms(int p, const std::vector<Atom<Scalar>>& atoms, Metric metric) {
  std::vector<Atom<Scalar>> transformed;
  transformed.reserve(atoms.size());
  for (const auto& a : atoms) transformed.push_back(fourier_atom(a));
  auto f = step_from_atoms(p, atoms);
  detail::require_nonzero(f);
  return up_from_spectrum(f, step_from_atoms(p, transformed), metric);
}

template <class Scalar>
struct WalshVariances {
  RealOf<Scalar> v_time;
  RealOf<Scalar> v_freq;
};

/// V_lambda of f_n = 1_I sum a_k w_k and of its transform, from the coefficients a and
/// the cell values b of f_n (||f_n||^2 = sum |a_k|^2):
///   V(f_n)  = min_{k0} sum_k |b_{k + k0}|^2 ((k+1)^3 - k^3)/3 * p^{-3n} / sum |a_k|^2
///   V(Ff_n) = min_{k1} sum_k |a_{k + k1}|^2 ((k+1)^3 - k^3)/3 / sum |a_k|^2
template <class Scalar>
WalshVariances<Scalar> variance_lambda_walsh(const WalshPolynomial<Scalar>& wp) {
  using Real = RealOf<Scalar>;
  const int p = wp.p, n = wp.n;
  const Index len = detail::checked_length(p, n);
  Vector<Scalar> b = walsh_poly_to_step(wp).values();

  Vector<Scalar> cubes(static_cast<Eigen::Index>(len));
  for (Index k = 0; k < len; ++k) cubes[static_cast<Eigen::Index>(k)] = ScalarTraits<Scalar>::from_rational(cell_moment(p, 0, k, Metric::lambda));

  auto minimum = [&](const Vector<Scalar>& x) {
    Vector<Scalar> u(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) u[i] = Scalar(ScalarTraits<Scalar>::abs2(x[i]));
    Vector<Scalar> r = ScalarTraits<Scalar>::supports_order(p) ? group_correlate(u, cubes, p, n)
                                                             : group_correlate_direct(u, cubes, p);
    Real best = ScalarTraits<Scalar>::real(r[0]);
    for (Eigen::Index i = 1; i < r.size(); ++i) best = std::min<Real>(best, ScalarTraits<Scalar>::real(r[i]));
    return best;
  };

  Real a2 = abs2_sum<Scalar>(wp.coeffs);
  if (ScalarTraits<Scalar>::is_zero(Scalar(a2))) throw std::invalid_argument("variance of the zero function is undefined");
  // ||f_n||^2 = sum |a_k|^2 = p^{-n} sum |b_s|^2.
  Real v_time = minimum(b) * real_pow<Scalar>(p, -3 * n) / a2;
  Real v_freq = minimum(wp.coeffs) / a2;
  return {v_time, v_freq};
}

/// int ||t||_G^2 |Ff(t)|^2 dt = sum |p^{j+1} c^nu_{j,k}|^2, tail included in closed form.
template <class Scalar>
RealOf<Scalar> moment_via_haar(const StepFunction<Scalar>& f) {
  auto e = haar_analyze(f);
  const int p = e.p, h = e.half_exponent;
  RealOf<Scalar> total(0);
  for (const auto& [idx, v] : e.details)
    total += real_pow<Scalar>(p, 3 * idx.j + 2 + h) * ScalarTraits<Scalar>::abs2(v);
  // sum_{j < jmin} (p-1) p^{2j+2} p^{j+h} |mean|^2
  Rational geometric(Integer(p - 1) * p * p, Integer(p) * p * p - 1);
  geometric.canonicalize();
  total += ScalarTraits<Scalar>::real_from_rational(geometric) * real_pow<Scalar>(p, 3 * e.tail_jmin + h) *
           ScalarTraits<Scalar>::abs2(e.tail_mean);
  return total;
}

template <class Scalar>
struct BoundsReport {
  using Real = RealOf<Scalar>;

  Real up_lambda;
  Real up_g;
  Real lower_comparison;  // p^{-4} UP_G
  bool lower_bound_ok;    // UP_lambda >= C
  bool comparison_ok;     // p^{-4} UP_G <= UP_lambda < UP_G

  bool ok() const { return lower_bound_ok && comparison_ok; }
};

template <class Scalar>
BoundsReport<Scalar> check_bounds(const StepFunction<Scalar>& f) {
  using Real = RealOf<Scalar>;
  auto lam = up(f, Metric::lambda);
  auto gn = up(f, Metric::gnorm);
  Real scaled = gn.up * real_pow<Scalar>(f.p(), -4);
  BoundsReport<Scalar> r{lam.up, gn.up, scaled, false, false};
  if constexpr (is_exact_v<Scalar>) {
    r.lower_bound_ok = lam.up >= Rational(17, 200000);
    r.comparison_ok = scaled <= lam.up && lam.up < gn.up;
  } else {
    const double slack = 1e-9;
    r.lower_bound_ok = lam.up >= LOWER_BOUND_C * (1 - slack);
    r.comparison_ok = scaled <= lam.up * (1 + slack) && lam.up < gn.up * (1 + slack);
  }
  return r;
}

}  // namespace vilenkin
