#pragma once

#include "vilenkin/digits.hpp"
#include "vilenkin/group.hpp"
#include "vilenkin/scalar.hpp"

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace vilenkin {

using digits::Index;

/// Upper bound on cells per grid.
inline constexpr Index kMaxCells = Index(1) << 26;

/// Cells of width p^{-m} covering lambda^{-1}[0, p^M); cell k is
/// lambda^{-1}[k p^{-m}, (k+1) p^{-m}).
struct Grid {
  int p;
  int m;
  int M;

  Grid(int p_, int m_, int M_) : p(GroupParams(p_).p), m(m_), M(M_) {
    if (M + m < 0) throw std::invalid_argument("grid must contain at least one cell (M + m >= 0)");
    Index n = 1;
    for (int i = 0; i < M + m; ++i) {
      n *= static_cast<Index>(p);
      if (n > kMaxCells) throw std::length_error("grid exceeds 2^26 cells");
    }
  }

  int digit_count() const { return M + m; }
  Index size() const { return ipow(static_cast<Index>(p), M + m); }
  Rational cell_width() const { return pow_rational(p, -m); }
  Rational cell_start(Index k) const {
    return Rational(Integer(std::to_string(k))) * cell_width();
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.p == b.p && a.m == b.m && a.M == b.M;
  }
};

/// Complex step function on a Grid. The represented function is
/// p^{half_exponent / 2} * values[k] on cell k; the half-power keeps
/// L2-normalized dilations exact when the dilation exponent is odd.
template <class Scalar>
class StepFunction {
 public:
  using Real = RealOf<Scalar>;

  StepFunction(Grid grid, Vector<Scalar> values, int half_exponent = 0)
      : grid_(grid), values_(std::move(values)), half_exponent_(half_exponent) {
    if (static_cast<Index>(values_.size()) != grid_.size())
      throw std::invalid_argument("step function needs exactly p^{M+m} values");
  }

  static StepFunction zero(Grid grid) {
    return StepFunction(grid, Vector<Scalar>::Constant(static_cast<Eigen::Index>(grid.size()), Scalar(0)));
  }

  const Grid& grid() const { return grid_; }
  int p() const { return grid_.p; }
  const Vector<Scalar>& values() const { return values_; }
  Vector<Scalar>& values() { return values_; }
  int half_exponent() const { return half_exponent_; }
  Index size() const { return grid_.size(); }
  const Scalar& operator[](Index k) const { return values_[static_cast<Eigen::Index>(k)]; }

  /// ||f||^2 = p^h p^{-m} sum |v_k|^2.
  Real norm2() const {
    return real_pow<Scalar>(grid_.p, half_exponent_ - grid_.m) * abs2_sum<Scalar>(values_);
  }

  bool is_zero() const {
    for (Eigen::Index i = 0; i < values_.size(); ++i)
      if (!ScalarTraits<Scalar>::is_zero(values_[i])) return false;
    return true;
  }

  std::vector<Index> support() const {
    std::vector<Index> cells;
    for (Eigen::Index i = 0; i < values_.size(); ++i)
      if (!ScalarTraits<Scalar>::is_zero(values_[i])) cells.push_back(static_cast<Index>(i));
    return cells;
  }

  /// Same function on a finer and/or wider grid (m2 >= m, M2 >= M).
  StepFunction refined(int m2, int M2) const {
    if (m2 < grid_.m || M2 < grid_.M) throw std::invalid_argument("refinement must not coarsen");
    Grid target(grid_.p, m2, M2);
    Index factor = ipow(static_cast<Index>(grid_.p), m2 - grid_.m);
    Vector<Scalar> out = Vector<Scalar>::Constant(static_cast<Eigen::Index>(target.size()), Scalar(0));
    Index n = grid_.size();
    for (Index k = 0; k < target.size(); ++k) {
      Index src = k / factor;
      if (src < n) out[static_cast<Eigen::Index>(k)] = values_[static_cast<Eigen::Index>(src)];
    }
    return StepFunction(target, std::move(out), half_exponent_);
  }

  /// Rewrites with a different half-exponent of the same parity.
  StepFunction with_half_exponent(int h) const {
    if ((h - half_exponent_) % 2 != 0)
      throw std::invalid_argument("half-exponent change must be even");
    Scalar factor = scalar_pow<Scalar>(grid_.p, (half_exponent_ - h) / 2);
    Vector<Scalar> out = values_;
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] *= factor;
    return StepFunction(grid_, std::move(out), h);
  }

  /// Values with the half-power folded in (float backend only).
  Vector<Scalar> materialized_values() const
    requires(!ScalarTraits<Scalar>::exact)
  {
    double factor = std::pow(static_cast<double>(grid_.p), 0.5 * half_exponent_);
    return values_ * Scalar(factor, 0.0);
  }

 private:
  Grid grid_;
  Vector<Scalar> values_;
  int half_exponent_;
};

/// Smallest grid containing both.
inline Grid common_grid(const Grid& a, const Grid& b) {
  if (a.p != b.p) throw std::invalid_argument("grids over different p");
  return Grid(a.p, std::max(a.m, b.m), std::max(a.M, b.M));
}

template <class Scalar>
StepFunction<Scalar> operator+(const StepFunction<Scalar>& a, const StepFunction<Scalar>& b) {
  Grid g = common_grid(a.grid(), b.grid());
  int h = std::min(a.half_exponent(), b.half_exponent());
  auto ra = a.refined(g.m, g.M).with_half_exponent(h);
  auto rb = b.refined(g.m, g.M).with_half_exponent(h);
  return StepFunction<Scalar>(g, ra.values() + rb.values(), h);
}

template <class Scalar>
StepFunction<Scalar> operator*(const Scalar& c, const StepFunction<Scalar>& f) {
  Vector<Scalar> out = f.values();
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = c * out[i];
  return StepFunction<Scalar>(f.grid(), std::move(out), f.half_exponent());
}

/// Exact equality of the represented functions (exact backend), or agreement
/// within tol relative to the larger sup-norm (float backend).
template <class Scalar>
bool same_function(const StepFunction<Scalar>& a, const StepFunction<Scalar>& b, double tol = 1e-12) {
  Grid g = common_grid(a.grid(), b.grid());
  auto ra = a.refined(g.m, g.M);
  auto rb = b.refined(g.m, g.M);
  if constexpr (is_exact_v<Scalar>) {
    if ((a.half_exponent() - b.half_exponent()) % 2 != 0) return a.is_zero() && b.is_zero();
    int h = std::min(a.half_exponent(), b.half_exponent());
    return ra.with_half_exponent(h).values() == rb.with_half_exponent(h).values();
  } else {
    Vector<Scalar> va = ra.materialized_values();
    Vector<Scalar> vb = rb.materialized_values();
    double scale = std::max({1.0, va.cwiseAbs().maxCoeff(), vb.cwiseAbs().maxCoeff()});
    return (va - vb).cwiseAbs().maxCoeff() <= tol * scale;
  }
}

/// coeff * chi(modulation, x) * 1_{I_scale + translation}(x).
template <class Scalar>
struct Atom {
  Scalar coeff;
  int scale;
  GroupElement translation;
  GroupElement modulation;
};

namespace detail {

/// Smallest e >= 0 with p^e >= x, for x >= 1.
inline int ceil_log(const Integer& x, int p) {
  int e = 0;
  Integer power = 1;
  while (power < x) {
    power *= p;
    ++e;
  }
  return e;
}

inline Index to_index(const Integer& v) {
  if (v < 0 || v >= Integer(std::to_string(kMaxCells)) * 64)
    throw std::length_error("cell index out of range");
  return static_cast<Index>(v.get_ui());
}

/// floor(lambda(x) * p^m) as an integer: the cell of x at resolution m.
inline Integer cell_of(const GroupElement& x, int m) {
  Rational scaled = lambda(x).value() * pow_rational(x.p(), m);
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return q;
}

}  // namespace detail

/// Drops translation digits inside the ball and folds modulation digits that are
/// constant on the ball into the coefficient. Denotes the same function.
template <class Scalar>
Atom<Scalar> canonical(const Atom<Scalar>& a) {
  const int n = a.scale;
  GroupElement translation = a.translation.truncated_below(n);
  GroupElement coarse_mod = a.modulation.truncated_below(-n);
  std::map<int, int> fine;
  for (auto [pos, d] : a.modulation.digits())
    if (pos >= -n) fine.emplace(pos, d);
  GroupElement constant_part(a.modulation.p(), fine);
  Scalar coeff = a.coeff;
  auto phase = character(constant_part, translation);
  if (!phase.is_one()) coeff = coeff * ScalarTraits<Scalar>::root(phase);
  return Atom<Scalar>{coeff, n, translation, coarse_mod};
}

/// Coarsest grid on which the atom is a step function.
template <class Scalar>
Grid atom_grid(const Atom<Scalar>& atom) {
  auto a = canonical(atom);
  int m = a.modulation.is_zero() ? a.scale : -a.modulation.leading_position();
  Integer base = detail::cell_of(a.translation, a.scale);
  int M = -a.scale + detail::ceil_log(base + 1, a.translation.p());
  return Grid(a.translation.p(), m, M);
}

template <class Scalar>
StepFunction<Scalar> step_from_atoms(int p, std::span<const Atom<Scalar>> atoms) {
  if (atoms.empty()) return StepFunction<Scalar>::zero(Grid(p, 0, 0));
  int m = std::numeric_limits<int>::min(), M = std::numeric_limits<int>::min();
  for (const auto& atom : atoms) {
    if (atom.translation.p() != p || atom.modulation.p() != p)
      throw std::invalid_argument("atom over a different p");
    Grid g = atom_grid(atom);
    m = std::max(m, g.m);
    M = std::max(M, g.M);
  }
  Grid grid(p, m, M);
  auto result = StepFunction<Scalar>::zero(grid);
  for (const auto& raw : atoms) {
    auto a = canonical(raw);
    Index span = ipow(static_cast<Index>(p), m - a.scale);
    Index first = detail::to_index(detail::cell_of(a.translation, a.scale)) * span;
    for (Index k = first; k < first + span; ++k) {
      long e = 0;
      for (auto [pos, d] : a.modulation.digits()) {
        int idx = m + pos;  // digit of k at lambda-position -1-pos
        if (idx >= 0 && idx < grid.digit_count()) e += static_cast<long>(d) * digits::at(k, idx, p);
      }
      RootOfUnity phase(p, e);
      Scalar v = phase.is_one() ? a.coeff : a.coeff * ScalarTraits<Scalar>::root(phase);
      result.values()[static_cast<Eigen::Index>(k)] += v;
    }
  }
  return result;
}

template <class Scalar>
StepFunction<Scalar> step_from_atoms(int p, const std::vector<Atom<Scalar>>& atoms) {
  return step_from_atoms<Scalar>(p, std::span<const Atom<Scalar>>(atoms));
}

/// Exact Fourier transform of an atom:
/// F[c chi(b,.) 1_{I_n + a}] = c p^{-n} chi(a,b) chi(-a,.) 1_{I_{-n} + b}.
template <class Scalar>
Atom<Scalar> fourier_atom(const Atom<Scalar>& atom) {
  auto a = canonical(atom);
  int p = a.translation.p();
  Scalar coeff = a.coeff * scalar_pow<Scalar>(p, -a.scale);
  auto phase = character(a.translation, a.modulation);
  if (!phase.is_one()) coeff = coeff * ScalarTraits<Scalar>::root(phase);
  return canonical(Atom<Scalar>{coeff, -a.scale, a.modulation, neg(a.translation)});
}

/// f_{j,h}(x) = p^{j/2} f(D^j x + lambda^{-1}(h)).
template <class Scalar>
StepFunction<Scalar> translate_dilate(const StepFunction<Scalar>& f, int j, const PAdicRational& h) {
  const Grid& g = f.grid();
  if (h.p() != g.p) throw std::invalid_argument("translation over a different p");
  Index shift = detail::to_index(detail::cell_of(lambda_inv(h), g.m));
  int total = std::max(g.digit_count(), digits::count(shift, g.p));
  Grid out_grid(g.p, g.m + j, total - g.m - j);
  auto out = StepFunction<Scalar>::zero(out_grid);
  Index n = g.size();
  for (Index k = 0; k < out_grid.size(); ++k) {
    Index src = digits::add(k, shift, g.p);
    if (src < n) out.values()[static_cast<Eigen::Index>(k)] = f[src];
  }
  return StepFunction<Scalar>(out_grid, std::move(out.values()), f.half_exponent() + j);
}

/// 1 on lambda^{-1}[lo, hi) for p-adic endpoints 0 <= lo < hi, on the coarsest grid.
template <class Scalar>
StepFunction<Scalar> interval_indicator(int p, const Rational& lo, const Rational& hi) {
  GroupParams params(p);
  if (sgn(lo) < 0 || hi <= lo) throw std::invalid_argument("interval_indicator needs 0 <= lo < hi");
  if (!has_p_power_denominator(lo, p) || !has_p_power_denominator(hi, p))
    throw std::invalid_argument("interval endpoints need power-of-p denominators");
  long m = PAdicRational::from_rational(hi, p).exponent();
  if (sgn(lo) > 0) m = std::max(m, PAdicRational::from_rational(lo, p).exponent());
  int M = floor_log(hi, p);
  if (pow_rational(p, M) < hi) ++M;
  Grid grid(p, static_cast<int>(m), M);
  auto f = StepFunction<Scalar>::zero(grid);
  Rational a = lo * pow_rational(p, m), b = hi * pow_rational(p, m);
  a.canonicalize();
  b.canonicalize();
  for (Index k = detail::to_index(a.get_num()); k < detail::to_index(b.get_num()); ++k)
    f.values()[static_cast<Eigen::Index>(k)] = Scalar(1);
  return f;
}

/// 1_{lambda^{-1}[0,1)} * sum_{k < p^n} a_k w_k.
template <class Scalar>
struct WalshPolynomial {
  int p;
  int n;
  Vector<Scalar> coeffs;
};

}  // namespace vilenkin
