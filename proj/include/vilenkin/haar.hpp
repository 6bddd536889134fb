#pragma once

#include "vilenkin/scalar.hpp"
#include "vilenkin/signal.hpp"
#include "vilenkin/vct.hpp"
#include "vilenkin/weights.hpp"

#include <cmath>
#include <compare>
#include <map>
#include <stdexcept>
#include <vector>

// Haar system psi^nu_{j,k}, nu = 1..p-1: supported on the cell
// lambda^{-1}[k p^{-j}, (k+1) p^{-j}) where it equals p^{j/2} zeta^{-nu x_j}
// (zeta = exp(2 pi i / p), x_j the digit of weight p^{-j-1}).

namespace vilenkin {

struct HaarIndex {
  int nu;
  int j;
  Index k;

  auto operator<=>(const HaarIndex&) const = default;
};

/// Haar coefficients c^nu_{j,k} = <f, psi^nu_{j,k}>, stored reduced:
/// c = p^{(j + half_exponent)/2} * value. Below tail_jmin only k = 0 is nonzero and
/// c^nu_{j,0} = p^{(j + half_exponent)/2} * tail_mean for every nu.
template <class Scalar>
struct HaarExpansion {
  using Real = RealOf<Scalar>;

  int p;
  int half_exponent = 0;
  std::map<HaarIndex, Scalar> details;
  int tail_jmin = 0;
  Scalar tail_mean = Scalar(0);

  /// Reduced coefficient including the analytic tail.
  Scalar reduced(int nu, int j, Index k) const {
    if (j < tail_jmin) return k == 0 ? tail_mean : Scalar(0);
    auto it = details.find({nu, j, k});
    return it == details.end() ? Scalar(0) : it->second;
  }

  /// Largest level with a nonzero detail, or tail_jmin - 1.
  int finest_level() const {
    int level = tail_jmin - 1;
    for (const auto& [idx, v] : details)
      if (!ScalarTraits<Scalar>::is_zero(v)) level = std::max(level, idx.j);
    return level;
  }

  /// sum |c|^2 including the tail: details p^{j+h} |r|^2, tail |mean|^2 p^{h + jmin}.
  Real norm2() const {
    Real total(0);
    for (const auto& [idx, v] : details)
      total += real_pow<Scalar>(p, idx.j + half_exponent) * ScalarTraits<Scalar>::abs2(v);
    total += real_pow<Scalar>(p, half_exponent + tail_jmin) * ScalarTraits<Scalar>::abs2(tail_mean);
    return total;
  }

  /// Drops zero details and absorbs tail-shaped levels into the tail (exact backend).
  HaarExpansion canonical() const {
    HaarExpansion out = *this;
    std::erase_if(out.details, [](const auto& kv) { return ScalarTraits<Scalar>::is_zero(kv.second); });
    if (ScalarTraits<Scalar>::is_zero(out.tail_mean)) {
      out.tail_mean = Scalar(0);
      out.tail_jmin = out.details.empty() ? 0 : out.details.begin()->first.j;
      for (const auto& [idx, v] : out.details) out.tail_jmin = std::min(out.tail_jmin, idx.j);
      return out;
    }
    for (;;) {
      const int j = out.tail_jmin;
      int matched = 0;
      bool other = false;
      for (const auto& [idx, v] : out.details) {
        if (idx.j != j) continue;
        if (idx.k == 0 && v == out.tail_mean)
          ++matched;
        else
          other = true;
      }
      if (other || matched != p - 1) break;
      for (int nu = 1; nu < p; ++nu) out.details.erase({nu, j, 0});
      ++out.tail_jmin;
    }
    return out;
  }
};

template <class Scalar>
bool same_expansion(const HaarExpansion<Scalar>& a, const HaarExpansion<Scalar>& b, double tol = 1e-12) {
  if (a.p != b.p) return false;
  if constexpr (is_exact_v<Scalar>) {
    if (a.half_exponent != b.half_exponent) return false;
    auto ca = a.canonical();
    auto cb = b.canonical();
    return ca.tail_jmin == cb.tail_jmin && ca.tail_mean == cb.tail_mean && ca.details == cb.details;
  } else {
    if (a.half_exponent != b.half_exponent) return false;
    double scale = std::max(1.0, std::sqrt(std::max(a.norm2(), b.norm2())));
    if (std::abs(a.tail_mean - b.tail_mean) > tol * scale) return false;
    auto check = [&](const HaarExpansion<Scalar>& x, const HaarExpansion<Scalar>& y) {
      for (const auto& [idx, v] : x.details)
        if (std::abs(v - y.reduced(idx.nu, idx.j, idx.k)) > tol * scale) return false;
      return true;
    };
    return check(a, b) && check(b, a);
  }
}

/// psi^nu_{j,k} as a step function on the grid of resolution j + 1.
template <class Scalar>
StepFunction<Scalar> haar_function(int nu, int j, Index k, int p) {
  GroupParams params(p);
  if (nu < 1 || nu >= p) throw std::invalid_argument("Haar index nu must be in 1..p-1");
  int M = -j + detail::ceil_log(to_integer(k) + 1, p);
  Grid grid(p, j + 1, M);
  auto f = StepFunction<Scalar>::zero(grid);
  for (int d = 0; d < p; ++d)
    f.values()[static_cast<Eigen::Index>(k * p + d)] = ScalarTraits<Scalar>::root(RootOfUnity(p, -static_cast<long>(nu) * d));
  return StepFunction<Scalar>(grid, std::move(f.values()), j);
}

/// Exact Haar analysis by a p-ary pyramid of cell integrals.
template <class Scalar>
HaarExpansion<Scalar> haar_analyze(const StepFunction<Scalar>& f) {
  const Grid& g = f.grid();
  const int p = g.p;
  auto roots = detail::root_table<Scalar>(p);
  HaarExpansion<Scalar> e{p, f.half_exponent(), {}, -g.M, Scalar(0)};

  // integrals[t] = int over cell t at the current level of the reduced function.
  Vector<Scalar> integrals = f.values();
  Scalar width = scalar_pow<Scalar>(p, -g.m);
  for (Eigen::Index t = 0; t < integrals.size(); ++t) integrals[t] = integrals[t] * width;

  for (int j = g.m - 1; j >= -g.M; --j) {
    const Index cells = static_cast<Index>(integrals.size()) / p;
    Vector<Scalar> coarse(static_cast<Eigen::Index>(cells));
    for (Index k = 0; k < cells; ++k) {
      Scalar sum(0);
      for (int d = 0; d < p; ++d) sum += integrals[static_cast<Eigen::Index>(k * p + d)];
      coarse[static_cast<Eigen::Index>(k)] = sum;
      for (int nu = 1; nu < p; ++nu) {
        Scalar r(0);
        for (int d = 0; d < p; ++d) r += roots[(nu * d) % p] * integrals[static_cast<Eigen::Index>(k * p + d)];
        if (!ScalarTraits<Scalar>::is_zero(r)) e.details.emplace(HaarIndex{nu, j, k}, r);
      }
    }
    integrals = std::move(coarse);
  }
  e.tail_mean = integrals[0];
  return e;
}

/// Inverse of haar_analyze onto the given grid; throws if the expansion is not a step
/// function on that grid.
template <class Scalar>
StepFunction<Scalar> haar_synthesize(const HaarExpansion<Scalar>& e, const Grid& grid) {
  const int p = e.p;
  if (grid.p != p) throw std::invalid_argument("haar_synthesize: grid over a different p");
  for (const auto& [idx, v] : e.details)
    if (idx.j >= grid.m && !ScalarTraits<Scalar>::is_zero(v))
      throw std::invalid_argument("haar_synthesize: detail finer than the grid resolution");
  auto roots = detail::root_table<Scalar>(p);
  const int start = std::min(-grid.M, e.tail_jmin);
  if (grid.m - start > 0 && ipow(static_cast<Index>(p), grid.m - start) > kMaxCells)
    throw std::length_error("haar_synthesize: synthesis pyramid too large");
  const Scalar inv_p = ScalarTraits<Scalar>::from_rational(Rational(1, p));

  Vector<Scalar> integrals(1);
  integrals[0] = e.tail_mean;
  for (int j = start; j < grid.m; ++j) {
    const Index cells = static_cast<Index>(integrals.size());
    Vector<Scalar> fine(static_cast<Eigen::Index>(cells * p));
    for (Index k = 0; k < cells; ++k) {
      for (int d = 0; d < p; ++d) {
        Scalar acc = integrals[static_cast<Eigen::Index>(k)];
        for (int nu = 1; nu < p; ++nu) {
          Scalar r = e.reduced(nu, j, k);
          if (!ScalarTraits<Scalar>::is_zero(r)) acc += ScalarTraits<Scalar>::conj(roots[(nu * d) % p]) * r;
        }
        fine[static_cast<Eigen::Index>(k * p + d)] = acc * inv_p;
      }
    }
    integrals = std::move(fine);
  }
  Vector<Scalar> values = Vector<Scalar>::Constant(static_cast<Eigen::Index>(grid.size()), Scalar(0));
  Scalar height = scalar_pow<Scalar>(p, grid.m);
  for (Index t = 0; t < static_cast<Index>(integrals.size()); ++t) {
    const Scalar& v = integrals[static_cast<Eigen::Index>(t)];
    if (t >= grid.size()) {
      if (!ScalarTraits<Scalar>::is_zero(v))
        throw std::invalid_argument("haar_synthesize: support leaves the grid");
      continue;
    }
    values[static_cast<Eigen::Index>(t)] = v * height;
  }
  return StepFunction<Scalar>(grid, std::move(values), e.half_exponent);
}

/// D f with F(D f) = ||.||_G Ff. The frequency cell containing 0 is kept apart:
/// ||.||_G is not constant there, so its contribution is carried analytically.
template <class Scalar>
struct GibbsImage {
  using Real = RealOf<Scalar>;

  /// F^{-1}(||.||_G Ff) restricted to frequency cells other than the zero cell.
  StepFunction<Scalar> regular;
  /// Reduced value of Ff on the zero frequency cell.
  Scalar zero_cell_value;
  /// int_{zero cell} ||t||_G^2 dt.
  Real zero_cell_moment;

  /// ||D f||^2, exact on the exact backend.
  Real norm2() const {
    return regular.norm2() + real_pow<Scalar>(regular.p(), regular.half_exponent()) *
                                 ScalarTraits<Scalar>::abs2(zero_cell_value) * zero_cell_moment;
  }
};

template <class Scalar>
GibbsImage<Scalar> modified_gibbs(const StepFunction<Scalar>& f) {
  auto spectrum = fourier_step(f);
  const Grid& g = spectrum.grid();
  Scalar zero_value = spectrum[0];
  spectrum.values()[0] = Scalar(0);
  for (Index t = 1; t < g.size(); ++t) {
    auto& v = spectrum.values()[static_cast<Eigen::Index>(t)];
    if (!ScalarTraits<Scalar>::is_zero(v)) v = v * ScalarTraits<Scalar>::from_rational(cell_gnorm(g.p, g.m, t));
  }
  return GibbsImage<Scalar>{inverse_fourier_step(spectrum), zero_value,
                            ScalarTraits<Scalar>::real_from_rational(zero_cell_gnorm_moment(g.p, g.m))};
}

/// Classical Gibbs derivative on the Cantor group (p = 2): multiplier lambda(omega)
/// evaluated at the left end of each unit (or finer) frequency cell, so w_n^{[1]} = n w_n.
template <class Scalar>
StepFunction<Scalar> gibbs_classical(const StepFunction<Scalar>& f) {
  if (f.p() != 2) throw std::invalid_argument("the classical Gibbs derivative is defined for p = 2 only");
  auto spectrum = fourier_step(f);
  if (spectrum.grid().m < 0) spectrum = spectrum.refined(0, spectrum.grid().M);
  const Grid& g = spectrum.grid();
  for (Index t = 0; t < g.size(); ++t) {
    auto& v = spectrum.values()[static_cast<Eigen::Index>(t)];
    if (!ScalarTraits<Scalar>::is_zero(v)) v = v * ScalarTraits<Scalar>::from_rational(g.cell_start(t));
  }
  return inverse_fourier_step(spectrum);
}

/// Haar coefficients d of Ff computed from the Haar coefficients c of f.
///
/// For k >= 1 with q = floor(log_p k), lead = floor(k / p^q), nu = p - lead:
///   d^mu_{j,k} = p^{-q/2} * [inverse VCT of (c^nu_{q-j, mu p^q + n})_{n < p^q}]_{k - lead p^q}
/// and for k = 0:
///   d^mu_{j,0} = sum_nu ( p^{-1/2} zeta^{-mu nu} c^nu_{-1-j,0} + sum_{i < -1-j} p^{(i+j)/2} c^nu_{i,0} ).
template <class Scalar>
HaarExpansion<Scalar> d_from_c(const HaarExpansion<Scalar>& c) {
  const int p = c.p;
  auto roots = detail::root_table<Scalar>(p);
  const int finest = c.finest_level();
  const int m_in = std::max(finest + 1, c.tail_jmin);  // f is constant on cells of width p^{-m_in}
  const int M_in = -c.tail_jmin;                       // supp f within [0, p^{M_in})

  HaarExpansion<Scalar> d{p, c.half_exponent, {}, -m_in, Scalar(0)};

  auto add_detail = [&](int mu, int j, Index k, const Scalar& v) {
    if (ScalarTraits<Scalar>::is_zero(v)) return;
    auto [it, inserted] = d.details.emplace(HaarIndex{mu, j, k}, v);
    if (!inserted) it->second += v;
  };

  for (int j = -m_in; j <= M_in - 1; ++j) {
    const Scalar inv_pj = scalar_pow<Scalar>(p, -j);
    for (int mu = 1; mu < p; ++mu) {
      // k = 0.
      Scalar zero_term(0);
      for (int nu = 1; nu < p; ++nu) {
        const Scalar& r = c.reduced(nu, -1 - j, 0);
        if (!ScalarTraits<Scalar>::is_zero(r))
          zero_term += scalar_pow<Scalar>(p, -j - 1) * roots[(mu * (p - nu)) % p] * r;
        for (int i = c.tail_jmin; i <= -2 - j; ++i) {
          const Scalar& ri = c.reduced(nu, i, 0);
          if (!ScalarTraits<Scalar>::is_zero(ri)) zero_term += scalar_pow<Scalar>(p, i) * ri;
        }
      }
      zero_term += scalar_pow<Scalar>(p, std::min(c.tail_jmin, -1 - j)) * c.tail_mean;
      add_detail(mu, j, 0, zero_term);

      // k >= 1, grouped by q: every k in [lead p^q, (lead+1) p^q) shares one block.
      for (int q = 0; q < m_in + j; ++q) {
        const int i = q - j;
        if (i > finest || i < c.tail_jmin) continue;
        const Index block = ipow(static_cast<Index>(p), q);
        const Index offset = static_cast<Index>(mu) * block;
        for (int nu = 1; nu < p; ++nu) {
          Vector<Scalar> coeffs(static_cast<Eigen::Index>(block));
          bool any = false;
          for (Index n = 0; n < block; ++n) {
            coeffs[static_cast<Eigen::Index>(n)] = c.reduced(nu, i, offset + n);
            any = any || !ScalarTraits<Scalar>::is_zero(coeffs[static_cast<Eigen::Index>(n)]);
          }
          if (!any) continue;
          Vector<Scalar> b = vct_inverse(SpectrumVector<Scalar>{p, q, std::move(coeffs)});
          const Index lead = static_cast<Index>(p - nu);
          for (Index kr = 0; kr < block; ++kr)
            add_detail(mu, j, lead * block + kr, inv_pj * b[static_cast<Eigen::Index>(kr)]);
        }
      }
    }
  }

  // d_{j,0} = p^{(j+h)/2} f(0) below the finest scale of f, and f(0) = int Ff.
  Scalar mean = scalar_pow<Scalar>(p, c.tail_jmin) * c.tail_mean;
  for (const auto& [idx, v] : c.details)
    if (idx.k == 0) mean += scalar_pow<Scalar>(p, idx.j) * v;
  d.tail_mean = mean;
  return d;
}

}  // namespace vilenkin
