#pragma once

#include "vilenkin/digits.hpp"
#include "vilenkin/scalar.hpp"
#include "vilenkin/signal.hpp"

#include <stdexcept>
#include <string>
#include <vector>

// Discrete Vilenkin-Chrestenson transform
//
//   y_k = p^{-n} sum_s x_s w_k(lambda^{-1}(s / p^n)),     x_k = sum_s y_s conj(w_k(lambda^{-1}(s / p^n)))
//
// The kernel is zeta^{sum_i d_i(k) d_{n-1-i}(s)} with zeta = exp(2 pi i / p), i.e. a
// tensor product of n p-point DFTs after a base-p digit reversal of s.

namespace vilenkin {

template <class Scalar>
struct SpectrumVector {
  int p;
  int n;
  Vector<Scalar> entries;
};

namespace detail {

inline Index checked_length(int p, int n) {
  GroupParams params(p);
  if (n < 0) throw std::invalid_argument("VCT order must be >= 0");
  Index len = 1;
  for (int i = 0; i < n; ++i) {
    len *= static_cast<Index>(p);
    if (len > kMaxCells) throw std::length_error("VCT length exceeds 2^26");
  }
  return len;
}

template <class Scalar>
void check_input(const Vector<Scalar>& x, int p, int n) {
  if (static_cast<Index>(x.size()) != checked_length(p, n))
    throw std::invalid_argument("VCT input length " + std::to_string(x.size()) + " is not " +
                                std::to_string(p) + "^" + std::to_string(n));
  if (!ScalarTraits<Scalar>::supports_order(p))
    throw BackendBoundaryError("exact VCT needs p in {2, 4}; got p = " + std::to_string(p) +
                               " (use the f64 backend)");
}

/// zeta_p^e for e < p.
template <class Scalar>
std::vector<Scalar> root_table(int p) {
  std::vector<Scalar> roots;
  roots.reserve(p);
  for (int e = 0; e < p; ++e) roots.push_back(ScalarTraits<Scalar>::root(RootOfUnity(p, e)));
  return roots;
}

}  // namespace detail

/// Digit-reversal permutation and twiddle table for one (p, n).
template <class Scalar>
struct VctPlan {
  int p;
  int n;
  std::vector<Index> reversal;
  std::vector<Scalar> roots;  // zeta^e, e < p
  std::vector<Scalar> conj_roots;

  VctPlan(int p_, int n_) : p(p_), n(n_) {
    Index len = detail::checked_length(p, n);
    if (!ScalarTraits<Scalar>::supports_order(p))
      throw BackendBoundaryError("exact VCT needs p in {2, 4}; got p = " + std::to_string(p) +
                                 " (use the f64 backend)");
    reversal.resize(len);
    for (Index s = 0; s < len; ++s) reversal[s] = digits::reverse(s, n, p);
    roots = detail::root_table<Scalar>(p);
    for (const auto& r : roots) conj_roots.push_back(ScalarTraits<Scalar>::conj(r));
  }
};

namespace detail {

/// Unnormalized sum_s x_s K(k, s) (or conj K when conjugate) by butterflies.
template <class Scalar>
Vector<Scalar> butterfly_transform(const Vector<Scalar>& x, const VctPlan<Scalar>& plan, bool conjugate) {
  const int p = plan.p;
  const Index len = static_cast<Index>(x.size());
  const auto& roots = conjugate ? plan.conj_roots : plan.roots;
  Vector<Scalar> work(x.size());
  for (Index s = 0; s < len; ++s) work[static_cast<Eigen::Index>(plan.reversal[s])] = x[static_cast<Eigen::Index>(s)];

  std::vector<Scalar> in(p), out(p);
  for (Index stride = 1; stride < len; stride *= static_cast<Index>(p)) {
    const Index block = stride * static_cast<Index>(p);
    for (Index base = 0; base < len; base += block) {
      for (Index off = 0; off < stride; ++off) {
        const Index first = base + off;
        if (p == 2) {
          Scalar a = work[static_cast<Eigen::Index>(first)];
          Scalar b = work[static_cast<Eigen::Index>(first + stride)];
          work[static_cast<Eigen::Index>(first)] = a + b;
          work[static_cast<Eigen::Index>(first + stride)] = a - b;
          continue;
        }
        for (int d = 0; d < p; ++d) in[d] = work[static_cast<Eigen::Index>(first + d * stride)];
        for (int a = 0; a < p; ++a) {
          Scalar acc = in[0];
          for (int b = 1; b < p; ++b) acc += roots[(a * b) % p] * in[b];
          out[a] = acc;
        }
        for (int d = 0; d < p; ++d) work[static_cast<Eigen::Index>(first + d * stride)] = out[d];
      }
    }
  }
  return work;
}

/// Unnormalized direct sum, O(N^2); the exponent is updated incrementally along s.
template <class Scalar>
Vector<Scalar> direct_transform(const Vector<Scalar>& x, int p, int n, bool conjugate) {
  const Index len = static_cast<Index>(x.size());
  auto roots = root_table<Scalar>(p);
  if (conjugate)
    for (auto& r : roots) r = ScalarTraits<Scalar>::conj(r);
  Vector<Scalar> y(x.size());
  std::vector<int> coef(n), sdig(n);
  for (Index k = 0; k < len; ++k) {
    // exponent(k, s) = sum_t coef[t] * d_t(s), coef[t] = d_{n-1-t}(k).
    for (int t = 0; t < n; ++t) coef[t] = digits::at(k, n - 1 - t, p);
    std::fill(sdig.begin(), sdig.end(), 0);
    int e = 0;
    Scalar acc(0);
    for (Index s = 0; s < len; ++s) {
      acc += roots[e] * x[static_cast<Eigen::Index>(s)];
      for (int t = 0; t < n; ++t) {
        if (++sdig[t] < p) {
          e = (e + coef[t]) % p;
          break;
        }
        sdig[t] = 0;
        e = ((e - (p - 1) * coef[t]) % p + p) % p;
      }
    }
    y[static_cast<Eigen::Index>(k)] = acc;
  }
  return y;
}

template <class Scalar>
void scale_in_place(Vector<Scalar>& v, int p, int n) {
  if constexpr (is_exact_v<Scalar>) {
    Rational f = pow_rational(p, -n);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v[i].re *= f;
      v[i].im *= f;
    }
  } else {
    v *= Scalar(std::pow(static_cast<double>(p), -n), 0.0);
  }
}

}  // namespace detail

template <class Scalar>
SpectrumVector<Scalar> vct_forward_naive(const Vector<Scalar>& x, int p, int n) {
  detail::check_input(x, p, n);
  auto y = detail::direct_transform(x, p, n, false);
  detail::scale_in_place(y, p, n);
  return {p, n, std::move(y)};
}

template <class Scalar>
SpectrumVector<Scalar> vct_forward(const Vector<Scalar>& x, const VctPlan<Scalar>& plan) {
  detail::check_input(x, plan.p, plan.n);
  auto y = detail::butterfly_transform(x, plan, false);
  detail::scale_in_place(y, plan.p, plan.n);
  return {plan.p, plan.n, std::move(y)};
}

template <class Scalar>
SpectrumVector<Scalar> vct_forward(const Vector<Scalar>& x, int p, int n) {
  return vct_forward(x, VctPlan<Scalar>(p, n));
}

template <class Scalar>
Vector<Scalar> vct_inverse_naive(const SpectrumVector<Scalar>& y) {
  detail::check_input(y.entries, y.p, y.n);
  return detail::direct_transform(y.entries, y.p, y.n, true);
}

template <class Scalar>
Vector<Scalar> vct_inverse(const SpectrumVector<Scalar>& y, const VctPlan<Scalar>& plan) {
  if (plan.p != y.p || plan.n != y.n) throw std::invalid_argument("plan does not match spectrum");
  detail::check_input(y.entries, y.p, y.n);
  return detail::butterfly_transform(y.entries, plan, true);
}

template <class Scalar>
Vector<Scalar> vct_inverse(const SpectrumVector<Scalar>& y) {
  return vct_inverse(y, VctPlan<Scalar>(y.p, y.n));
}

/// Ff(omega) = int f(x) conj(chi(x, omega)) dx. A function on grid (m, M) has its
/// transform on grid (M, m): Ff = p^{-m} * vct_inverse(values).
template <class Scalar>
StepFunction<Scalar> fourier_step(const StepFunction<Scalar>& f) {
  const Grid& g = f.grid();
  Vector<Scalar> v = vct_inverse(SpectrumVector<Scalar>{g.p, g.digit_count(), f.values()});
  detail::scale_in_place(v, g.p, g.m);
  return StepFunction<Scalar>(Grid(g.p, g.M, g.m), std::move(v), f.half_exponent());
}

/// F^{-1} g(x) = int g(omega) chi(x, omega) d omega, so that inverse_fourier_step(fourier_step(f)) = f.
template <class Scalar>
StepFunction<Scalar> inverse_fourier_step(const StepFunction<Scalar>& g) {
  const Grid& gr = g.grid();
  VctPlan<Scalar> plan(gr.p, gr.digit_count());
  Vector<Scalar> v = detail::butterfly_transform(g.values(), plan, false);
  detail::scale_in_place(v, gr.p, gr.m);
  return StepFunction<Scalar>(Grid(gr.p, gr.M, gr.m), std::move(v), g.half_exponent());
}

/// r_c = sum_k u_{k + c} w_k (group addition on base-p digits), via
/// r = vct_inverse(vct_forward(u) .* vct_inverse(w)).
template <class Scalar>
Vector<Scalar> group_correlate(const Vector<Scalar>& u, const Vector<Scalar>& w, int p, int n) {
  if (u.size() != w.size()) throw std::invalid_argument("group_correlate: length mismatch");
  VctPlan<Scalar> plan(p, n);
  auto fu = vct_forward(u, plan);
  Vector<Scalar> gw = vct_inverse(SpectrumVector<Scalar>{p, n, w}, plan);
  for (Eigen::Index i = 0; i < gw.size(); ++i) fu.entries[i] *= gw[i];
  return vct_inverse(fu, plan);
}

/// The O(N^2) correlation, valid for every backend and p.
template <class Scalar>
Vector<Scalar> group_correlate_direct(const Vector<Scalar>& u, const Vector<Scalar>& w, int p) {
  if (u.size() != w.size()) throw std::invalid_argument("group_correlate: length mismatch");
  const Index len = static_cast<Index>(u.size());
  Vector<Scalar> r(u.size());
  for (Index c = 0; c < len; ++c) {
    Scalar acc(0);
    for (Index k = 0; k < len; ++k) {
      const Scalar& wk = w[static_cast<Eigen::Index>(k)];
      if (ScalarTraits<Scalar>::is_zero(wk)) continue;
      acc += u[static_cast<Eigen::Index>(digits::add(k, c, p))] * wk;
    }
    r[static_cast<Eigen::Index>(c)] = acc;
  }
  return r;
}

/// Cell values of the Walsh polynomial on the grid (m = n, M = 0).
template <class Scalar>
StepFunction<Scalar> walsh_poly_to_step(const WalshPolynomial<Scalar>& w) {
  const Index len = detail::checked_length(w.p, w.n);
  if (static_cast<Index>(w.coeffs.size()) != len)
    throw std::invalid_argument("Walsh polynomial needs p^n coefficients");
  // v_s = sum_k a_k w_k(x_s) = sum_k a_{-k} conj(w_k(x_s)).
  Vector<Scalar> negated(w.coeffs.size());
  for (Index k = 0; k < len; ++k)
    negated[static_cast<Eigen::Index>(k)] = w.coeffs[static_cast<Eigen::Index>(digits::neg(k, w.p))];
  Vector<Scalar> v = vct_inverse(SpectrumVector<Scalar>{w.p, w.n, negated});
  return StepFunction<Scalar>(Grid(w.p, w.n, 0), std::move(v));
}

/// a_k = int_I f conj(w_k). Requires supp f within lambda^{-1}[0, 1) and an even half-exponent.
template <class Scalar>
WalshPolynomial<Scalar> step_to_walsh_poly(const StepFunction<Scalar>& f) {
  const Grid& g = f.grid();
  const int n = std::max(g.m, 0);
  auto on_unit = f.refined(n, std::max(g.M, 0));
  Index unit_cells = ipow(static_cast<Index>(g.p), n);
  for (Index k = unit_cells; k < on_unit.size(); ++k)
    if (!ScalarTraits<Scalar>::is_zero(on_unit[k]))
      throw std::invalid_argument("step_to_walsh_poly: support leaves lambda^{-1}[0, 1)");
  if (f.half_exponent() % 2 != 0)
    throw std::invalid_argument("step_to_walsh_poly: odd half-exponent has no rational coefficients");
  auto even = on_unit.with_half_exponent(0);
  Vector<Scalar> v = even.values().head(static_cast<Eigen::Index>(unit_cells));
  auto y = vct_forward(v, g.p, n);
  Vector<Scalar> a(y.entries.size());
  for (Index k = 0; k < unit_cells; ++k)
    a[static_cast<Eigen::Index>(k)] = y.entries[static_cast<Eigen::Index>(digits::neg(k, g.p))];
  return WalshPolynomial<Scalar>{g.p, n, std::move(a)};
}

}  // namespace vilenkin
