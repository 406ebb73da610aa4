#pragma once

// Adaptive composite Simpson quadrature with Richardson correction, in one
// and two dimensions. Evaluation count is capped; exceeding the cap (or
// running out of bisection depth before the local error estimate meets its
// share of the tolerance) raises ConvergenceError.

#include <cmath>
#include <cstddef>
#include <type_traits>

#include "vsfinger/errors.hpp"

namespace vsf::quad {

struct Options {
  double rel_tol = 1e-9;
  std::size_t max_evaluations = 20'000'000;
  int max_depth = 48;
};

namespace detail {

template <class F>
class Simpson {
 public:
  Simpson(F& f, std::size_t& evals, const Options& opt) : f_(f), evals_(evals), opt_(opt) {}

  double integrate(double lo, double hi, double abs_tol) {
    const double mid = 0.5 * (lo + hi);
    const double flo = eval(lo);
    const double fmid = eval(mid);
    const double fhi = eval(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return recurse(lo, hi, flo, fmid, fhi, whole, abs_tol, opt_.max_depth);
  }

 private:
  double eval(double x) {
    if (++evals_ > opt_.max_evaluations) {
      throw ConvergenceError("quadrature: evaluation budget exhausted before reaching tolerance");
    }
    return f_(x);
  }

  double recurse(double lo, double hi, double flo, double fmid, double fhi, double whole,
                 double abs_tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flmid = eval(lmid);
    const double frmid = eval(rmid);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flmid + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frmid + fhi);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * abs_tol) return left + right + delta / 15.0;
    if (depth <= 0 || !(lmid > lo && rmid < hi)) {
      throw ConvergenceError("quadrature: bisection depth exhausted before reaching tolerance");
    }
    return recurse(lo, mid, flo, flmid, fmid, left, 0.5 * abs_tol, depth - 1) +
           recurse(mid, hi, fmid, frmid, fhi, right, 0.5 * abs_tol, depth - 1);
  }

  F& f_;
  std::size_t& evals_;
  const Options& opt_;
};

}  // namespace detail

// Integral of f over [lo, hi] to an absolute tolerance.
template <class F>
double simpson(F&& f, double lo, double hi, double abs_tol, const Options& opt = {}) {
  if (hi == lo) return 0.0;
  std::size_t evals = 0;
  detail::Simpson<std::remove_reference_t<F>> s(f, evals, opt);
  return s.integrate(lo, hi, abs_tol);
}

// Integral of f(x, y) over [0, ax] x [0, by]. `scale` is a magnitude estimate
// of the result used to turn opt.rel_tol into an absolute tolerance; 90% of
// the budget goes to the outer rule, 10% to the inner integrals.
template <class F>
double simpson_2d(F&& f, double ax, double by, double scale, const Options& opt = {}) {
  if (ax == 0.0 || by == 0.0) return 0.0;
  const double abs_tol = opt.rel_tol * std::abs(scale);
  const double inner_tol = 0.1 * abs_tol / ax;
  std::size_t evals = 0;
  auto inner = [&](double x) {
    auto fy = [&](double y) { return f(x, y); };
    detail::Simpson<decltype(fy)> s(fy, evals, opt);
    return s.integrate(0.0, by, inner_tol);
  };
  detail::Simpson<decltype(inner)> outer(inner, evals, opt);
  return outer.integrate(0.0, ax, 0.9 * abs_tol);
}

}  // namespace vsf::quad
