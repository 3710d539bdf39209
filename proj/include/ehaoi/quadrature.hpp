#pragma once

#include <cmath>
#include <cstddef>

namespace ehaoi::quadrature {

struct Result {
  double value = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

namespace detail {

template <class F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb, double whole,
                       double eps, int depth, Result& out) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  out.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  if (depth <= 0) {
    out.converged = false;
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1, out) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1, out);
}

}  // namespace detail

// Adaptive Simpson on [a, b] to a relative tolerance. The interval is
// pre-split into `panels` pieces so that a coarse first estimate cannot
// accept a badly resolved integrand; the absolute budget derives from that
// first estimate and is shared between panels by width.
template <class F>
Result adaptive_simpson(F&& f, double a, double b, double rel_tol, int max_depth = 40,
                        int panels = 8) {
  Result out;
  if (b == a) return out;
  const double h = (b - a) / panels;
  double coarse = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == panels) ? b : lo + h;
    const double mid = 0.5 * (lo + hi);
    coarse += (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
  }
  out.evaluations += 3 * static_cast<std::size_t>(panels);
  const double budget = rel_tol * std::abs(coarse);
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == panels) ? b : lo + h;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo);
    const double fmid = f(mid);
    const double fhi = f(hi);
    out.evaluations += 3;
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += detail::simpson_recurse(f, lo, hi, flo, fmid, fhi, whole, budget / panels, max_depth,
                                     out);
  }
  out.value = total;
  return out;
}

}  // namespace ehaoi::quadrature
