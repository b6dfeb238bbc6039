#pragma once

// Adaptive Gauss-Kronrod quadrature used as the independent numerical
// oracle in the tests. Kept separate from the library on purpose: the
// closed-form densities and CDFs are validated against these integrals.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace testsupport {

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double integral = 0.0;
  double error = 0.0;
};

template <typename F>
Panel gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fk[15];
  for (int i = 0; i < 7; ++i) {
    fk[i] = f(c - h * kKronrodNodes[i]);
    fk[14 - i] = f(c + h * kKronrodNodes[i]);
  }
  fk[7] = f(c);
  double kron = 0.0;
  for (int i = 0; i < 7; ++i) kron += kKronrodWeights[i] * (fk[i] + fk[14 - i]);
  kron += kKronrodWeights[7] * fk[7];
  double gauss = kGaussWeights[3] * fk[7];
  for (int i = 0; i < 3; ++i) gauss += kGaussWeights[i] * (fk[2 * i + 1] + fk[13 - 2 * i]);
  Panel p;
  p.integral = h * kron;
  p.error = std::fabs(h * (kron - gauss));
  return p;
}

template <typename F>
double adaptive(const F& f, double a, double b, double tol, int depth) {
  const Panel p = gk15(f, a, b);
  if (p.error < tol || depth <= 0) return p.integral;
  const double c = 0.5 * (a + b);
  return adaptive(f, a, c, 0.5 * tol, depth - 1) + adaptive(f, c, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename F>
double integrate(F f, double a, double b, double tol = 1e-10, int depth = 40) {
  if (!(a < b)) return 0.0;
  return detail::adaptive(f, a, b, tol, depth);
}

// Integral over the whole real line via x = t/(1-t^2) on (-1,1).
template <typename F>
double integrate_real_line(F f, double tol = 1e-10) {
  auto g = [&](double t) {
    const double s = 1.0 - t * t;
    const double x = t / s;
    const double jac = (1.0 + t * t) / (s * s);
    const double v = f(x);
    return v == 0.0 ? 0.0 : v * jac;
  };
  return integrate(g, -1.0 + 1e-14, 1.0 - 1e-14, tol, 48);
}

// Integral over (a, inf) via x = a + t/(1-t) on (0,1).
template <typename F>
double integrate_upper(F f, double a, double tol = 1e-10) {
  auto g = [&](double t) {
    const double s = 1.0 - t;
    const double x = a + t / s;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v / (s * s);
  };
  return integrate(g, 1e-15, 1.0 - 1e-14, tol, 48);
}

// Integral over (-inf, b) by reflection.
template <typename F>
double integrate_lower(F f, double b, double tol = 1e-10) {
  return integrate_upper([&, b](double x) { return f(2.0 * b - x); }, b, tol);
}

}  // namespace testsupport
