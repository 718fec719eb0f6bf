// SPDX-License-Identifier: Apache-2.0
#include "hinreg/tdist.hpp"

#include <cmath>
#include <string>

#include "hinreg/error.hpp"

namespace hinreg {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 2000;
  constexpr double kEps = 1e-16;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  raise(Status::Internal, "incomplete beta continued fraction did not converge");
}

// I_x(a, b) with the logs of x and 1-x supplied by the caller, which avoids
// cancellation when x is very close to 1.
double ibeta_with_logs(double a, double b, double x, double log_x, double log_1mx) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                        a * log_x + b * log_1mx;
  const double bt = std::exp(log_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * beta_cf(a, b, x) / a;
  }
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace

namespace detail {

double ibeta_reg(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    raise(Status::InvalidArgument, "ibeta_reg requires a > 0 and b > 0");
  }
  if (x < 0.0 || x > 1.0) {
    raise(Status::InvalidArgument, "ibeta_reg requires x in [0, 1]");
  }
  return ibeta_with_logs(a, b, x, std::log(x), std::log1p(-x));
}

}  // namespace detail

double t_sf(double t, std::uint64_t dof) {
  if (dof < 1) raise(Status::InvalidArgument, "t_sf requires dof >= 1");
  if (std::isnan(t)) raise(Status::InvalidArgument, "t_sf of NaN");
  if (t == 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;

  const double nu = static_cast<double>(dof);
  const double t2 = t * t;
  // x = nu / (nu + t^2); 2 P(T >= |t|) = I_x(nu/2, 1/2).
  const double one_minus_x = t2 / (nu + t2);
  const double x = nu / (nu + t2);
  const double log_x = std::log1p(-one_minus_x);
  const double log_1mx = std::log(t2) - std::log(nu + t2);
  return ibeta_with_logs(nu / 2.0, 0.5, x, log_x, log_1mx);
}

}  // namespace hinreg
