#include "rct/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "rct/errors.hpp"

namespace rct {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, double m, double fm, double whole,
                    double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  // The noise floor scales with the panel magnitude: once |delta| sits at the
  // roundoff plateau, splitting further cannot improve the estimate, and an
  // unreachable tol would otherwise blow the recursion up exponentially.
  double floor = 1e-15 * (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(delta) <= std::max(15.0 * tol, floor))
    return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

CdfTable::CdfTable(const std::function<double(double)>& density, double a, double b,
                   int knots) {
  if (knots < 2) throw ConfigError("CdfTable needs at least 2 knots");
  if (!(b > a)) throw ConfigError("CdfTable needs b > a");
  x_.resize(knots + 1);
  F_.resize(knots + 1);
  double h = (b - a) / knots;
  x_[0] = a;
  F_[0] = 0.0;
  double f_left = std::max(0.0, density(a));
  for (int i = 0; i < knots; ++i) {
    double xl = a + i * h, xr = a + (i + 1) * h;
    double f_mid = std::max(0.0, density(0.5 * (xl + xr)));
    double f_right = std::max(0.0, density(xr));
    double panel = h / 6.0 * (f_left + 4.0 * f_mid + f_right);
    x_[i + 1] = xr;
    F_[i + 1] = F_[i] + std::max(0.0, panel);
    f_left = f_right;
  }
  raw_mass_ = F_.back();
  if (!(raw_mass_ > 0.0)) throw ConfigError("CdfTable density has zero mass");
  for (double& v : F_) v /= raw_mass_;
  F_.back() = 1.0;
}

double CdfTable::cdf(double x) const {
  if (x <= x_.front()) return 0.0;
  if (x >= x_.back()) return 1.0;
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  size_t i = static_cast<size_t>(it - x_.begin()) - 1;
  double t = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return F_[i] + t * (F_[i + 1] - F_[i]);
}

double CdfTable::inverse(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  auto it = std::upper_bound(F_.begin(), F_.end(), u);
  if (it == F_.begin()) return x_.front();
  if (it == F_.end()) return x_.back();
  size_t i = static_cast<size_t>(it - F_.begin()) - 1;
  double span = F_[i + 1] - F_[i];
  double t = span > 0.0 ? (u - F_[i]) / span : 0.0;
  return x_[i] + t * (x_[i + 1] - x_[i]);
}

}  // namespace rct
