#include "plk/quaddiff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace plk {

namespace {
const double kPi = std::numbers::pi;
}

QuadDiff3 qd3_from_residues(double a0, double a1, double a2) {
  if (!(a0 > 0.0) || !(a1 > 0.0) || !(a2 > 0.0))
    throw std::invalid_argument("qd3_from_residues: residue roots must be positive");
  QuadDiff3 q;
  q.a0 = a0;
  q.a1 = a1;
  q.a2 = a2;
  q.b0 = 0.5 * (a0 * a0 + a2 * a2 - a1 * a1);
  q.b1 = 0.5 * (a1 * a1 + a2 * a2 - a0 * a0);
  q.b2 = 0.5 * (a0 * a0 + a1 * a1 - a2 * a2);
  return q;
}

std::array<double, 3> qd3_residues(const QuadDiff3& q) {
  return {q.b0 + q.b2, q.b1 + q.b2, q.b0 + q.b1};
}

bool qd3_real_zero_free(const QuadDiff3& q) {
  // The differential on the real line has numerator
  //   N(z) = b0 (1-z)^2 + b1 z^2 + b2 = (b0+b1) z^2 - 2 b0 z + (b0+b2),
  // and N(0), N(1) are the positive residues, so a boundary zero exists
  // exactly when N has a real root.
  double A = q.b0 + q.b1;  // = a2^2 > 0
  double B = -2.0 * q.b0;
  double C = q.b0 + q.b2;  // = a0^2 > 0
  double disc = B * B - 4.0 * A * C;
  return disc < 0.0;
}

double AlphaFunction::operator()(double s) const {
  for (size_t i = 0; i < ramp_lo.size(); ++i) {
    if (s <= ramp_lo[i]) return values[i];
    if (s < ramp_hi[i]) {
      double u = (s - ramp_lo[i]) / (ramp_hi[i] - ramp_lo[i]);
      double w = u * u * (3.0 - 2.0 * u);  // cubic smoothstep
      return values[i] + (values[i + 1] - values[i]) * w;
    }
  }
  return values.back();
}

bool AlphaFunction::monotone() const {
  bool up = true, down = true;
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i + 1] < values[i]) up = false;
    if (values[i + 1] > values[i]) down = false;
  }
  return up || down;
}

double AlphaFunction::min_ramp_width() const {
  double w = 0.01 * 8.0;  // default step cap when there are no ramps
  for (size_t i = 0; i < ramp_lo.size(); ++i)
    w = std::min(w, ramp_hi[i] - ramp_lo[i]);
  return w;
}

namespace {

AlphaFunction make_ramp(double v0, double v1, double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("alpha: empty ramp interval");
  AlphaFunction a;
  a.values = {v0, v1};
  a.ramp_lo = {lo};
  a.ramp_hi = {hi};
  return a;
}

}  // namespace

AlphaFunction alpha_simple(double theta0, double theta1, double R,
                           double delta) {
  if (!(delta > 0.0) || !(R - delta > delta))
    throw std::invalid_argument("alpha_simple: need 0 < delta < R - delta");
  return make_ramp(theta0 - kPi, theta1, delta, R - delta);
}

AlphaFunction alpha_unstable(double eta, double delta) {
  if (!(delta > 0.0) || !(kPi - delta > delta))
    throw std::invalid_argument("alpha_unstable: need 0 < delta < pi/2");
  return make_ramp(eta - kPi, kPi, delta, kPi - delta);
}

AlphaFunction alpha_stable(double theta, double delta) {
  if (!(delta > 0.0) || !(kPi - delta > delta))
    throw std::invalid_argument("alpha_stable: need 0 < delta < pi/2");
  return make_ramp(kPi, theta, delta, kPi - delta);
}

AlphaFunction concat_alpha(const AlphaFunction& a_un,
                           const AlphaFunction& a_st, double R) {
  if (a_un.values.back() != a_st.values.front())
    throw std::invalid_argument("concat_alpha: plateau mismatch");
  if (R < kPi) throw std::invalid_argument("concat_alpha: R below pi");
  if (a_un.support_hi() > R + a_st.support_lo())
    throw std::invalid_argument("concat_alpha: ramps overlap");
  AlphaFunction out;
  out.values = a_un.values;
  out.values.insert(out.values.end(), a_st.values.begin() + 1,
                    a_st.values.end());
  out.ramp_lo = a_un.ramp_lo;
  out.ramp_hi = a_un.ramp_hi;
  for (size_t i = 0; i < a_st.ramp_lo.size(); ++i) {
    out.ramp_lo.push_back(a_st.ramp_lo[i] + R);
    out.ramp_hi.push_back(a_st.ramp_hi[i] + R);
  }
  return out;
}

cplx CharCurve::at(double s) const {
  if (z.empty()) throw std::logic_error("CharCurve::at: empty curve");
  double u = (s - s0) / h;
  if (u <= 0.0) return z.front();
  if (u >= (double)(z.size() - 1)) return z.back();
  size_t k = (size_t)u;
  double f = u - (double)k;
  return z[k] * (1.0 - f) + z[k + 1] * f;
}

double CharCurve::speed_defect() const {
  double worst = 0.0;
  for (size_t k = 0; k + 1 < z.size(); ++k)
    worst = std::max(worst, std::abs(std::abs(z[k + 1] - z[k]) / h - 1.0));
  return worst;
}

CharCurve characteristic_curve(const AlphaFunction& a, double s_min,
                               double s_max, cplx anchor, double h) {
  if (!(s_max > s_min))
    throw std::invalid_argument("characteristic_curve: empty range");
  if (h <= 0.0) h = std::min(a.min_ramp_width() / 8.0, 0.01);
  size_t n = (size_t)std::ceil((s_max - s_min) / h);
  h = (s_max - s_min) / (double)n;  // land exactly on s_max
  auto f = [&](double s) { return -std::exp(cplx(0.0, a(s))); };
  CharCurve c;
  c.s0 = s_min;
  c.h = h;
  c.z.reserve(n + 1);
  cplx z = anchor;
  c.z.push_back(z);
  for (size_t k = 0; k < n; ++k) {
    double s = s_min + h * (double)k;
    cplx k1 = f(s);
    cplx k2 = f(s + 0.5 * h);  // the field is t-independent: k2 == k3
    cplx k4 = f(s + h);
    z += (h / 6.0) * (k1 + 4.0 * k2 + k4);
    c.z.push_back(z);
  }
  return c;
}

double floer_margin(const FloerDatum& d) {
  const AlphaFunction& a = d.alpha;
  double lo = a.support_lo() - 1.0, hi = a.support_hi() + 1.0;
  double worst = 1e300;
  int n = 4000;
  for (int k = 0; k <= n; ++k) {
    double s = lo + (hi - lo) * (double)k / (double)n;
    worst = std::min(worst, std::cos(d.beta - a(s)));
  }
  for (double v : a.values) worst = std::min(worst, std::cos(d.beta - v));
  return worst - d.eps01;
}

std::optional<cplx> ray_intersection(const RayPair& rays) {
  cplx d0 = std::exp(cplx(0.0, rays.theta0));
  cplx d1 = std::exp(cplx(0.0, rays.theta1));
  // solve w0 + r0 d0 = w1 + r1 d1 for r0, r1 >= 0
  double det = d0.real() * (-d1.imag()) - (-d1.real()) * d0.imag();
  if (std::abs(det) < 1e-12) return std::nullopt;
  cplx rhs = rays.w1 - rays.w0;
  double r0 = (rhs.real() * (-d1.imag()) - (-d1.real()) * rhs.imag()) / det;
  double r1 = (d0.real() * rhs.imag() - rhs.real() * d0.imag()) / det;
  if (r0 < 0.0 || r1 < 0.0) return std::nullopt;
  return rays.w0 + r0 * d0;
}

namespace {

// c strictly inside the segment (a, b), endpoints excluded
bool on_open_segment(cplx c, cplx a, cplx b, double tol) {
  cplx ab = b - a, ac = c - a;
  double len = std::abs(ab);
  if (len < tol) return false;
  double cross = ab.real() * ac.imag() - ab.imag() * ac.real();
  if (std::abs(cross) / len > tol) return false;
  double t = (ab.real() * ac.real() + ab.imag() * ac.imag()) / (len * len);
  return t > tol / len && t < 1.0 - tol / len;
}

// c strictly inside the ray from w with angle theta, excluding w itself
bool on_open_ray(cplx c, cplx w, double theta, double tol) {
  cplx d = std::exp(cplx(0.0, theta));
  cplx v = c - w;
  double r = v.real() * d.real() + v.imag() * d.imag();
  if (r < tol) return false;
  double cross = d.real() * v.imag() - d.imag() * v.real();
  return std::abs(cross) < tol;
}

}  // namespace

Report validate_floer_datum(const FloerDatum& d, const RayPair* rays,
                            const std::vector<cplx>& crit_values) {
  Report r;
  if (!(d.R >= kPi)) r.violations.push_back({0, "R below pi"});
  if (!(d.eps01 > 0.0 && d.eps01 < 1.0))
    r.violations.push_back({0, "eps01 outside (0,1)"});
  if (d.alpha.values.empty() || d.alpha.ramp_lo.size() + 1 != d.alpha.values.size()) {
    r.violations.push_back({0, "malformed alpha function"});
    return r;
  }
  double theta0 = d.alpha.left_plateau() + kPi;
  double theta1 = d.alpha.right_plateau();
  if (!(d.beta > theta1 - kPi / 2.0 && d.beta < theta0 - kPi / 2.0))
    r.violations.push_back({0, "beta outside the plateau window"});
  if (floer_margin(d) <= 0.0)
    r.violations.push_back({0, "phase margin: cos(beta - alpha) exceeds eps01 somewhere"});
  if (!(d.dH_l1 < 1.0 && d.dH_l2 < 1.0))
    r.violations.push_back({0, "perturbation norm integral at least 1"});
  if (rays) {
    double tol = 1e-9;
    auto is_end = [&](cplx c) {
      return std::abs(c - rays->w0) < tol || std::abs(c - rays->w1) < tol;
    };
    if (d.alpha.monotone()) {
      // relaxed condition: only the segments from the ray intersection
      // point back to the end values must be clear
      if (auto y = ray_intersection(*rays)) {
        for (cplx c : crit_values) {
          if (is_end(c)) continue;
          if (on_open_segment(c, *y, rays->w0, tol) ||
              on_open_segment(c, *y, rays->w1, tol))
            r.violations.push_back({0, "critical value inside a ray segment"});
        }
      }
    } else {
      for (cplx c : crit_values) {
        if (is_end(c)) continue;
        if (on_open_ray(c, rays->w0, rays->theta0, tol) ||
            on_open_ray(c, rays->w1, rays->theta1, tol))
          r.violations.push_back({0, "critical value inside a ray"});
      }
    }
  }
  return r;
}

}  // namespace plk
