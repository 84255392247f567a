#include "plk/lgflow.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace plk {

namespace {

const double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

cplx eval_poly(const std::vector<cplx>& c, cplx z) {
  cplx v = 0;
  for (size_t k = c.size(); k-- > 0;) v = v * z + c[k];
  return v;
}

std::vector<cplx> derive_poly(const std::vector<cplx>& c) {
  std::vector<cplx> d;
  for (size_t k = 1; k < c.size(); ++k) d.push_back((double)k * c[k]);
  return d;
}

double smoothstep01(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * (3.0 - 2.0 * u);
}

}  // namespace

cplx LGModel::w(cplx z) const { return eval_poly(coeffs, z); }
cplx LGModel::dw(cplx z) const { return eval_poly(derive_poly(coeffs), z); }
cplx LGModel::ddw(cplx z) const {
  return eval_poly(derive_poly(derive_poly(coeffs)), z);
}

namespace {

// roots of W' by companion-matrix eigenvalues plus Newton polish
std::vector<cplx> dw_roots(const LGModel& m) {
  std::vector<cplx> c = derive_poly(m.coeffs);
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.size() < 2)
    throw std::invalid_argument("critical_points: deg W must be at least 2");
  int n = (int)c.size() - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) comp(k, n - 1) = -c[k] / c[n];
  for (int k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> roots;
  for (int k = 0; k < n; ++k) {
    cplx z = es.eigenvalues()(k);
    for (int it = 0; it < 8; ++it) {
      cplx d = m.ddw(z);
      if (std::abs(d) < 1e-14) break;
      z -= m.dw(z) / d;
    }
    roots.push_back(z);
  }
  return roots;
}

void lg_checks(const LGModel& m, Report& r, std::vector<cplx>* out_roots) {
  std::vector<cplx> roots = dw_roots(m);
  for (cplx z : roots)
    if (std::abs(m.ddw(z)) < 1e-8)
      r.violations.push_back({0, "degenerate critical point (not Morse)"});
  for (size_t a = 0; a < roots.size(); ++a)
    for (size_t b = a + 1; b < roots.size(); ++b) {
      cplx wa = m.w(roots[a]), wb = m.w(roots[b]);
      if (std::abs(wa - wb) < 1e-8)
        r.violations.push_back({0, "coincident critical values"});
      else if (std::abs(wa.imag() - wb.imag()) < 1e-8)
        r.violations.push_back({0, "H-tie: equal Im W at two critical points"});
    }
  if (out_roots) *out_roots = roots;
}

}  // namespace

Report validate_lg(const LGModel& m) {
  Report r;
  if (m.degree() < 2) {
    r.violations.push_back({0, "deg W must be at least 2"});
    return r;
  }
  lg_checks(m, r, nullptr);
  return r;
}

std::vector<CriticalPoint> critical_points(const LGModel& m,
                                           bool require_strict_order) {
  Report r;
  std::vector<cplx> roots;
  lg_checks(m, r, &roots);
  bool hard = false, tie = false;
  for (const auto& v : r.violations) {
    if (v.what.rfind("H-tie", 0) == 0)
      tie = true;
    else
      hard = true;
  }
  if (hard || (tie && require_strict_order))
    throw std::invalid_argument("critical_points: " + r.summary());
  std::vector<CriticalPoint> out;
  for (cplx z : roots) out.push_back({z, m.w(z), m.ddw(z), 0});
  std::sort(out.begin(), out.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) {
              if (a.value.imag() != b.value.imag())
                return a.value.imag() < b.value.imag();
              return a.value.real() < b.value.real();
            });
  for (size_t k = 0; k < out.size(); ++k) out[k].label = (int)k + 1;
  return out;
}

std::vector<double> critical_angles(const LGModel& m) {
  auto cps = critical_points(m, false);
  std::vector<double> angs;
  for (size_t a = 0; a < cps.size(); ++a)
    for (size_t b = 0; b < cps.size(); ++b) {
      if (a == b) continue;
      cplx d = cps[a].value - cps[b].value;
      double t = std::arg(d);
      if (t < 0) t += 2.0 * kPi;
      angs.push_back(t);
    }
  std::sort(angs.begin(), angs.end());
  angs.erase(std::unique(angs.begin(), angs.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             angs.end());
  return angs;
}

bool lg_admissible(const LGModel& m, double theta_star, double tol) {
  double t = std::fmod(theta_star, 2.0 * kPi);
  if (t < 0) t += 2.0 * kPi;
  for (double a : critical_angles(m)) {
    double d = std::abs(a - t);
    d = std::min(d, 2.0 * kPi - d);
    if (d < tol) return false;
  }
  return true;
}

double theta_crit(const LGModel& m, double theta_star) {
  auto angs = critical_angles(m);
  if (angs.empty())
    throw std::invalid_argument("theta_crit: no critical angles");
  double t = std::fmod(theta_star, 2.0 * kPi);
  if (t < 0) t += 2.0 * kPi;
  double shift = theta_star - t;  // theta_star = t + shift
  for (double a : angs)
    if (a > t + 1e-12) return a + shift;
  return angs.front() + 2.0 * kPi + shift;
}

std::optional<RayHit> ray_intersect(const Ray& r0, const Ray& r1) {
  const double tol = 1e-9;
  cplx d0 = std::exp(kI * r0.theta), d1 = std::exp(kI * r1.theta);
  cplx rhs = r1.base - r0.base;
  double det = d0.real() * (-d1.imag()) + d1.real() * d0.imag();
  if (std::abs(det) < 1e-12) {
    // parallel: intersect only when collinear and overlapping
    double cross = d0.real() * rhs.imag() - d0.imag() * rhs.real();
    if (std::abs(cross) > tol) return std::nullopt;
    double t = rhs.real() * d0.real() + rhs.imag() * d0.imag();  // r1.base on r0
    bool same_dir = (d0.real() * d1.real() + d0.imag() * d1.imag()) > 0;
    if (same_dir) {
      if (t >= -tol) return RayHit{r1.base, true};
      return RayHit{r0.base, true};
    }
    if (t >= -tol) return RayHit{r0.base + 0.5 * t * d0, true};
    return std::nullopt;
  }
  double t0 = (rhs.real() * (-d1.imag()) + d1.real() * rhs.imag()) / det;
  double t1 = (d0.real() * rhs.imag() - rhs.real() * d0.imag()) / det;
  if (t0 < -tol || t1 < -tol) return std::nullopt;
  return RayHit{r0.base + t0 * d0, t0 < tol || t1 < tol};
}

double Thimble::lift() const { return theta / (2.0 * kPi); }

double Thimble::tau_max() const {
  size_t n = std::min(plus.size(), minus.size());
  return n == 0 ? 0.0 : eps0 + h * (double)(n - 1);
}

namespace {

cplx hermite(cplx p0, cplx p1, cplx m0, cplx m1, double u) {
  double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * m0 +
         (-2 * u3 + 3 * u2) * p1 + (u3 - u2) * m1;
}

}  // namespace

cplx Thimble::at(double tau) const {
  const std::vector<cplx>& br = tau >= 0 ? plus : minus;
  const std::vector<cplx>& tn = tau >= 0 ? tan_plus : tan_minus;
  double t = std::abs(tau);
  if (br.empty()) return q.z;
  if (t <= eps0) return q.z + (t / eps0) * (br.front() - q.z);
  double u = (t - eps0) / h;
  size_t k = (size_t)u;
  if (k + 1 >= br.size()) return br.back();
  return hermite(br[k], br[k + 1], h * tn[k], h * tn[k + 1], u - (double)k);
}

Thimble make_thimble(const LGModel& m, const CriticalPoint& q, double theta,
                     double wcap, double h) {
  if (std::abs(q.hess) < 1e-10)
    throw std::invalid_argument("make_thimble: degenerate critical point");
  Thimble t;
  t.q = q;
  t.theta = theta;
  t.eps0 = 1e-5;
  t.h = h;
  double phi_s = 0.5 * (theta - std::arg(q.hess));
  cplx wq = q.value;
  // unit-speed ascending flow of Re(e^{-i theta} W), leaving q outward
  auto f = [&](cplx z) {
    cplx g = std::exp(kI * theta) * std::conj(m.dw(z));
    return g / std::abs(g);
  };
  for (int side = 0; side < 2; ++side) {
    cplx dir = std::exp(kI * phi_s) * (side == 0 ? 1.0 : -1.0);
    cplx z = q.z + t.eps0 * dir;
    std::vector<cplx>& br = side == 0 ? t.plus : t.minus;
    std::vector<cplx>& tn = side == 0 ? t.tan_plus : t.tan_minus;
    for (size_t step = 0; step < 2000000; ++step) {
      br.push_back(z);
      tn.push_back(f(z));
      if (std::abs(m.w(z) - wq) >= wcap) break;
      cplx k1 = f(z);
      cplx k2 = f(z + 0.5 * h * k1);
      cplx k3 = f(z + 0.5 * h * k2);
      cplx k4 = f(z + h * k3);
      z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return t;
}

Report thimble_check(const LGModel& m, const Thimble& t, double tol) {
  Report r;
  cplx rot = std::exp(-kI * t.theta);
  for (int side = 0; side < 2; ++side) {
    const std::vector<cplx>& br = side == 0 ? t.plus : t.minus;
    for (cplx z : br) {
      cplx v = rot * (m.w(z) - t.q.value);
      double scale = std::max(1.0, std::abs(v));
      if (std::abs(v.imag()) > tol * scale)
        r.violations.push_back({0, "thimble image leaves the ray"});
      if (v.real() < -tol)
        r.violations.push_back({0, "thimble image behind the ray base"});
    }
  }
  return r;
}

double Perturbation::bump(double s) const {
  double mid = 0.5 * (s_lo + s_hi);
  if (s <= mid) return smoothstep01((s - s_lo) / (mid - s_lo));
  return smoothstep01((s_hi - s) / (s_hi - mid));
}

double Perturbation::value(double s, cplx z) const {
  return c * bump(s) * eval_poly(phi, z).real();
}

cplx Perturbation::grad(double s, cplx z) const {
  return c * bump(s) * std::conj(eval_poly(derive_poly(phi), z));
}

cplx Soliton::at(double s) const {
  if (p.empty()) return q0.z;
  double u = (s - s0) / h;
  if (u <= 0.0) return p.front();
  if (u >= (double)(p.size() - 1)) return p.back();
  size_t k = (size_t)u;
  double f = u - (double)k;
  return p[k] * (1.0 - f) + p[k + 1] * f;
}

namespace {

// right-hand side of the soliton equation dz/ds = -V(s, z)
cplx Vfield(const LGModel& m, const AlphaFunction& a, const Perturbation* dH,
            double s, cplx z) {
  cplx v = std::exp(kI * a(s)) * std::conj(m.dw(z));
  if (dH) v -= kI * dH->grad(s, z);
  return v;
}

// z-derivative of V as the antiholomorphic coefficient K (dV = K conj(dz))
cplx Vderiv(const LGModel& m, const AlphaFunction& a, const Perturbation* dH,
            double s, cplx z) {
  cplx k = std::exp(kI * a(s)) * std::conj(m.ddw(z));
  if (dH)
    k -= kI * dH->c * dH->bump(s) *
         std::conj(eval_poly(derive_poly(derive_poly(dH->phi)), z));
  return k;
}

// Integrate dz/ds = -V over [0, D] from z0; optionally record the samples.
// Trajectories off a soliton blow up in finite time (polynomial growth of
// W'), so integration freezes once |z - zstop| exceeds the escape radius;
// the frozen value still carries the side on which the path escaped.
cplx integrate_main(const LGModel& m, const AlphaFunction& a,
                    const Perturbation* dH, double D, double h, cplx z0,
                    cplx zstop, double rstop, std::vector<cplx>* out) {
  size_t n = (size_t)std::ceil(D / h - 1e-9);
  double hh = D / (double)n;
  cplx z = z0;
  if (out) {
    out->clear();
    out->push_back(z);
  }
  for (size_t k = 0; k < n; ++k) {
    double s = hh * (double)k;
    if (std::abs(z - zstop) <= rstop) {
      auto f = [&](double ss, cplx zz) { return -Vfield(m, a, dH, ss, zz); };
      cplx k1 = f(s, z);
      cplx k2 = f(s + 0.5 * hh, z + 0.5 * hh * k1);
      cplx k3 = f(s + 0.5 * hh, z + 0.5 * hh * k2);
      cplx k4 = f(s + hh, z + hh * k3);
      z += (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (out) out->push_back(z);
  }
  return z;
}

struct BvpSetup {
  cplx q0, q1;        // limit points
  double phi_l, phi_r;  // directions whose component must vanish at the ends
};

BvpSetup bvp_setup(const FloerDatum& d, const CriticalPoint& q0,
                   const CriticalPoint& q1) {
  double theta0 = d.alpha.left_plateau() + kPi;
  double theta1 = d.alpha.right_plateau();
  // left frozen field e^{i theta0} conj(W'): kill the component along its
  // stable direction; right frozen field -e^{i theta1} conj(W'): kill the
  // component along its unstable direction
  double phi_ul = 0.5 * (theta0 - std::arg(q0.hess));
  double phi_sr = 0.5 * (theta1 - std::arg(q1.hess));
  return {q0.z, q1.z, phi_ul + kPi / 2.0, phi_sr + kPi / 2.0};
}

// damped Newton on the implicit-trapezoid discretization of the soliton
// equation with linearized boundary conditions; p is the guess on the grid
// s_lo + k h and is overwritten with the solution
bool solve_bvp(const LGModel& m, const FloerDatum& d, const Perturbation* dH,
               const BvpSetup& bc, double s_lo, double h, std::vector<cplx>& p,
               int max_iters, double tol, int& iters, double& final_res) {
  int N = (int)p.size() - 1;
  int nu = 2 * (N + 1);
  cplx el = std::exp(-kI * bc.phi_l), er = std::exp(-kI * bc.phi_r);
  auto resid = [&](const std::vector<cplx>& x, Eigen::VectorXd& F) {
    F.resize(nu);
    F(0) = ((x[0] - bc.q0) * el).real();
    for (int k = 0; k < N; ++k) {
      double s = s_lo + h * (double)k;
      cplx fk = (x[k + 1] - x[k]) / h +
                0.5 * (Vfield(m, d.alpha, dH, s, x[k]) +
                       Vfield(m, d.alpha, dH, s + h, x[k + 1]));
      F(1 + 2 * k) = fk.real();
      F(2 + 2 * k) = fk.imag();
    }
    F(nu - 1) = ((x[N] - bc.q1) * er).real();
  };
  Eigen::VectorXd F;
  resid(p, F);
  double fn = F.lpNorm<Eigen::Infinity>();
  iters = 0;
  final_res = fn;
  if (fn < tol) return true;
  using T = Eigen::Triplet<double>;
  for (; iters < max_iters; ++iters) {
    std::vector<T> trips;
    trips.reserve(8 * N + 8);
    trips.emplace_back(0, 0, el.real());
    trips.emplace_back(0, 1, -el.imag());
    for (int k = 0; k < N; ++k) {
      double s = s_lo + h * (double)k;
      cplx Ka = 0.5 * Vderiv(m, d.alpha, dH, s, p[k]);
      cplx Kb = 0.5 * Vderiv(m, d.alpha, dH, s + h, p[k + 1]);
      int r = 1 + 2 * k;
      // d/dp_k of (p_{k+1}-p_k)/h + (V_k + V_{k+1})/2:
      //   -I/h + [[Re Ka, Im Ka],[Im Ka, -Re Ka]]
      trips.emplace_back(r, 2 * k, -1.0 / h + Ka.real());
      trips.emplace_back(r, 2 * k + 1, Ka.imag());
      trips.emplace_back(r + 1, 2 * k, Ka.imag());
      trips.emplace_back(r + 1, 2 * k + 1, -1.0 / h - Ka.real());
      trips.emplace_back(r, 2 * k + 2, 1.0 / h + Kb.real());
      trips.emplace_back(r, 2 * k + 3, Kb.imag());
      trips.emplace_back(r + 1, 2 * k + 2, Kb.imag());
      trips.emplace_back(r + 1, 2 * k + 3, 1.0 / h - Kb.real());
    }
    trips.emplace_back(nu - 1, 2 * N, er.real());
    trips.emplace_back(nu - 1, 2 * N + 1, -er.imag());
    Eigen::SparseMatrix<double> J(nu, nu);
    J.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(J);
    if (lu.info() != Eigen::Success) return false;
    Eigen::VectorXd dx = lu.solve(-F);
    double step = 1.0;
    std::vector<cplx> cand(p.size());
    Eigen::VectorXd Fc;
    double fc = fn;
    for (int bt = 0; bt < 25; ++bt) {
      for (int k = 0; k <= N; ++k)
        cand[k] = p[k] + step * cplx(dx(2 * k), dx(2 * k + 1));
      resid(cand, Fc);
      fc = Fc.lpNorm<Eigen::Infinity>();
      if (fc < (1.0 - 0.25 * step) * fn || fc < tol) break;
      step *= 0.5;
    }
    if (fc >= fn && fc >= tol) {
      final_res = fn;
      return false;  // stagnation
    }
    p = cand;
    F = Fc;
    fn = fc;
    final_res = fn;
    if (fn < tol) {
      ++iters;
      return true;
    }
  }
  return fn < tol;
}

// walk the thimble arclength backward toward q under the frozen plateau
// dynamics, producing the s <= 0 tail of a soliton starting at arclength tau
std::vector<cplx> backward_tail(const LGModel& m, const Thimble& t, double tau,
                                double h, int steps) {
  std::vector<cplx> out;
  double sg = tau >= 0 ? 1.0 : -1.0;
  double sigma = std::abs(tau);
  auto g = [&](double sig) { return std::abs(m.dw(t.at(sg * sig))); };
  for (int k = 0; k < steps; ++k) {
    double k1 = g(sigma);
    double k2 = g(std::max(0.0, sigma - 0.5 * h * k1));
    double k3 = g(std::max(0.0, sigma - 0.5 * h * k2));
    double k4 = g(std::max(0.0, sigma - h * k3));
    sigma = std::max(0.0, sigma - (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4));
    out.push_back(t.at(sg * sigma));  // sample at s = -(k+1) h
  }
  return out;
}

double max_equation_defect(const LGModel& m, const FloerDatum& d,
                           const Perturbation* dH, const Soliton& p) {
  double worst = 0.0;
  for (size_t k = 1; k + 1 < p.p.size(); ++k) {
    double s = p.s0 + p.h * (double)k;
    cplx def = (p.p[k + 1] - p.p[k - 1]) / (2.0 * p.h) +
               Vfield(m, d.alpha, dH, s, p.p[k]);
    worst = std::max(worst, std::abs(def));
  }
  return worst;
}

}  // namespace

SolitonSweep solitons(const LGModel& m, const Thimble& t0, const Thimble& t1,
                      const FloerDatum& d, const ShootOpts& opts) {
  double theta0 = d.alpha.left_plateau() + kPi;
  double theta1 = d.alpha.right_plateau();
  if (std::abs(t0.theta - theta0) > 1e-9 || std::abs(t1.theta - theta1) > 1e-9)
    throw std::invalid_argument(
        "solitons: thimble angles disagree with the datum plateaus");
  RayPair rp{t0.q.value, t1.q.value, theta0, theta1};
  std::vector<cplx> crit;
  for (const auto& c : critical_points(m, false)) crit.push_back(c.value);
  Report chk = validate_floer_datum(d, &rp, crit);
  if (!chk.ok())
    throw std::invalid_argument("solitons: invalid datum: " + chk.summary());

  SolitonSweep sweep;
  double D = d.R;
  cplx w1 = t1.q.value;
  cplx rot1 = std::exp(-kI * theta1);
  double rstop = 10.0 + 3.0 * std::abs(t0.q.z - t1.q.z);
  auto score = [&](double tau) {
    cplx zD = integrate_main(m, d.alpha, opts.dH, D, opts.h, t0.at(tau),
                             t1.q.z, rstop, nullptr);
    return (rot1 * (m.w(zD) - w1)).imag();
  };
  // sweep limits: walk each branch while |W - W(q0)| stays under the cap
  auto branch_limit = [&](int sgn) {
    const std::vector<cplx>& br = sgn > 0 ? t0.plus : t0.minus;
    double reach =
        br.empty() ? 0.0 : t0.eps0 + t0.h * (double)(br.size() - 1);
    double lim = 0.0;
    for (double tau = opts.tau_step;; tau += opts.tau_step) {
      double tt = std::min(tau, reach);
      if (std::abs(m.w(t0.at(sgn * tt)) - t0.q.value) >= opts.wcap) return lim;
      if (tau > reach) {
        sweep.complete = false;
        return lim;
      }
      lim = tau;
    }
  };
  double lim_minus = branch_limit(-1), lim_plus = branch_limit(+1);

  std::vector<double> roots;
  bool same_q = std::abs(t0.q.z - t1.q.z) < 1e-12;
  if (same_q) roots.push_back(0.0);
  double prev_tau = -lim_minus;
  double prev_sc = score(prev_tau);
  for (double tau = prev_tau + opts.tau_step; tau <= lim_plus + 1e-12;
       tau += opts.tau_step) {
    double sc = score(tau);
    if ((prev_sc < 0) != (sc < 0)) {
      double a = prev_tau, b = tau, fa = prev_sc;
      while (b - a > opts.tau_tol) {
        double mid = 0.5 * (a + b), fm = score(mid);
        if ((fa < 0) != (fm < 0))
          b = mid;
        else
          a = mid, fa = fm;
      }
      double root = 0.5 * (a + b);
      double slope = (sc - prev_sc) / opts.tau_step;
      if (std::abs(slope) < opts.slope_tol)
        sweep.flags.push_back("non-transversal root near tau=" +
                              std::to_string(root));
      if (!(same_q && std::abs(root) < 10.0 * opts.tau_step &&
            std::abs(score(0.0)) < 1e-12))
        roots.push_back(root);
    }
    prev_tau = tau;
    prev_sc = sc;
  }

  double pad0 = 21.0 / std::abs(t0.q.hess);
  double pad1 = 21.0 / std::abs(t1.q.hess);
  int kb = (int)std::ceil(pad0 / opts.h);
  int kf = (int)std::ceil(pad1 / opts.h);
  BvpSetup bc = bvp_setup(d, t0.q, t1.q);
  for (double root : roots) {
    // assemble the Newton initial guess: thimble walk on s <= 0, the
    // shooting trajectory on [0, D], clamped descent toward q1 beyond
    std::vector<cplx> guess;
    std::vector<cplx> back = backward_tail(m, t0, root, opts.h, kb);
    for (size_t k = back.size(); k-- > 0;) guess.push_back(back[k]);
    std::vector<cplx> main;
    integrate_main(m, d.alpha, opts.dH, D, opts.h, t0.at(root), t1.q.z, rstop,
                   &main);
    guess.insert(guess.end(), main.begin(), main.end());
    cplx z = main.back();
    double best = std::abs(z - t1.q.z);
    for (int k = 0; k < kf; ++k) {
      double s = D + opts.h * (double)k;
      auto f = [&](double ss, cplx zz) {
        return -Vfield(m, d.alpha, opts.dH, ss, zz);
      };
      cplx k1 = f(s, z), k2 = f(s + 0.5 * opts.h, z + 0.5 * opts.h * k1);
      cplx k3 = f(s + 0.5 * opts.h, z + 0.5 * opts.h * k2);
      cplx k4 = f(s + opts.h, z + opts.h * k3);
      cplx znext = z + (opts.h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (std::abs(znext - t1.q.z) > best)
        znext = t1.q.z;  // past the closest approach: clamp to the limit
      z = znext;
      best = std::min(best, std::abs(z - t1.q.z));
      guess.push_back(z);
    }
    int iters = 0;
    double res = 0.0;
    double s_lo = -opts.h * (double)kb;
    // the main grid step may differ slightly from opts.h after rounding;
    // rebuild on a uniform grid by fixing the count
    double hh = opts.h;
    if (!solve_bvp(m, d, opts.dH, bc, s_lo, hh, guess, 50, 1e-10, iters, res)) {
      sweep.flags.push_back("rejected root at tau=" + std::to_string(root) +
                            " (Newton did not converge)");
      continue;
    }
    Soliton sol;
    sol.tau = root;
    sol.s0 = s_lo;
    sol.h = hh;
    sol.p = guess;
    sol.q0 = t0.q;
    sol.q1 = t1.q;
    sol.residual = max_equation_defect(m, d, opts.dH, sol);
    sol.tail_gap = std::max(std::abs(sol.p.front() - t0.q.z),
                            std::abs(sol.p.back() - t1.q.z));
    if (sol.tail_gap > opts.accept_dist) {
      sweep.flags.push_back("rejected root at tau=" + std::to_string(root) +
                            " (tails do not reach the limit points)");
      continue;
    }
    double dev0 = 0.0;
    for (const cplx& zz : sol.p) dev0 = std::max(dev0, std::abs(zz - t0.q.z));
    sol.constant = same_q && dev0 < 1e-7;
    bool dup = false;
    for (const Soliton& other : sweep.solitons) {
      double dmax = 0.0;
      for (double s = sol.s0; s <= sol.s1(); s += 0.25)
        dmax = std::max(dmax, std::abs(sol.at(s) - other.at(s)));
      if (dmax < 1e-6) dup = true;
    }
    if (dup) continue;
    sweep.solitons.push_back(std::move(sol));
  }
  sweep.count = (int)sweep.solitons.size();
  sweep.count_mod2 = sweep.count % 2;
  return sweep;
}

ActionResult action_of_path(const LGModel& m, const FloerDatum& d, double s0,
                            double h, const std::vector<cplx>& p,
                            const CriticalPoint& q0, const CriticalPoint& q1,
                            const Perturbation* dH) {
  double theta0 = d.alpha.left_plateau() + kPi;
  double theta1 = d.alpha.right_plateau();
  double c0 = (std::exp(-kI * theta0) * q0.value).imag();
  double c1 = (std::exp(-kI * theta1) * q1.value).imag();
  size_t n = p.size();
  std::vector<double> f(n);
  for (size_t k = 0; k < n; ++k) {
    double s = s0 + h * (double)k;
    cplx dz = k == 0         ? (p[1] - p[0]) / h
              : k == n - 1   ? (p[n - 1] - p[n - 2]) / h
                             : (p[k + 1] - p[k - 1]) / (2.0 * h);
    double lam = 0.5 * (p[k].real() * dz.imag() - p[k].imag() * dz.real());
    f[k] = -lam + (std::exp(-kI * d.alpha(s)) * m.w(p[k])).imag();
    if (dH) f[k] += dH->value(s, p[k]);
  }
  double val = 0.0;
  for (size_t k = 0; k + 1 < n; ++k) val += 0.5 * h * (f[k] + f[k + 1]);
  double s_hi = s0 + h * (double)(n - 1);
  // the indicator corrections integrate exactly over the grid span
  if (s0 < 0.0) val += c0 * (std::min(0.0, s_hi) - s0);
  if (s_hi > d.R) val -= c1 * (s_hi - std::max(d.R, s0));
  double gap = std::abs(p.front() - q0.z) + std::abs(p.back() - q1.z);
  ActionResult out;
  out.value = val;
  out.tail_bound = (std::abs(q0.z) + std::abs(q1.z) + 2.0) * gap;
  return out;
}

ActionResult action(const LGModel& m, const FloerDatum& d, const Soliton& p,
                    const Perturbation* dH) {
  return action_of_path(m, d, p.s0, p.h, p.p, p.q0, p.q1, dH);
}

std::vector<cplx> action_gradient(const LGModel& m, const FloerDatum& d,
                                  double s0, double h,
                                  const std::vector<cplx>& p,
                                  const Perturbation* dH) {
  std::vector<cplx> g(p.size(), 0.0);
  for (size_t k = 1; k + 1 < p.size(); ++k) {
    double s = s0 + h * (double)k;
    cplx dz = (p[k + 1] - p[k - 1]) / (2.0 * h);
    // grad Im(e^{-i a} W) = conj(-i e^{-i a} W') = i conj(e^{-i a} W')
    cplx gr = kI * std::conj(std::exp(-kI * d.alpha(s)) * m.dw(p[k]));
    if (dH) gr += dH->grad(s, p[k]);
    g[k] = kI * dz + gr;
  }
  return g;
}

EnergyCheck soliton_energy_check(const LGModel& m, const FloerDatum& d,
                                 const Soliton& p) {
  EnergyCheck e;
  for (size_t k = 1; k + 1 < p.p.size(); ++k) {
    cplx dz = (p.p[k + 1] - p.p[k - 1]) / (2.0 * p.h);
    double gH = std::abs(m.dw(p.p[k]));
    e.energy += 0.5 * p.h * (std::norm(dz) + gH * gH);
  }
  cplx diff = p.q0.value - p.q1.value;
  e.bound = (2.0 / d.eps01) * (std::exp(-kI * d.beta) * diff).real();
  return e;
}

FiltrationLabel filtration_label(const LGModel& m, const FloerDatum& d,
                                 const Soliton& p) {
  double D = d.R;
  if (D < 2.0 * kPi)
    throw std::invalid_argument(
        "filtration_label: needs a stretched datum (R >= 2 pi)");
  auto cps = critical_points(m, false);
  cplx mid = p.at(0.5 * D);
  FiltrationLabel out;
  double best = 1e300;
  for (const auto& c : cps) {
    double dd = std::abs(mid - c.z);
    if (dd < best) {
      best = dd;
      out.x = c;
    }
  }
  double dmin = 1e300;
  for (const auto& c : cps)
    if (c.label != out.x.label) dmin = std::min(dmin, std::abs(c.z - out.x.z));
  double radius = 0.5 * std::min(1.0, dmin / 4.0);
  for (double s = kPi; s <= D - kPi + 1e-9; s += p.h)
    out.max_dev = std::max(out.max_dev, std::abs(p.at(s) - out.x.z));
  out.localized = out.max_dev <= radius;
  return out;
}

LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y) {
  size_t n = x.size();
  if (n < 2 || y.size() != n)
    throw std::invalid_argument("linear_fit: need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < n; ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  LinearFit f;
  f.slope = ((double)n * sxy - sx * sy) / ((double)n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / (double)n;
  for (size_t k = 0; k < n; ++k)
    f.max_residual =
        std::max(f.max_residual, std::abs(y[k] - f.slope * x[k] - f.intercept));
  return f;
}

int maslov_index(const GradedLagLine& l0, const GradedLagLine& l1) {
  double delta = l1.lift - l0.lift;
  if (std::abs(delta - std::round(delta)) < 1e-9)
    throw std::invalid_argument("maslov_index: lines are not transverse");
  return (int)std::floor(delta) + 1;
}

int constant_soliton_grading(const Thimble& t0, const Thimble& t1) {
  return maslov_index({t0.lift()}, {t1.lift()});
}

namespace {

// symmetric discretization of J d/ds + Hess(Im(e^{-i alpha} W)) on the path
Eigen::MatrixXd hessian_matrix(const LGModel& m,
                               const std::function<double(double)>& alpha,
                               const std::function<cplx(double)>& path,
                               double s_lo, double s_hi, int n) {
  double h = (s_hi - s_lo) / (double)(n - 1);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    double s = s_lo + h * (double)k;
    cplx g2 = std::exp(-kI * alpha(s)) * m.ddw(path(s));
    M(2 * k, 2 * k) = g2.imag();
    M(2 * k, 2 * k + 1) = g2.real();
    M(2 * k + 1, 2 * k) = g2.real();
    M(2 * k + 1, 2 * k + 1) = -g2.imag();
    if (k + 1 < n) {
      // J/(2h) coupling to the next node; J = [[0,-1],[1,0]]
      M(2 * k, 2 * k + 3) = -1.0 / (2.0 * h);
      M(2 * k + 1, 2 * k + 2) = 1.0 / (2.0 * h);
      M(2 * k + 2, 2 * k + 1) = 1.0 / (2.0 * h);
      M(2 * k + 3, 2 * k) = -1.0 / (2.0 * h);
    }
  }
  return M;
}

int negative_count(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M,
                                                    Eigen::EigenvaluesOnly);
  int neg = 0;
  for (int k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) < 0.0) ++neg;
  return neg;
}

}  // namespace

std::vector<double> hessian_spectrum(const LGModel& m,
                                     const std::function<double(double)>& alpha,
                                     const std::function<cplx(double)>& path,
                                     double s_lo, double s_hi, int n) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      hessian_matrix(m, alpha, path, s_lo, s_hi, n), Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

// Counting negative eigenvalues of the central-difference matrix cannot see
// spectral flow: the node-alternating map psi_k -> (-1)^k J psi_k conjugates
// that matrix to its negative for every alpha and path (the Hessian of a
// harmonic function anticommutes with J, and the neighbor coupling is a
// multiple of J), so its spectrum is exactly symmetric and the negative
// count is constant.  Instead the flow is computed from the kernel ODE
// directly: A psi = 0 is equivalent to psi' = J S(s) psi, a zero eigenvalue
// exists exactly when the solution launched along the decaying direction of
// the left plateau arrives parallel to the decaying direction of the right
// one, and the crossing sign is the first-order eigenvalue perturbation
// int psi . (dS/du) psi / int |psi|^2.
int spectral_flow(const LGModel& m, const std::function<double(double)>& alpha0,
                  const std::function<double(double)>& alpha1,
                  const std::function<cplx(double)>& p0,
                  const std::function<cplx(double)>& p1, double s_lo,
                  double s_hi, int n, int steps) {
  double h = (s_hi - s_lo) / (double)(n - 1);
  auto g2_at = [&](double u, double s) {
    double a = (1.0 - u) * alpha0(s) + u * alpha1(s);
    cplx p = (1.0 - u) * p0(s) + u * p1(s);
    return std::exp(-kI * a) * m.ddw(p);
  };
  // arg of g2 at an endpoint, continuous in u: the principal branch of
  // std::arg would flip the boundary eigenvectors when -alpha crosses pi,
  // so the alpha contribution enters directly and only the W'' factor
  // (constant in u when the interpolated paths share their endpoints) goes
  // through the principal branch
  auto end_gamma = [&](double u, double s) {
    double a = (1.0 - u) * alpha0(s) + u * alpha1(s);
    cplx p = (1.0 - u) * p0(s) + u * p1(s);
    return -a + std::arg(m.ddw(p));
  };
  // psi' = J S psi written on complex numbers: for S psi with
  // S = [[Im g, Re g],[Re g, -Im g]], (J S) psi = -i * conj(g * conj(psi))
  // ... computed componentwise below to keep the real form explicit
  auto deriv = [&](double u, double s, double x, double y, double* dx,
                   double* dy) {
    cplx g = g2_at(u, s);
    double Sg_x = g.imag() * x + g.real() * y;
    double Sg_y = g.real() * x - g.imag() * y;
    *dx = -Sg_y;  // J = [[0,-1],[1,0]]
    *dy = Sg_x;
  };
  // unit eigenvectors of J S at the ends: with g = |g| e^{i gamma}, the
  // solution decaying toward -infinity leaves along (sin, cos)(gamma/2) and
  // the one decaying toward +infinity arrives along (cos, -sin)(gamma/2)
  auto mismatch = [&](double u, std::vector<double>* wx = nullptr,
                      std::vector<double>* wy = nullptr,
                      std::vector<double>* wlog = nullptr) {
    double gl = end_gamma(u, s_lo);
    double x = std::sin(0.5 * gl), y = std::cos(0.5 * gl);
    double logscale = 0.0;
    if (wx) {
      wx->assign(1, x);
      wy->assign(1, y);
      wlog->assign(1, 0.0);
    }
    for (int k = 0; k + 1 < n; ++k) {
      double s = s_lo + h * (double)k;
      double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
      deriv(u, s, x, y, &k1x, &k1y);
      deriv(u, s + 0.5 * h, x + 0.5 * h * k1x, y + 0.5 * h * k1y, &k2x, &k2y);
      deriv(u, s + 0.5 * h, x + 0.5 * h * k2x, y + 0.5 * h * k2y, &k3x, &k3y);
      deriv(u, s + h, x + h * k3x, y + h * k3y, &k4x, &k4y);
      x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      double nrm = std::hypot(x, y);
      x /= nrm;
      y /= nrm;
      logscale += std::log(nrm);
      if (wx) {
        wx->push_back(x);
        wy->push_back(y);
        wlog->push_back(logscale);
      }
    }
    double gr = end_gamma(u, s_hi);
    double vx = std::cos(0.5 * gr), vy = -std::sin(0.5 * gr);
    return x * vy - y * vx;  // zero iff psi(s_hi) is parallel to v-
  };
  auto crossing_sign = [&](double u) {
    std::vector<double> wx, wy, wlog;
    mismatch(u, &wx, &wy, &wlog);
    double peak = *std::max_element(wlog.begin(), wlog.end());
    const double du = 1e-6;
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n; ++k) {
      double s = s_lo + h * (double)k;
      cplx gp = g2_at(u + du, s), gm = g2_at(u - du, s);
      double dIm = (gp.imag() - gm.imag()) / (2.0 * du);
      double dRe = (gp.real() - gm.real()) / (2.0 * du);
      double x = wx[k], y = wy[k];
      double quad = dIm * (x * x - y * y) + 2.0 * dRe * x * y;
      double wgt = std::exp(2.0 * (wlog[k] - peak));
      num += wgt * quad;
      den += wgt;
    }
    return num >= 0.0 ? 1 : -1;  // sign of d lambda / du at the crossing
  };
  int flow = 0;
  double prev_u = 0.0, prev_e = mismatch(0.0);
  for (int k = 1; k <= steps; ++k) {
    double u = (double)k / (double)steps;
    double e = mismatch(u);
    if ((prev_e < 0) != (e < 0)) {
      double a = prev_u, b = u, fa = prev_e;
      for (int it = 0; it < 48; ++it) {
        double mid = 0.5 * (a + b), fm = mismatch(mid);
        if ((fa < 0) != (fm < 0))
          b = mid;
        else
          a = mid, fa = fm;
      }
      // an eigenvalue crossing upward removes one negative eigenvalue
      flow += crossing_sign(0.5 * (a + b));
    }
    prev_u = u;
    prev_e = e;
  }
  return flow;  // positive when eigenvalues moved negative -> positive
}

int relative_grading(const LGModel& m, const FloerDatum& d, const Soliton& a,
                     const Soliton& b, double pad, int n) {
  auto al = [&](double s) { return d.alpha(s); };
  auto pa = [&](double s) { return a.at(s); };
  auto pb = [&](double s) { return b.at(s); };
  // gr(b) - gr(a) equals the spectral flow of the Hessian family from b to a
  return spectral_flow(m, al, al, pb, pa, -pad, d.R + pad, n);
}

Soliton preglue(const LGModel& m, const Soliton& p_un, const Soliton& p_st,
                const CriticalPoint& xl, double T, double h) {
  double L = T + kPi;
  double s_lo = std::min(p_un.s0, -6.0);
  double s_hi = T + std::max(p_st.s1(), kPi + 6.0);
  int n = (int)std::ceil((s_hi - s_lo) / h);
  Soliton out;
  out.s0 = s_lo;
  out.h = h;
  out.q0 = p_un.q0;
  out.q1 = p_st.q1;
  for (int k = 0; k <= n; ++k) {
    double s = s_lo + h * (double)k;
    double cu = smoothstep01(3.0 - 8.0 * s / L);
    double cs = smoothstep01(8.0 * s / L - 5.0);
    cplx z = xl.z + cu * (p_un.at(s) - xl.z) + cs * (p_st.at(s - T) - xl.z);
    out.p.push_back(z);
  }
  out.constant = p_un.constant && p_st.constant;
  return out;
}

GlueResult newton_glue(const LGModel& m, const FloerDatum& dR,
                       const Soliton& preglued, int max_iters, double tol) {
  GlueResult out;
  BvpSetup bc = bvp_setup(dR, preglued.q0, preglued.q1);
  std::vector<cplx> p = preglued.p;
  int iters = 0;
  double res = 0.0;
  out.converged = solve_bvp(m, dR, nullptr, bc, preglued.s0, preglued.h, p,
                            max_iters, tol, iters, res);
  out.newton_iters = iters;
  out.final_residual = res;
  out.glued = preglued;
  out.glued.p = p;
  out.glued.residual = max_equation_defect(m, dR, nullptr, out.glued);
  out.glued.tail_gap = std::max(std::abs(p.front() - preglued.q0.z),
                                std::abs(p.back() - preglued.q1.z));
  double dev0 = 0.0;
  for (const cplx& z : p) dev0 = std::max(dev0, std::abs(z - preglued.q0.z));
  out.glued.constant =
      std::abs(preglued.q0.z - preglued.q1.z) < 1e-12 && dev0 < 1e-7;
  double l2 = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    l2 += std::norm(p[k] - preglued.p[k]) * preglued.h;
    if (k + 1 < p.size()) {
      cplx dd = (p[k + 1] - p[k]) - (preglued.p[k + 1] - preglued.p[k]);
      l2 += std::norm(dd / preglued.h) * preglued.h;
    }
  }
  out.dist_to_preglued = std::sqrt(l2);
  return out;
}

FloerDatum duality_transform(const FloerDatum& d) {
  FloerDatum out = d;
  out.beta = d.beta - kPi;
  AlphaFunction a;
  a.values.assign(d.alpha.values.rbegin(), d.alpha.values.rend());
  for (double& v : a.values) v -= kPi;
  for (size_t k = d.alpha.ramp_lo.size(); k-- > 0;) {
    a.ramp_lo.push_back(d.R - d.alpha.ramp_hi[k]);
    a.ramp_hi.push_back(d.R - d.alpha.ramp_lo[k]);
  }
  out.alpha = a;
  return out;
}

Soliton reverse_soliton(const FloerDatum& d, const Soliton& p) {
  Soliton out;
  out.tau = p.tau;
  out.h = p.h;
  out.s0 = d.R - p.s1();
  out.p.assign(p.p.rbegin(), p.p.rend());
  out.q0 = p.q1;
  out.q1 = p.q0;
  out.residual = p.residual;
  out.tail_gap = p.tail_gap;
  out.constant = p.constant;
  return out;
}

double holomorphy_defect(const LGModel& m, const std::vector<cplx>& pts) {
  double worst = 0.0;
  for (cplx z : pts) {
    cplx gl = std::conj(m.dw(z));           // grad Re W
    cplx gh = kI * std::conj(m.dw(z));      // grad Im W
    worst = std::max(worst, std::abs(gl + kI * gh));
  }
  return worst;
}

}  // namespace plk
