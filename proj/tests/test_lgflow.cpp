#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "plk/lgflow.hpp"

using namespace plk;
const double PI = std::numbers::pi;
const cplx I(0.0, 1.0);

namespace {

// W(z) = z^3/3 - e^{i pi/3} z: critical points +-e^{i pi/6} with critical
// values -+ 2i/3 (so H = Im W equals -+ 2/3), Hessians +- 2 e^{i pi/6}
LGModel cubic_model() {
  return LGModel{{0.0, -std::exp(I * (PI / 3.0)), 0.0, cplx(1.0 / 3.0)}};
}

LGModel square_model() { return LGModel{{0.0, 0.0, cplx(0.5)}}; }

// concatenated datum: unstable ramp eta - pi -> pi on [0, pi], plateau pi on
// [pi, T], stable ramp pi -> theta on [T, T + pi]
FloerDatum concat_datum(double eta, double theta, double T, double beta,
                        double eps) {
  FloerDatum d;
  d.alpha = concat_alpha(alpha_unstable(eta, 0.3), alpha_stable(theta, 0.3), T);
  d.R = T + PI;
  d.beta = beta;
  d.eps01 = eps;
  return d;
}

FloerDatum un_datum(double eta, double beta, double eps) {
  FloerDatum d;
  d.alpha = alpha_unstable(eta, 0.3);
  d.R = PI;
  d.beta = beta;
  d.eps01 = eps;
  return d;
}

Soliton constant_soliton(const CriticalPoint& q, double s0, double h, int n) {
  Soliton s;
  s.s0 = s0;
  s.h = h;
  s.p.assign(n, q.z);
  s.q0 = q;
  s.q1 = q;
  s.constant = true;
  return s;
}

// shared angle choices for the two-critical-point arrangement: stable
// thimble angles below theta* = 2.2, unstable ones in (pi, 3 pi / 2)
const double kEta1 = PI + 1.0, kEta2 = PI + 1.2;
const double kTh1 = 2.1, kTh2 = 2.0;
const double kBeta = 2.2, kEps = 0.3;

double sup_dist(const Soliton& a, const Soliton& b, double s_lo, double s_hi) {
  double worst = 0.0;
  for (double s = s_lo; s <= s_hi; s += 0.05)
    worst = std::max(worst, std::abs(a.at(s) - b.at(s)));
  return worst;
}

}  // namespace

TEST_CASE("critical points: locations, values, ordering") {
  LGModel sq = square_model();
  auto c = critical_points(sq);
  REQUIRE(c.size() == 1);
  CHECK(std::abs(c[0].z) < 1e-12);
  CHECK(std::abs(c[0].value) < 1e-12);
  CHECK(std::abs(c[0].hess - 1.0) < 1e-12);

  LGModel m = cubic_model();
  auto cp = critical_points(m);
  REQUIRE(cp.size() == 2);
  cplx x1 = std::exp(I * (PI / 6.0));
  CHECK(std::abs(cp[0].z - x1) < 1e-10);
  CHECK(std::abs(cp[1].z + x1) < 1e-10);
  CHECK(std::abs(cp[0].value - cplx(0, -2.0 / 3.0)) < 1e-10);
  CHECK(std::abs(cp[1].value - cplx(0, 2.0 / 3.0)) < 1e-10);
  CHECK(cp[0].label == 1);
  CHECK(cp[1].label == 2);
  CHECK(std::abs(m.dw(cp[0].z)) < 1e-12);
  CHECK(std::abs(cp[0].hess - 2.0 * x1) < 1e-10);
}

TEST_CASE("critical points: degeneracy, coincident values, H-ties") {
  // z^3/3 has a double critical point at the origin
  LGModel dbl{{0.0, 0.0, 0.0, cplx(1.0 / 3.0)}};
  CHECK(!validate_lg(dbl).ok());
  CHECK_THROWS_AS((void)critical_points(dbl), std::invalid_argument);

  // z^4/4 - z^2/2 has W(1) = W(-1) = -1/4
  LGModel coin{{0.0, 0.0, cplx(-0.5), 0.0, cplx(0.25)}};
  CHECK(!validate_lg(coin).ok());
  CHECK_THROWS_AS((void)critical_points(coin), std::invalid_argument);

  // z^3/3 - z has real critical values +-2/3: an H-tie
  LGModel tie{{0.0, cplx(-1.0), 0.0, cplx(1.0 / 3.0)}};
  CHECK(!validate_lg(tie).ok());
  CHECK_THROWS_AS((void)critical_points(tie), std::invalid_argument);
  auto loose = critical_points(tie, false);
  REQUIRE(loose.size() == 2);
  // tie broken by Re W ascending: W(1) = -2/3 first
  CHECK(std::abs(loose[0].z - 1.0) < 1e-10);
  CHECK(std::abs(loose[1].z + 1.0) < 1e-10);
}

TEST_CASE("critical angles, admissibility, theta_crit") {
  CHECK(critical_angles(square_model()).empty());
  CHECK(lg_admissible(square_model(), 0.123));
  CHECK_THROWS_AS((void)theta_crit(square_model(), 0.0), std::invalid_argument);

  LGModel m = cubic_model();  // values -+ 2i/3: directions +- i
  auto a = critical_angles(m);
  REQUIRE(a.size() == 2);
  CHECK(a[0] == doctest::Approx(PI / 2).epsilon(1e-12));
  CHECK(a[1] == doctest::Approx(3 * PI / 2).epsilon(1e-12));
  CHECK(lg_admissible(m, 0.0));
  CHECK(lg_admissible(m, 2.2));
  CHECK(!lg_admissible(m, PI / 2));
  CHECK(!lg_admissible(m, 3 * PI / 2 + 2 * PI));  // mod 2 pi
  CHECK(theta_crit(m, 0.0) == doctest::Approx(PI / 2));
  CHECK(theta_crit(m, 2.0) == doctest::Approx(3 * PI / 2));
  CHECK(theta_crit(m, 5.0) == doctest::Approx(PI / 2 + 2 * PI));
  // angles are equivariant under rotating the model
  LGModel tie{{0.0, cplx(-1.0), 0.0, cplx(1.0 / 3.0)}};
  auto a0 = critical_angles(tie);
  REQUIRE(a0.size() == 2);
  CHECK(a0[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(a0[1] == doctest::Approx(PI));
  CHECK(!lg_admissible(tie, 0.0));
  LGModel rot = tie;
  for (auto& ck : rot.coeffs) ck *= std::exp(I * 0.3);
  auto ar = critical_angles(rot);
  REQUIRE(ar.size() == 2);
  CHECK(ar[0] == doctest::Approx(0.3));
  CHECK(ar[1] == doctest::Approx(PI + 0.3));
}

TEST_CASE("ray intersection with degeneracy flags") {
  // parallel disjoint
  CHECK(!ray_intersect({cplx(0, 0), 0.0}, {cplx(0, 1), 0.0}).has_value());
  // perpendicular crossing
  auto h = ray_intersect({cplx(-1, 1), 0.0}, {cplx(2, -1), PI / 2});
  REQUIRE(h.has_value());
  CHECK(std::abs(h->point - cplx(2, 1)) < 1e-12);
  CHECK(!h->degenerate);
  // shared endpoint only
  auto e = ray_intersect({cplx(1, 1), 0.0}, {cplx(1, 1), PI / 2});
  REQUIRE(e.has_value());
  CHECK(std::abs(e->point - cplx(1, 1)) < 1e-12);
  CHECK(e->degenerate);
  // collinear rays facing each other: overlap flagged degenerate
  auto c = ray_intersect({cplx(0, 0), 0.0}, {cplx(2, 0), PI});
  REQUIRE(c.has_value());
  CHECK(c->degenerate);
  // anti-parallel but offset: none
  CHECK(!ray_intersect({cplx(0, 0), 0.5}, {cplx(0, 1), 0.5 + PI}).has_value());
}

TEST_CASE("thimbles of z^2/2: axes, and ray invariants everywhere") {
  LGModel sq = square_model();
  auto q = critical_points(sq)[0];
  Thimble t0 = make_thimble(sq, q, 0.0);
  // W image on the ray [0, inf): the real axis
  for (cplx z : t0.plus) CHECK(std::abs(z.imag()) < 1e-8);
  for (cplx z : t0.minus) CHECK(std::abs(z.imag()) < 1e-8);
  CHECK(sq.w(t0.at(1.0)).real() > 0.0);
  Thimble tpi = make_thimble(sq, q, PI);
  for (cplx z : tpi.plus) CHECK(std::abs(z.real()) < 1e-8);
  CHECK(thimble_check(sq, t0).ok());
  CHECK(thimble_check(sq, tpi).ok());

  LGModel m = cubic_model();
  auto cp = critical_points(m);
  for (double th : {kTh1, kTh2, kEta1, kEta2, PI, 2 * PI}) {
    for (const auto& c : cp) {
      Thimble t = make_thimble(m, c, th);
      CHECK(thimble_check(m, t, 1e-6).ok());
      CHECK(holomorphy_defect(m, t.plus) < 1e-12);
    }
  }
  CHECK(make_thimble(m, cp[0], kTh1).lift() ==
        doctest::Approx(kTh1 / (2 * PI)));
}

TEST_CASE("quasi-unit channel: exactly the constant soliton") {
  LGModel m = cubic_model();
  auto cp = critical_points(m);
  Thimble t0 = make_thimble(m, cp[0], kEta1);
  Thimble t1 = make_thimble(m, cp[0], kTh1);
  FloerDatum d = concat_datum(kEta1, kTh1, 5.0, kBeta, kEps);
  auto sweep = solitons(m, t0, t1, d);
  REQUIRE(sweep.count == 1);
  CHECK(sweep.count_mod2 == 1);
  CHECK(sweep.solitons[0].constant);
  CHECK(sweep.solitons[0].residual < 1e-6);
  CHECK(constant_soliton_grading(t0, t1) == 0);
  auto ec = soliton_energy_check(m, d, sweep.solitons[0]);
  CHECK(ec.ok());
  auto fl = filtration_label(m, d, sweep.solitons[0]);
  CHECK(fl.localized);
  CHECK(fl.x.label == 1);
}

TEST_CASE("disjoint thimble rays give an empty sweep") {
  LGModel m = cubic_model();
  auto cp = critical_points(m);
  Thimble t0 = make_thimble(m, cp[0], kEta1);  // ray down-left from -2i/3
  Thimble t1 = make_thimble(m, cp[1], kTh2);   // ray up-left from +2i/3
  CHECK(!ray_intersect(t0.ray(), t1.ray()).has_value());
  FloerDatum d = concat_datum(kEta1, kTh2, 5.0, 2.0, kEps);
  auto sweep = solitons(m, t0, t1, d);
  CHECK(sweep.count == 0);
  CHECK(sweep.count_mod2 == 0);
}

TEST_CASE("main channel: certified solitons, labels, energy, stability") {
  LGModel m = cubic_model();
  auto cp = critical_points(m);
  Thimble t0 = make_thimble(m, cp[1], kEta2);
  Thimble t1 = make_thimble(m, cp[0], kTh1);
  REQUIRE(ray_intersect(t0.ray(), t1.ray()).has_value());
  FloerDatum d = concat_datum(kEta2, kTh1, 5.0, kBeta, kEps);
  auto sweep = solitons(m, t0, t1, d);
  REQUIRE(sweep.count >= 1);
  CHECK(sweep.count_mod2 == 1);
  for (const auto& s : sweep.solitons) {
    CHECK(!s.constant);
    CHECK(s.residual < 1e-3);
    CHECK(s.tail_gap < 1e-4);
    auto ec = soliton_energy_check(m, d, s);
    CHECK(ec.energy > 0.0);
    CHECK(ec.ok());
    auto fl = filtration_label(m, d, s);
    CHECK(fl.localized);
    CHECK(fl.x.label >= 1);  // k <= l <= j with k = 1, j = 2
    CHECK(fl.x.label <= 2);
    // projected path law: d/ds W(p) = -e^{i alpha} |W'(p)|^2
    for (double s_q : {1.0, 2.5, 4.0, 6.0}) {
      cplx dw = (m.w(s.at(s_q + 0.01)) - m.w(s.at(s_q - 0.01))) / 0.02;
      cplx rhs = -std::exp(I * d.alpha(s_q)) * std::norm(m.dw(s.at(s_q)));
      CHECK(std::abs(dw - rhs) < 1e-2 * std::max(1.0, std::abs(rhs)));
    }
  }
  // mod-2 count is stable under refining the sweep and the integrator
  ShootOpts fine;
  fine.h = 0.0025;
  fine.tau_step = 0.005;
  auto sweep2 = solitons(m, t0, t1, d, fine);
  CHECK(sweep2.count_mod2 == sweep.count_mod2);
  CHECK(sweep2.count == sweep.count);
}

TEST_CASE("action of constant solitons: zero and closed-form quadrature") {
  LGModel sq = square_model();
  auto q0 = critical_points(sq)[0];  // W(0) = 0
  FloerDatum d0;
  d0.alpha = alpha_simple(3 * PI / 2, 3 * PI / 4, 4.0, 0.5);
  d0.R = 4.0;
  d0.beta = 2.0;
  d0.eps01 = 0.3;
  Soliton e0 = constant_soliton(q0, -2.0, 0.005, 2401);
  CHECK(std::abs(action(sq, d0, e0).value) < 1e-12);

  // W(q) != 0: the action reduces to the integral of Im(e^{-i alpha} W(q))
  LGModel m = cubic_model();
  auto cp = critical_points(m);
  FloerDatum d = concat_datum(kEta1, kTh1, 5.0, kBeta, kEps);
  int n = (int)std::ceil((d.R + 4.0) / 0.005) + 1;
  Soliton eq = constant_soliton(cp[0], -2.0, 0.005, n);
  double expect = 0.0;
  {
    int N = 800000;
    double hh = d.R / (double)N;
    for (int k = 0; k <= N; ++k) {
      double w = (k == 0 || k == N) ? 0.5 : 1.0;
      expect += w * hh *
                (std::exp(-I * d.alpha(hh * (double)k)) * cp[0].value).imag();
    }
  }
  CHECK(action(m, d, eq).value == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("action decreases along the downward gradient direction") {
  LGModel m = cubic_model();
  auto cp = critical_points(m);
  Thimble t0 = make_thimble(m, cp[1], kEta2);
  Thimble t1 = make_thimble(m, cp[0], kTh1);
  FloerDatum d = concat_datum(kEta2, kTh1, 5.0, kBeta, kEps);
  auto sweep = solitons(m, t0, t1, d);
  REQUIRE(sweep.count >= 1);
  const Soliton& s = sweep.solitons[0];
  std::vector<cplx> path = s.p;
  double D = d.R;
  for (size_t k = 0; k < path.size(); ++k) {
    double sv = s.s0 + s.h * (double)k;
    path[k] += 0.05 * std::exp(-(sv - 0.5 * D) * (sv - 0.5 * D));
  }
  double a0 = action_of_path(m, d, s.s0, s.h, path, s.q0, s.q1).value;
  auto g = action_gradient(m, d, s.s0, s.h, path);
  std::vector<cplx> stepped = path;
  for (size_t k = 0; k < path.size(); ++k) stepped[k] -= 1e-3 * g[k];
  double a1 = action_of_path(m, d, s.s0, s.h, stepped, s.q0, s.q1).value;
  CHECK(a1 < a0);
  // and the soliton itself is a critical point: tiny interior gradient
  auto gs = action_gradient(m, d, s.s0, s.h, s.p);
  double worst = 0.0;
  for (const cplx& v : gs) worst = std::max(worst, std::abs(v));
  CHECK(worst < 1e-2);
}

TEST_CASE("filtration label requires a stretched datum") {
  LGModel m = cubic_model();
  auto cp = critical_points(m);
  FloerDatum d = un_datum(kEta1, kBeta, kEps);
  Soliton eq = constant_soliton(cp[0], -1.0, 0.01, 600);
  CHECK_THROWS_AS((void)filtration_label(m, d, eq), std::invalid_argument);
}

TEST_CASE("maslov index: floor identity and transversality") {
  GradedLagLine l0{0.55}, l1{0.2};
  CHECK(maslov_index(l0, l1) == 0);  // lift gap in (-1, 0)
  CHECK(maslov_index((GradedLagLine{l0.lift + 1.0}), l1) ==
        maslov_index(l0, l1) - 1);
  CHECK(maslov_index(l0, (GradedLagLine{l1.lift + 1.0})) ==
        maslov_index(l0, l1) + 1);
  CHECK(maslov_index(l0, (GradedLagLine{l0.lift + 2.3})) == 3);
  CHECK_THROWS_AS((void)maslov_index(l0, (GradedLagLine{l0.lift + 2.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)maslov_index(l0, (GradedLagLine{l0.lift - 1.0})),
                  std::invalid_argument);
}

TEST_CASE("discretized Hessian at a constant critical path: symmetric and invertible") {
  LGModel m = cubic_model();
  auto cp = critical_points(m);
  cplx q = cp[0].z;
  auto alpha = [](double) { return PI; };
  auto path = [q](double) { return q; };
  auto spec = hessian_spectrum(m, alpha, path, -6.0, 6.0, 301);
  REQUIRE(spec.size() == 602);
  double minabs = 1e300;
  for (size_t k = 0; k < spec.size(); ++k) {
    minabs = std::min(minabs, std::abs(spec[k]));
    // symmetry about zero: the mirrored eigenvalue is present
    CHECK(spec[k] == doctest::Approx(-spec[spec.size() - 1 - k]).epsilon(1e-9));
  }
  CHECK(minabs > 0.05);
}

TEST_CASE("spectral flow matches the maslov formula for constant solitons") {
  LGModel sq = square_model();
  cplx q(0.0, 0.0);
  AlphaFunction a0 = alpha_simple(3 * PI / 2, 3 * PI / 4, 4.0, 0.5);
  AlphaFunction a1 = alpha_simple(3 * PI / 2 - 2 * PI, 3 * PI / 4, 4.0, 0.5);
  // gradings 0 and 1: lowering theta0 by 2 pi raises the index by one
  CHECK(maslov_index((GradedLagLine{(3 * PI / 2) / (2 * PI)}),
                     (GradedLagLine{(3 * PI / 4) / (2 * PI)})) == 0);
  CHECK(maslov_index((GradedLagLine{(3 * PI / 2 - 2 * PI) / (2 * PI)}),
                     (GradedLagLine{(3 * PI / 4) / (2 * PI)})) == 1);
  auto f0 = [&](double s) { return a0(s); };
  auto f1 = [&](double s) { return a1(s); };
  auto path = [q](double) { return q; };
  int sf = spectral_flow(sq, f1, f0, path, path, -6.0, 10.0, 241);
  CHECK(sf == 1);  // gr difference of the two constant generators
  // stable under grid refinement
  CHECK(spectral_flow(sq, f1, f0, path, path, -6.0, 10.0, 321) == 1);
}

TEST_CASE("pregluing and Newton: trivial pair converges in zero steps") {
  LGModel m = cubic_model();
  auto cp = critical_points(m);
  Soliton eu = constant_soliton(cp[0], -8.0, 0.005, 4400);  // reaches pi + tails
  Soliton es = constant_soliton(cp[0], -8.0, 0.005, 4400);
  double T = 10.0;
  Soliton pg = preglue(m, eu, es, cp[0], T);
  CHECK(pg.constant);
  for (const cplx& z : pg.p) CHECK(std::abs(z - cp[0].z) < 1e-14);
  FloerDatum d = concat_datum(kEta1, kTh1, T, kBeta, kEps);
  auto g = newton_glue(m, d, pg);
  CHECK(g.converged);
  CHECK(g.newton_iters == 0);
  CHECK(g.dist_to_preglued < 1e-12);
  CHECK(g.glued.constant);
}

TEST_CASE("gluing a broken pair: convergence, shrinking correction, linear action law") {
  LGModel m = cubic_model();
  auto cp = critical_points(m);
  // unstable-end piece: x2 -> x1 under the eta2 ramp datum of length pi
  Thimble u0 = make_thimble(m, cp[1], kEta2);
  Thimble u1 = make_thimble(m, cp[0], PI);
  FloerDatum dun = un_datum(kEta2, kBeta, kEps);
  auto usweep = solitons(m, u0, u1, dun);
  REQUIRE(usweep.count >= 1);
  const Soliton& pun = usweep.solitons[0];
  // stable-end piece: the constant at x1
  Soliton pst = constant_soliton(cp[0], -8.0, 0.005, 4400);

  std::vector<double> Ts = {5.0, 10.0, 20.0, 40.0};
  std::vector<double> dists, acts;
  for (double T : Ts) {
    FloerDatum dR = concat_datum(kEta2, kTh1, T, kBeta, kEps);
    Soliton pg = preglue(m, pun, pst, cp[0], T);
    auto g = newton_glue(m, dR, pg);
    REQUIRE(g.converged);
    CHECK(g.glued.residual < 1e-3);
    CHECK(g.glued.tail_gap < 1e-6);
    auto fl = filtration_label(m, dR, g.glued);
    CHECK(fl.localized);
    CHECK(fl.x.label == 1);
    dists.push_back(g.dist_to_preglued);
    acts.push_back(action(m, dR, g.glued).value);
    // the glued path agrees with direct shooting where that is feasible
    if (T == 5.0) {
      Thimble t0 = make_thimble(m, cp[1], kEta2);
      Thimble t1 = make_thimble(m, cp[0], kTh1);
      auto sweep = solitons(m, t0, t1, dR);
      REQUIRE(sweep.count >= 1);
      double best = 1e300;
      for (const auto& s : sweep.solitons)
        best = std::min(best, sup_dist(s, g.glued, 0.0, dR.R));
      CHECK(best < 1e-5);
    }
  }
  for (size_t k = 1; k + 1 < dists.size(); ++k) CHECK(dists[k + 1] < dists[k]);
  // action is linear in the stretch with slope -H(x_1) = 2/3
  LinearFit fit = linear_fit(Ts, acts);
  CHECK(std::abs(fit.slope - 2.0 / 3.0) < 0.01 * (2.0 / 3.0));
  CHECK(fit.max_residual < 0.05);
}

TEST_CASE("duality transform: involution and time-reversed solitons") {
  LGModel m = cubic_model();
  auto cp = critical_points(m);
  FloerDatum d = concat_datum(kEta2, kTh1, 5.0, kBeta, kEps);
  FloerDatum dd = duality_transform(d);
  CHECK(dd.beta == doctest::Approx(kBeta - PI));
  FloerDatum ddd = duality_transform(dd);
  for (double s = -1.0; s <= d.R + 1.0; s += 0.1)
    CHECK(ddd.alpha(s) == doctest::Approx(d.alpha(s) - 2 * PI).epsilon(1e-12));

  Thimble t0 = make_thimble(m, cp[1], kEta2);
  Thimble t1 = make_thimble(m, cp[0], kTh1);
  auto sweep = solitons(m, t0, t1, d);
  REQUIRE(sweep.count >= 1);
  // the dual pair swaps the thimbles, with the angle of the new right end
  // shifted down by 2 pi
  Thimble s0 = make_thimble(m, cp[0], kTh1);
  Thimble s1 = make_thimble(m, cp[1], kEta2 - 2 * PI);
  auto dsweep = solitons(m, s0, s1, dd);
  CHECK(dsweep.count == sweep.count);
  for (const auto& q : dsweep.solitons) {
    double best = 1e300;
    for (const auto& s : sweep.solitons) {
      Soliton rev = reverse_soliton(d, s);
      best = std::min(best, sup_dist(q, rev, -2.0, d.R + 2.0));
    }
    CHECK(best < 1e-4);
  }
  // constant solitons are fixed by the reversal
  Soliton eq = constant_soliton(cp[0], 0.0, 0.01, 100);
  Soliton req = reverse_soliton(d, eq);
  CHECK(req.constant);
  CHECK(std::abs(req.at(1.0) - eq.at(1.0)) < 1e-15);
}

TEST_CASE("solitons: datum/thimble mismatches are rejected") {
  LGModel m = cubic_model();
  auto cp = critical_points(m);
  Thimble t0 = make_thimble(m, cp[1], kEta2);
  Thimble t1 = make_thimble(m, cp[0], kTh1);
  FloerDatum d = concat_datum(kEta2, kTh1, 5.0, kBeta, kEps);
  // wrong thimble angle on the right
  Thimble bad = make_thimble(m, cp[0], kTh2);
  CHECK_THROWS_AS((void)solitons(m, t0, bad, d), std::invalid_argument);
  // invalid datum: beta outside the plateau window
  FloerDatum dbad = d;
  dbad.beta = 0.1;
  CHECK_THROWS_AS((void)solitons(m, t0, t1, dbad), std::invalid_argument);
}
