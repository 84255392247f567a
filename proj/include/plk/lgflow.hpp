// Numerical engine for one-variable polynomial superpotentials W on the
// complex plane: critical data, Lefschetz thimbles, phase-angle solitons by
// shooting, action values, energy filtration labels, gradings via spectral
// flow, and Newton gluing of broken solitons.
//
// Conventions:
//  - The thimble at angle theta is the set of points whose descending flow
//    under Re(exp(-i*theta)*W) converges to the critical point q; its image
//    under W is the ray from W(q) in the direction exp(i*theta).
//  - A soliton for a phase function alpha solves
//      dz/ds = -exp(i*alpha(s)) * conj(W'(z)) + i * grad(dH_s)(z),
//    converging to q0 as s -> -infty and q1 as s -> +infty.  theta0 is the
//    left plateau of alpha plus pi, theta1 is the right plateau.
//  - FloerDatum::R is the length of the interval carrying alpha's ramps:
//    alpha is constant outside [0, R].  For a concatenated (stretched)
//    datum with stretch parameter T this means R = T + pi.
//  - The symplectic primitive is lambda = (x dy - y dx)/2, so constant
//    paths contribute nothing to the action.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "plk/quaddiff.hpp"

namespace plk {

// W(z) = sum_k coeffs[k] z^k with complex coefficients
struct LGModel {
  std::vector<cplx> coeffs;

  int degree() const { return (int)coeffs.size() - 1; }
  cplx w(cplx z) const;    // W(z)
  cplx dw(cplx z) const;   // W'(z)
  cplx ddw(cplx z) const;  // W''(z)
};

struct CriticalPoint {
  cplx z;      // location
  cplx value;  // W(z)
  cplx hess;   // W''(z), nonzero for Morse models
  int label = 0;  // 1-based position in the Im W (= H) ascending order
};

// named violations: degenerate critical point, coincident critical values,
// H-ties (equal imaginary parts of critical values)
Report validate_lg(const LGModel& m);

// all roots of W' (companion-matrix eigenvalues polished by Newton),
// sorted by H = Im W ascending and labeled 1..m.  Throws
// std::invalid_argument on degeneracy/coincident values always, and on
// H-ties unless require_strict_order is false (then labels follow the
// ascending sort with ties broken by Re W).
std::vector<CriticalPoint> critical_points(const LGModel& m,
                                           bool require_strict_order = true);

// directions (W(x_a) - W(x_b))/|...| over distinct pairs, as sorted angles
// in [0, 2*pi)
std::vector<double> critical_angles(const LGModel& m);
bool lg_admissible(const LGModel& m, double theta_star, double tol = 1e-9);
// smallest critical angle strictly above theta_star (mod 2*pi); throws
// std::invalid_argument when there are no critical angles
double theta_crit(const LGModel& m, double theta_star);

struct Ray {
  cplx base;
  double theta = 0;
};
struct RayHit {
  cplx point;
  bool degenerate = false;  // shared endpoint or collinear overlap
};
std::optional<RayHit> ray_intersect(const Ray& r0, const Ray& r1);

// sampled Lefschetz thimble: two branches leaving q along the opposite
// stable directions, each parametrized by arclength
struct Thimble {
  CriticalPoint q;
  double theta = 0;
  double eps0 = 0;  // seeding offset of the first sample from q
  double h = 0;     // arclength step between samples
  std::vector<cplx> plus, minus;  // samples at arclength eps0 + k h
  std::vector<cplx> tan_plus, tan_minus;  // unit tangents, for interpolation

  double lift() const;  // grading lift theta / (2*pi)
  Ray ray() const { return {q.value, theta}; }
  // point at signed arclength tau (tau >= 0 on the plus branch), clamped
  cplx at(double tau) const;
  double tau_max() const;  // arclength reach of the shorter branch
};

// trace until |W - W(q)| reaches wcap
Thimble make_thimble(const LGModel& m, const CriticalPoint& q, double theta,
                     double wcap = 6.0, double h = 1e-3);

// ray invariants at every sample: |Im(e^{-i theta}(W - W(q)))| below
// tol * max(1, |W - W(q)|) and Re(e^{-i theta}(W - W(q))) >= -tol
Report thimble_check(const LGModel& m, const Thimble& t, double tol = 1e-6);

// time-dependent Hamiltonian perturbation dH_s(z) = c * bump(s) * Re(phi(z))
struct Perturbation {
  double c = 0;
  double s_lo = 0, s_hi = 1;  // bump support
  std::vector<cplx> phi;      // polynomial coefficients

  double bump(double s) const;  // C^1 bump: smoothstep up then down
  double value(double s, cplx z) const;
  cplx grad(double s, cplx z) const;  // gradient in z as a complex number
};

struct Soliton {
  double tau = 0;  // shooting parameter (arclength on the source thimble)
  double s0 = 0, h = 0;
  std::vector<cplx> p;  // samples at s0 + k h, tails included
  CriticalPoint q0, q1;
  double residual = 0;   // max equation defect by central differences
  double tail_gap = 0;   // worst terminal distance to the limit points
  bool constant = false;

  cplx at(double s) const;  // clamped linear interpolation
  double s1() const { return s0 + h * (double)(p.size() - 1); }
};

struct ShootOpts {
  double h = 0.005;           // RK4 step for the soliton equation
  double tau_step = 0.01;     // sweep increment along the source thimble
  double wcap = 6.0;          // sweep while |W(start) - W(q0)| < wcap
  double tau_tol = 1e-10;     // bisection tolerance in tau
  double slope_tol = 1e-8;    // transversality threshold for the score slope
  double accept_dist = 1e-4;  // required terminal approach to q1
  const Perturbation* dH = nullptr;
};

struct SolitonSweep {
  std::vector<Soliton> solitons;
  int count = 0;       // integer count of certified solitons
  int count_mod2 = 0;  // the same count mod 2
  bool complete = true;               // sweep covered the full cap
  std::vector<std::string> flags;     // non-transversal roots etc.
};

// shooting over p(0) in t0, scored by the signed ray coordinate of p(R)
// relative to t1.  Throws std::invalid_argument if the datum fails
// validate_floer_datum against the thimble rays or if the thimble angles
// disagree with the plateaus of alpha.
SolitonSweep solitons(const LGModel& m, const Thimble& t0, const Thimble& t1,
                      const FloerDatum& d, const ShootOpts& opts = {});

struct ActionResult {
  double value = 0;
  double tail_bound = 0;  // bound on the neglected improper-tail remainder
};

// the action of a sampled path with limits q0, q1 for the given datum
ActionResult action_of_path(const LGModel& m, const FloerDatum& d, double s0,
                            double h, const std::vector<cplx>& p,
                            const CriticalPoint& q0, const CriticalPoint& q1,
                            const Perturbation* dH = nullptr);
ActionResult action(const LGModel& m, const FloerDatum& d, const Soliton& p,
                    const Perturbation* dH = nullptr);

// gradient of the action functional at the path samples (central
// differences in s): J dp/ds + grad(Im(e^{-i alpha} W) + dH_s)
std::vector<cplx> action_gradient(const LGModel& m, const FloerDatum& d,
                                  double s0, double h,
                                  const std::vector<cplx>& p,
                                  const Perturbation* dH = nullptr);

// discrete energy (1/2) int |dp/ds|^2 + |grad H|^2 against the a-priori
// bound (2/eps01) Re(e^{-i beta}(W(q0) - W(q1))) from the energy estimate
// with eps01' = eps01^2 / 2
struct EnergyCheck {
  double energy = 0;
  double bound = 0;
  // roundoff allowance: a constant solution at a critical point has exact
  // energy 0 and exact bound 0, but is sampled only to solver tolerance
  bool ok() const { return energy <= bound + 1e-9 * (1.0 + std::abs(bound)); }
};
EnergyCheck soliton_energy_check(const LGModel& m, const FloerDatum& d,
                                 const Soliton& p);

// nearest critical point on the middle window [pi, R - pi]; localized means
// every window sample sits within the disjointness radius
// 0.5 * min(1, nearest-critical-distance / 4) of that point
struct FiltrationLabel {
  CriticalPoint x;
  double max_dev = 0;
  bool localized = false;
};
FiltrationLabel filtration_label(const LGModel& m, const FloerDatum& d,
                                 const Soliton& p);

// least-squares line fit, for the action-vs-stretch linear law
struct LinearFit {
  double slope = 0, intercept = 0, max_residual = 0;
};
LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y);

// graded Lagrangian line in the plane, recorded by its grading lift
struct GradedLagLine {
  double lift = 0;
};
// floor(lift1 - lift0) + 1; throws std::invalid_argument when the lifts
// differ by an integer (non-transverse lines)
int maslov_index(const GradedLagLine& l0, const GradedLagLine& l1);
// grading of the constant soliton of a pair of thimbles at the same
// critical point: maslov_index of their lifts
int constant_soliton_grading(const Thimble& t0, const Thimble& t1);

// eigenvalues of the discretized Hessian J d/ds + Hess(Im(e^{-i alpha} W))
// along the path, on an n-point grid over [s_lo, s_hi] with Dirichlet ends
std::vector<double> hessian_spectrum(const LGModel& m,
                                     const std::function<double(double)>& alpha,
                                     const std::function<cplx(double)>& path,
                                     double s_lo, double s_hi, int n);

// signed eigenvalue-crossing count of the Hessian family along the linear
// homotopy (alpha0, p0) -> (alpha1, p1), positive when eigenvalues move
// from negative to positive; tracked over `steps` homotopy samples with
// bisection refinement of each crossing interval
int spectral_flow(const LGModel& m, const std::function<double(double)>& alpha0,
                  const std::function<double(double)>& alpha1,
                  const std::function<cplx(double)>& p0,
                  const std::function<cplx(double)>& p1, double s_lo,
                  double s_hi, int n, int steps = 64);

// relative grading gr(b) - gr(a) of two solitons of the same datum, by
// spectral flow along the linear homotopy from a to b
int relative_grading(const LGModel& m, const FloerDatum& d, const Soliton& a,
                     const Soliton& b, double pad = 6.0, int n = 400);

// cutoff blend of an unstable-end soliton (on its own datum of length pi)
// with a stable-end one shifted by the stretch T, constant at xl on the
// middle quarter of [0, T + pi]
Soliton preglue(const LGModel& m, const Soliton& p_un, const Soliton& p_st,
                const CriticalPoint& xl, double T, double h = 0.005);

struct GlueResult {
  Soliton glued;
  int newton_iters = 0;
  double final_residual = 0;
  double dist_to_preglued = 0;  // grid Sobolev distance |.|_{L^2_1}
  bool converged = false;
};

// solve the discretized soliton boundary-value problem for the datum dR by
// damped Newton from the preglued path (implicit trapezoid in s, linearized
// stable/unstable boundary conditions at the truncated ends)
GlueResult newton_glue(const LGModel& m, const FloerDatum& dR,
                       const Soliton& preglued, int max_iters = 50,
                       double tol = 1e-10);

// reflected datum: alpha'(s) = alpha(R - s) - pi, beta' = beta - pi
FloerDatum duality_transform(const FloerDatum& d);
// s -> R - s reversal of a sampled soliton, for matching against the
// sweep of the transformed datum
Soliton reverse_soliton(const FloerDatum& d, const Soliton& p);

// max |grad Re W + J grad Im W| over the samples (identically zero for
// holomorphic W; kept as an explicit certificate)
double holomorphy_defect(const LGModel& m, const std::vector<cplx>& pts);

}  // namespace plk
