// Explicit quadratic differentials on 3-pointed disks, phase-angle
// functions with plateau/ramp structure, their characteristic curves, and
// Floer-datum validation.
//
// Conventions:
//  - Phase-angle functions are piecewise: constant plateau values joined by
//    cubic smoothstep ramps (the source data only requires smoothness and
//    plateaus, so the ramp shape is our choice, recorded here).
//  - Characteristic curves solve dz/ds = -exp(i*alpha(s)) by fixed-step
//    RK4 with step <= min(ramp width / 8, 0.01); the anchor (value at the
//    left endpoint) is an explicit argument rather than a hidden choice.
//  - A ray with angle theta from a value w is w + r*exp(i*theta), r >= 0.
#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "plk/ainfty.hpp"  // Report

namespace plk {

using cplx = std::complex<double>;

// phi = b0 (dz/z)^2 + b1 (dz/(1-z))^2 + b2 (dz/(z(1-z)))^2 on the upper
// half plane with marked points 0, 1, infinity and residues a_k^2
struct QuadDiff3 {
  double a0 = 0, a1 = 0, a2 = 0;  // residue roots, positive
  double b0 = 0, b1 = 0, b2 = 0;  // coefficients, determined by the a's
};

// throws std::invalid_argument on a nonpositive residue root
QuadDiff3 qd3_from_residues(double a0, double a1, double a2);

// recover (a0^2, a1^2, a2^2) from the coefficients (exact linear system)
std::array<double, 3> qd3_residues(const QuadDiff3& q);

// true iff the zero locus avoids the real boundary line, decided by the
// real roots of the quadratic numerator a2^2 z^2 - 2 b0 z + a0^2
bool qd3_real_zero_free(const QuadDiff3& q);

// piecewise phase-angle function: plateaus joined by cubic smoothstep ramps
struct AlphaFunction {
  std::vector<double> values;   // n + 1 plateau values
  std::vector<double> ramp_lo;  // n disjoint increasing ramp intervals
  std::vector<double> ramp_hi;

  double operator()(double s) const;
  double left_plateau() const { return values.front(); }
  double right_plateau() const { return values.back(); }
  bool monotone() const;
  double min_ramp_width() const;
  // [first ramp start, last ramp end]; plateaus extend beyond
  double support_lo() const { return ramp_lo.empty() ? 0.0 : ramp_lo.front(); }
  double support_hi() const { return ramp_hi.empty() ? 0.0 : ramp_hi.back(); }
};

// single ramp from theta0 - pi (s <= delta) to theta1 (s >= R - delta)
AlphaFunction alpha_simple(double theta0, double theta1, double R,
                           double delta);
// ramp from eta - pi (s <= delta) to pi (s >= pi - delta)
AlphaFunction alpha_unstable(double eta, double delta);
// ramp from pi (s <= delta) to theta (s >= pi - delta)
AlphaFunction alpha_stable(double theta, double delta);

// Concatenation: a_un on [0, pi], the shared plateau value on [pi, R],
// a_st shifted by R on [R, R + pi]. Throws std::invalid_argument if the
// right plateau of a_un differs from the left plateau of a_st, if R is
// below pi, or if ramps would overlap.
AlphaFunction concat_alpha(const AlphaFunction& a_un,
                           const AlphaFunction& a_st, double R);

// sampled characteristic curve dz/ds = -exp(i*alpha(s))
struct CharCurve {
  double s0 = 0, h = 0;
  std::vector<cplx> z;  // samples at s0 + k h

  double s1() const { return s0 + h * (double)(z.size() - 1); }
  cplx at(double s) const;  // linear interpolation, clamped
  // largest deviation of the sampled speed |dz/ds| from 1
  double speed_defect() const;
};

// integrate from s_min to s_max with z(s_min) = anchor; h <= 0 picks the
// default step min(ramp width / 8, 0.01)
CharCurve characteristic_curve(const AlphaFunction& a, double s_min,
                               double s_max, cplx anchor, double h = -1.0);

struct FloerDatum {
  double R = 0;
  AlphaFunction alpha;
  double beta = 0;
  double eps01 = 0;
  // perturbation one-form norm integrals (L-infinity and squared Sobolev)
  double dH_l1 = 0.0, dH_l2 = 0.0;
};

// the two thimble rays at the ends of the datum, with their critical values
struct RayPair {
  cplx w0, w1;
  double theta0 = 0, theta1 = 0;
};

// Checks, each failure named: R >= pi; eps01 in (0,1); beta in the window
// (theta1 - pi/2, theta0 - pi/2) read off the plateaus; the margin
// min_s cos(beta - alpha(s)) > eps01; perturbation norm integrals < 1.
// With rays and critical values supplied: no critical value lies strictly
// inside either ray -- relaxed, when alpha is monotone, to the segments
// from the ray intersection point to the two end values.
Report validate_floer_datum(const FloerDatum& d, const RayPair* rays = nullptr,
                            const std::vector<cplx>& crit_values = {});

// the E1.4 margin itself: min over samples of cos(beta - alpha) - eps01
double floer_margin(const FloerDatum& d);

// intersection point of the two rays, if any (nearly parallel counts as none)
std::optional<cplx> ray_intersection(const RayPair& rays);

}  // namespace plk
