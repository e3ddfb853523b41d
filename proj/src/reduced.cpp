#include "landscape/reduced.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace landscape {

namespace {
constexpr double kPi = M_PI;

double clamp_cos(double c) { return std::max(-1.0, std::min(1.0, c)); }

// Kernel value from norms and angle (same closed form as kernel()).
double kscal(double nu, double nv, double t) {
  return nu * nv / (2.0 * kPi) * (std::sin(t) + (kPi - t) * std::cos(t));
}

}  // namespace

AngleSet reduced_angles(const ReducedPoint& r) {
  const int p = r.p();
  const int m = r.m();
  if (r.coeffs.size() != m) throw std::invalid_argument("coefficient count");
  const double d = r.d;
  if (d <= p + 1) throw std::domain_error("d must exceed p + 1");
  const double t = d - p;  // large-block row count, real-valued
  const double a1 = r.coeffs[0];
  const double a2 = m >= 2 ? r.coeffs[1] : 0.0;
  const double a3 = m >= 5 ? r.coeffs[2] : 0.0;
  const double a4 = m >= 5 ? r.coeffs[3] : 0.0;
  const double a5 = m >= 5 ? r.coeffs[4] : 0.0;
  const double a6 = m >= 6 ? r.coeffs[5] : 0.0;

  AngleSet s;
  s.p = p;
  const double n1sq = a1 * a1 + (t - 1.0) * a2 * a2 + p * a3 * a3;
  if (n1sq <= 0.0) throw std::domain_error("non-positive row norm");
  s.nu_t = std::sqrt(n1sq);
  const double dot_tt = 2.0 * a1 * a2 + (t - 2.0) * a2 * a2 + p * a3 * a3;
  s.a_tt = std::acos(clamp_cos(dot_tt / n1sq));
  s.b_t_own = std::acos(clamp_cos(a1 / s.nu_t));
  s.b_t_other = std::acos(clamp_cos(a2 / s.nu_t));

  if (p >= 1) {
    const double nbsq = t * a4 * a4 + a5 * a5 + (p - 1.0) * a6 * a6;
    if (nbsq <= 0.0) throw std::domain_error("non-positive row norm");
    s.nu_b = std::sqrt(nbsq);
    const double dot_tb =
        a4 * (a1 + (t - 1.0) * a2) + a3 * (a5 + (p - 1.0) * a6);
    s.a_tb = std::acos(clamp_cos(dot_tb / (s.nu_t * s.nu_b)));
    s.b_t_small = std::acos(clamp_cos(a3 / s.nu_t));
    s.b_b_large = std::acos(clamp_cos(a4 / s.nu_b));
    s.b_b_own = std::acos(clamp_cos(a5 / s.nu_b));
    if (p >= 2) {
      const double dot_bb =
          t * a4 * a4 + 2.0 * a5 * a6 + (p - 2.0) * a6 * a6;
      s.a_bb = std::acos(clamp_cos(dot_bb / nbsq));
      s.b_b_other = std::acos(clamp_cos(a6 / s.nu_b));
    }
  }
  return s;
}

namespace {

Vec grad_p0(const Vec& a, double d, const AngleSet& s) {
  const double P = kPi;
  const double a1 = a[0], a2 = a[1];
  const double A2 = s.a_tt, sA2 = std::sin(A2);
  const double B1 = s.b_t_own, sB1 = std::sin(B1);
  const double B2 = s.b_t_other, sB2 = std::sin(B2);
  const double nt = s.nu_t;
  const double d2 = d * d, d3 = d2 * d;

  Vec g(2);
  g[0] = a1 * d / 2.0 - a1 * d * sB1 / (2.0 * P * nt) +
         a1 * (d2 - d) * sA2 / (2.0 * P) -
         a1 * (d2 - d) * sB2 / (2.0 * P * nt) -
         a2 * A2 * (d2 - d) / (2.0 * P) + a2 * (d2 - d) / 2.0 +
         B1 * d / (2.0 * P) - d / 2.0;
  g[1] = -a1 * A2 * (d2 - d) / (2.0 * P) + a1 * (d2 - d) / 2.0 -
         a2 * A2 * (d3 - 3.0 * d2 + 2.0 * d) / (2.0 * P) +
         a2 * (d3 - 2.0 * d2 + d) * sA2 / (2.0 * P) +
         a2 * (d3 - 2.0 * d2 + d) / 2.0 -
         a2 * (d2 - d) * sB1 / (2.0 * P * nt) -
         a2 * (d3 - 2.0 * d2 + d) * sB2 / (2.0 * P * nt) +
         B2 * (d2 - d) / (2.0 * P) - d2 / 2.0 + d / 2.0;
  return g;
}

Vec grad_p1(const Vec& a, double d, const AngleSet& s) {
  const double P = kPi;
  const double a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a5 = a[4];
  const double A2 = s.a_tt, sA2 = std::sin(A2);
  const double AD = s.a_tb, sAD = std::sin(AD);
  const double B1 = s.b_t_own, sB1 = std::sin(B1);
  const double B2 = s.b_t_other, sB2 = std::sin(B2);
  const double B3 = s.b_t_small, sB3 = std::sin(B3);
  const double C1 = s.b_b_large, sC1 = std::sin(C1);
  const double C5 = s.b_b_own, sC5 = std::sin(C5);
  const double nt = s.nu_t, nb = s.nu_b;
  const double d2 = d * d, d3 = d2 * d;
  const double q2 = d2 - 3.0 * d + 2.0;   // (d-1)(d-2)
  const double q1 = d - 1.0;
  const double q2b = d2 - 2.0 * d + 1.0;  // (d-1)^2
  const double c3 = d3 - 6.0 * d2 + 11.0 * d - 6.0;  // (d-1)(d-2)(d-3)
  const double c3b = d3 - 5.0 * d2 + 8.0 * d - 4.0;  // (d-1)(d-2)^2

  Vec g(5);
  g[0] = a1 * q1 / 2.0 + a1 * q2 * sA2 / (2.0 * P) +
         a1 * nb * q1 * sAD / (2.0 * P * nt) -
         a1 * q1 * sB1 / (2.0 * P * nt) - a1 * q1 * sB3 / (2.0 * P * nt) -
         a1 * q2 * sB2 / (2.0 * P * nt) - a2 * A2 * q2 / (2.0 * P) +
         a2 * q2 / 2.0 - a4 * AD * q1 / (2.0 * P) + a4 * q1 / 2.0 +
         B1 * q1 / (2.0 * P) - d / 2.0 + 0.5;
  g[1] = -a1 * A2 * q2 / (2.0 * P) + a1 * q2 / 2.0 -
         a2 * A2 * c3 / (2.0 * P) + a2 * c3b * sA2 / (2.0 * P) +
         a2 * c3b / 2.0 + a2 * nb * q2 * sAD / (2.0 * P * nt) -
         a2 * q2 * sB1 / (2.0 * P * nt) - a2 * q2 * sB3 / (2.0 * P * nt) -
         a2 * c3b * sB2 / (2.0 * P * nt) - a4 * AD * q2 / (2.0 * P) +
         a4 * q2 / 2.0 + B2 * q2 / (2.0 * P) - d2 / 2.0 + 3.0 * d / 2.0 - 1.0;
  g[2] = -a3 * A2 * q2 / (2.0 * P) + a3 * q2 * sA2 / (2.0 * P) +
         a3 * q2b / 2.0 + a3 * nb * q1 * sAD / (2.0 * P * nt) -
         a3 * q1 * sB1 / (2.0 * P * nt) - a3 * q1 * sB3 / (2.0 * P * nt) -
         a3 * q2 * sB2 / (2.0 * P * nt) - a5 * AD * q1 / (2.0 * P) +
         a5 * q1 / 2.0 + B3 * q1 / (2.0 * P) - d / 2.0 + 0.5;
  g[3] = -a1 * AD * q1 / (2.0 * P) + a1 * q1 / 2.0 -
         a2 * AD * q2 / (2.0 * P) + a2 * q2 / 2.0 +
         a4 * nt * q2b * sAD / (2.0 * P * nb) + a4 * q1 / 2.0 -
         a4 * q1 * sC5 / (2.0 * P * nb) - a4 * q2b * sC1 / (2.0 * P * nb) +
         C1 * q1 / (2.0 * P) - d / 2.0 + 0.5;
  g[4] = -a3 * AD * q1 / (2.0 * P) + a3 * q1 / 2.0 +
         a5 * nt * q1 * sAD / (2.0 * P * nb) + a5 / 2.0 -
         a5 * q1 * sC1 / (2.0 * P * nb) - a5 * sC5 / (2.0 * P * nb) +
         C5 / (2.0 * P) - 0.5;
  return g;
}

Vec grad_p2(const Vec& a, double d, const AngleSet& s) {
  const double P = kPi;
  const double a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a5 = a[4],
               a6 = a[5];
  const double A2 = s.a_tt, sA2 = std::sin(A2);
  const double AD = s.a_tb, sAD = std::sin(AD);
  const double AB = s.a_bb, sAB = std::sin(AB);
  const double B1 = s.b_t_own, sB1 = std::sin(B1);
  const double B2 = s.b_t_other, sB2 = std::sin(B2);
  const double B3 = s.b_t_small, sB3 = std::sin(B3);
  const double C1 = s.b_b_large, sC1 = std::sin(C1);
  const double C5 = s.b_b_own, sC5 = std::sin(C5);
  const double C6 = s.b_b_other, sC6 = std::sin(C6);
  const double nt = s.nu_t, nb = s.nu_b;
  const double d2 = d * d, d3 = d2 * d;
  const double q1 = d - 2.0;
  const double q2 = d2 - 5.0 * d + 6.0;    // (d-2)(d-3)
  const double q2b = d2 - 4.0 * d + 4.0;   // (d-2)^2
  const double c3 = d3 - 9.0 * d2 + 26.0 * d - 24.0;  // (d-2)(d-3)(d-4)
  const double c3b = d3 - 8.0 * d2 + 21.0 * d - 18.0; // (d-2)(d-3)^2

  Vec g(6);
  g[0] = a1 * q1 / 2.0 + a1 * q2 * sA2 / (2.0 * P) +
         a1 * nb * q1 * sAD / (P * nt) - a1 * q1 * sB1 / (2.0 * P * nt) -
         a1 * q1 * sB3 / (P * nt) - a1 * q2 * sB2 / (2.0 * P * nt) -
         a2 * A2 * q2 / (2.0 * P) + a2 * q2 / 2.0 - a4 * AD * q1 / P +
         a4 * q1 + B1 * q1 / (2.0 * P) - d / 2.0 + 1.0;
  g[1] = -a1 * A2 * q2 / (2.0 * P) + a1 * q2 / 2.0 -
         a2 * A2 * c3 / (2.0 * P) + a2 * c3b * sA2 / (2.0 * P) +
         a2 * c3b / 2.0 + a2 * nb * q2 * sAD / (P * nt) -
         a2 * q2 * sB1 / (2.0 * P * nt) - a2 * q2 * sB3 / (P * nt) -
         a2 * c3b * sB2 / (2.0 * P * nt) - a4 * AD * q2 / P + a4 * q2 +
         B2 * q2 / (2.0 * P) - d2 / 2.0 + 5.0 * d / 2.0 - 3.0;
  g[2] = -a3 * A2 * q2 / P + a3 * q2 * sA2 / P + a3 * q2b +
         2.0 * a3 * nb * q1 * sAD / (P * nt) - a3 * q1 * sB1 / (P * nt) -
         2.0 * a3 * q1 * sB3 / (P * nt) - a3 * q2 * sB2 / (P * nt) -
         a5 * AD * q1 / P + a5 * q1 - a6 * AD * q1 / P + a6 * q1 +
         B3 * q1 / P - d + 2.0;
  g[3] = -a1 * AD * q1 / P + a1 * q1 - a2 * AD * q2 / P + a2 * q2 -
         a4 * AB * q1 / P + a4 * nt * q2b * sAD / (P * nb) +
         a4 * q1 * sAB / P + 2.0 * a4 * q1 - a4 * q1 * sC6 / (P * nb) -
         a4 * q1 * sC5 / (P * nb) - a4 * q2b * sC1 / (P * nb) +
         C1 * q1 / P - d + 2.0;
  g[4] = -a3 * AD * q1 / P + a3 * q1 + a5 * nt * q1 * sAD / (P * nb) +
         a5 * sAB / P + a5 - a5 * q1 * sC1 / (P * nb) -
         a5 * sC6 / (P * nb) - a5 * sC5 / (P * nb) - a6 * AB / P + a6 +
         C5 / P - 1.0;
  g[5] = -a3 * AD * q1 / P + a3 * q1 - a5 * AB / P + a5 +
         a6 * nt * q1 * sAD / (P * nb) + a6 * sAB / P + a6 -
         a6 * q1 * sC1 / (P * nb) - a6 * sC6 / (P * nb) -
         a6 * sC5 / (P * nb) + C6 / P - 1.0;
  return g;
}

Vec grad_p3(const Vec& a, double d, const AngleSet& s) {
  const double P = kPi;
  const double a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a5 = a[4],
               a6 = a[5];
  const double A2 = s.a_tt, sA2 = std::sin(A2);
  const double AD = s.a_tb, sAD = std::sin(AD);
  const double AB = s.a_bb, sAB = std::sin(AB);
  const double B1 = s.b_t_own, sB1 = std::sin(B1);
  const double B2 = s.b_t_other, sB2 = std::sin(B2);
  const double B3 = s.b_t_small, sB3 = std::sin(B3);
  const double C1 = s.b_b_large, sC1 = std::sin(C1);
  const double C5 = s.b_b_own, sC5 = std::sin(C5);
  const double C6 = s.b_b_other, sC6 = std::sin(C6);
  const double nt = s.nu_t, nb = s.nu_b;
  const double d2 = d * d, d3 = d2 * d;
  const double q1 = d - 3.0;
  const double q2 = d2 - 7.0 * d + 12.0;   // (d-3)(d-4)
  const double q2b = d2 - 6.0 * d + 9.0;   // (d-3)^2
  const double c3 = d3 - 12.0 * d2 + 47.0 * d - 60.0;  // (d-3)(d-4)(d-5)
  const double c3b = d3 - 11.0 * d2 + 40.0 * d - 48.0; // (d-3)(d-4)^2

  Vec g(6);
  g[0] = a1 * q1 / 2.0 + a1 * q2 * sA2 / (2.0 * P) +
         3.0 * a1 * nb * q1 * sAD / (2.0 * P * nt) -
         a1 * q1 * sB1 / (2.0 * P * nt) -
         3.0 * a1 * q1 * sB3 / (2.0 * P * nt) -
         a1 * q2 * sB2 / (2.0 * P * nt) - a2 * A2 * q2 / (2.0 * P) +
         a2 * q2 / 2.0 - 3.0 * a4 * AD * q1 / (2.0 * P) +
         3.0 * a4 * q1 / 2.0 + B1 * q1 / (2.0 * P) - d / 2.0 + 1.5;
  g[1] = -a1 * A2 * q2 / (2.0 * P) + a1 * q2 / 2.0 -
         a2 * A2 * c3 / (2.0 * P) + a2 * c3b * sA2 / (2.0 * P) +
         a2 * c3b / 2.0 + 3.0 * a2 * nb * q2 * sAD / (2.0 * P * nt) -
         a2 * q2 * sB1 / (2.0 * P * nt) -
         3.0 * a2 * q2 * sB3 / (2.0 * P * nt) -
         a2 * c3b * sB2 / (2.0 * P * nt) - 3.0 * a4 * AD * q2 / (2.0 * P) +
         3.0 * a4 * q2 / 2.0 + B2 * q2 / (2.0 * P) - d2 / 2.0 +
         7.0 * d / 2.0 - 6.0;
  g[2] = -3.0 * a3 * A2 * q2 / (2.0 * P) + 3.0 * a3 * q2 * sA2 / (2.0 * P) +
         3.0 * a3 * q2b / 2.0 + 9.0 * a3 * nb * q1 * sAD / (2.0 * P * nt) -
         3.0 * a3 * q1 * sB1 / (2.0 * P * nt) -
         9.0 * a3 * q1 * sB3 / (2.0 * P * nt) -
         3.0 * a3 * q2 * sB2 / (2.0 * P * nt) -
         3.0 * a5 * AD * q1 / (2.0 * P) + 3.0 * a5 * q1 / 2.0 -
         3.0 * a6 * AD * q1 / P + 3.0 * a6 * q1 +
         3.0 * B3 * q1 / (2.0 * P) - 3.0 * d / 2.0 + 4.5;
  g[3] = -3.0 * a1 * AD * q1 / (2.0 * P) + 3.0 * a1 * q1 / 2.0 -
         3.0 * a2 * AD * q2 / (2.0 * P) + 3.0 * a2 * q2 / 2.0 -
         3.0 * a4 * AB * q1 / P + 3.0 * a4 * nt * q2b * sAD / (2.0 * P * nb) +
         3.0 * a4 * q1 * sAB / P + 9.0 * a4 * q1 / 2.0 -
         3.0 * a4 * q1 * sC6 / (P * nb) -
         3.0 * a4 * q1 * sC5 / (2.0 * P * nb) -
         3.0 * a4 * q2b * sC1 / (2.0 * P * nb) + 3.0 * C1 * q1 / (2.0 * P) -
         3.0 * d / 2.0 + 4.5;
  g[4] = -3.0 * a3 * AD * q1 / (2.0 * P) + 3.0 * a3 * q1 / 2.0 +
         3.0 * a5 * nt * q1 * sAD / (2.0 * P * nb) + 3.0 * a5 * sAB / P +
         3.0 * a5 / 2.0 - 3.0 * a5 * q1 * sC1 / (2.0 * P * nb) -
         3.0 * a5 * sC6 / (P * nb) - 3.0 * a5 * sC5 / (2.0 * P * nb) -
         3.0 * a6 * AB / P + 3.0 * a6 + 3.0 * C5 / (2.0 * P) - 1.5;
  g[5] = -3.0 * a3 * AD * q1 / P + 3.0 * a3 * q1 - 3.0 * a5 * AB / P +
         3.0 * a5 - 3.0 * a6 * AB / P + 3.0 * a6 * nt * q1 * sAD / (P * nb) +
         6.0 * a6 * sAB / P + 6.0 * a6 - 3.0 * a6 * q1 * sC1 / (P * nb) -
         6.0 * a6 * sC6 / (P * nb) - 3.0 * a6 * sC5 / (P * nb) +
         3.0 * C6 / P - 3.0;
  return g;
}

}  // namespace

Vec reduced_grad(const ReducedPoint& r) {
  const AngleSet s = reduced_angles(r);
  switch (r.p()) {
    case 0: return grad_p0(r.coeffs, r.d, s);
    case 1: return grad_p1(r.coeffs, r.d, s);
    case 2: return grad_p2(r.coeffs, r.d, s);
    case 3: return grad_p3(r.coeffs, r.d, s);
  }
  throw std::invalid_argument("unsupported family");
}

double reduced_loss(const ReducedPoint& r) {
  const AngleSet s = reduced_angles(r);
  const double d = r.d;
  const int p = r.p();
  const double t = d - p;
  const double nt = s.nu_t, nb = s.nu_b;

  // Student-student pairs.
  double ss = t * nt * nt / 2.0 + t * (t - 1.0) * kscal(nt, nt, s.a_tt);
  if (p >= 1)
    ss += 2.0 * t * p * kscal(nt, nb, s.a_tb) + p * nb * nb / 2.0 +
          p * (p - 1.0) * kscal(nb, nb, s.a_bb);

  // Student-teacher pairs (teacher rows are unit axes).
  double st = t * (kscal(nt, 1.0, s.b_t_own) +
                   (t - 1.0) * kscal(nt, 1.0, s.b_t_other));
  if (p >= 1)
    st += t * p * kscal(nt, 1.0, s.b_t_small) +
          p * (t * kscal(nb, 1.0, s.b_b_large) + kscal(nb, 1.0, s.b_b_own) +
               (p - 1.0) * kscal(nb, 1.0, s.b_b_other));

  // Teacher-teacher pairs.
  const double tt = d / 4.0 + d * (d - 1.0) / (4.0 * kPi);

  return 0.5 * ss - st + tt;
}

ReducedPoint newton_solve(const ReducedPoint& r0, double tol, int max_iter) {
  NewtonOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return newton_solve(r0, opt);
}

ReducedPoint newton_solve(const ReducedPoint& r0, const NewtonOptions& opt) {
  ReducedPoint r = r0;
  const int m = r.m();
  Vec F = reduced_grad(r);
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    const double res = F.cwiseAbs().maxCoeff();
    if (res < opt.tol) return r;

    Mat J(m, m);
    for (int j = 0; j < m; ++j) {
      ReducedPoint rp = r;
      rp.coeffs[j] += opt.fd_step;
      J.col(j) = (reduced_grad(rp) - F) / opt.fd_step;
    }
    // Row/column equilibration: gradient components and coefficients live on
    // scales that spread with d; the condition cap should flag genuine folds,
    // not benign scaling disparity.
    Vec row_s(m), col_s(m);
    for (int i = 0; i < m; ++i)
      row_s[i] = std::max(J.row(i).cwiseAbs().maxCoeff(), 1e-300);
    Mat Je = row_s.cwiseInverse().asDiagonal() * J;
    for (int j = 0; j < m; ++j)
      col_s[j] = std::max(Je.col(j).cwiseAbs().maxCoeff(), 1e-300);
    Je = Je * col_s.cwiseInverse().asDiagonal();

    Eigen::JacobiSVD<Mat> svd(Je, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0 || smax / smin > opt.max_condition)
      throw std::runtime_error("singular reduced Jacobian (condition " +
                               std::to_string(smax / smin) + ")");
    const Vec step =
        col_s.cwiseInverse().asDiagonal() *
        svd.solve(Vec(row_s.cwiseInverse().asDiagonal() * F));

    // Backtracking on the residual norm.
    double damp = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      ReducedPoint rn = r;
      rn.coeffs -= damp * step;
      try {
        const Vec Fn = reduced_grad(rn);
        if (Fn.norm() < F.norm() || Fn.cwiseAbs().maxCoeff() < opt.tol) {
          r = rn;
          F = Fn;
          accepted = true;
          break;
        }
      } catch (const std::domain_error&) {
        // step left the admissible region; shrink
      }
      damp *= 0.5;
    }
    if (!accepted) {
      // The absolute tolerance can sit below the double-precision floor when
      // the gradient scale grows with d; accept the scale-relative floor.
      if (F.cwiseAbs().maxCoeff() < opt.tol * std::max(1.0, row_s.maxCoeff()))
        return r;
      throw std::runtime_error("line search failed at residual " +
                               std::to_string(F.cwiseAbs().maxCoeff()));
    }
  }
  const double res = F.cwiseAbs().maxCoeff();
  if (res < opt.tol) return r;
  throw std::runtime_error("no convergence after max_iter (residual " +
                           std::to_string(res) + ")");
}

std::vector<ReducedPoint> continue_in_d(const ReducedPoint& seed, double d_end,
                                        int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  const double d_start = seed.d;
  const double floor_step = std::abs(d_end - d_start) / 1024.0;
  std::vector<ReducedPoint> path;
  ReducedPoint cur = newton_solve(seed, 1e-12, 200);
  path.push_back(cur);

  for (int i = 1; i <= steps; ++i) {
    const double d_target = d_start + (d_end - d_start) * i / steps;
    double d_cur = cur.d;
    while (std::abs(d_cur - d_target) > 1e-15) {
      double step = d_target - d_cur;
      bool moved = false;
      while (true) {
        ReducedPoint trial = cur;
        trial.d = d_cur + step;
        try {
          trial = newton_solve(trial, 1e-12, 80);
          cur = trial;
          d_cur = trial.d;
          moved = true;
          break;
        } catch (const std::exception&) {
          if (std::abs(step) / 2.0 < floor_step)
            throw std::runtime_error(
                "continuation stalled at d = " + std::to_string(d_cur));
          step /= 2.0;
        }
      }
      if (!moved) break;
    }
    path.push_back(cur);
  }
  return path;
}

HalfPowerSeries fit_half_series(
    const std::vector<std::pair<double, double>>& samples,
    const std::vector<double>& exponents) {
  const int n = static_cast<int>(samples.size());
  const int m = static_cast<int>(exponents.size());
  if (n < m + 2)
    throw std::invalid_argument("need at least len(exponents) + 2 samples");
  double dmin = samples[0].first, dmax = samples[0].first;
  for (const auto& s : samples) {
    dmin = std::min(dmin, s.first);
    dmax = std::max(dmax, s.first);
  }
  if (dmax < 100.0 * dmin)
    throw std::invalid_argument("samples must span at least two decades in d");

  Mat X(n, m);
  Vec y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = samples[i].second;
    for (int j = 0; j < m; ++j)
      X(i, j) = std::pow(samples[i].first, -exponents[j]);
  }
  // Column scaling for conditioning; undone on the coefficients.
  Vec scale(m);
  for (int j = 0; j < m; ++j) {
    scale[j] = X.col(j).norm();
    if (scale[j] == 0.0) scale[j] = 1.0;
    X.col(j) /= scale[j];
  }
  Eigen::JacobiSVD<Mat> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond =
      svd.singularValues().maxCoeff() / svd.singularValues().minCoeff();
  if (!(cond < 1e10))
    throw std::runtime_error(
        "ill-conditioned design (condition " + std::to_string(cond) +
        "); widen the d range or drop exponents");
  Vec c = svd.solve(y);
  HalfPowerSeries out;
  out.exponents = exponents;
  out.coeffs = c.cwiseQuotient(scale);
  out.max_residual = (X * c - y).cwiseAbs().maxCoeff();
  return out;
}

ReducedPoint solve_branch(Branch b, double d, double tol) {
  const Family fam = branch_family(b);
  const int p = family_p(fam);
  if (d <= p + 1) throw std::domain_error("d must exceed p + 1");

  auto seed_at = [&](double dd) {
    ReducedPoint r;
    r.family = fam;
    r.d = dd;
    r.coeffs = branch_seed(b, dd);
    return r;
  };

  if (d >= 9.0) {
    NewtonOptions opt;
    opt.tol = tol;
    opt.max_iter = 200;
    // Coefficient scales spread as O(d) at large d; the condition cap guards
    // genuine folds, not benign scaling disparity.
    opt.max_condition = 1e12 * std::max(1.0, d / 100.0);
    return newton_solve(seed_at(d), opt);
  }

  // Small d: branch identity is defined by continuation from a safely
  // solvable dimension, not by cold-start Newton (multiple roots coexist).
  const double d_hi = 12.0;
  ReducedPoint hi = newton_solve(seed_at(d_hi), tol, 200);
  auto path = continue_in_d(hi, d, 24);
  return path.back();
}

}  // namespace landscape
