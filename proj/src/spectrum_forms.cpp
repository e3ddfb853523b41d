// Hand-derived closed forms of the compressed Hessian blocks at points of the
// full-diagonal family.  Everything is expressed through the point's reduced
// geometry: the row norm nu, the angle A between two distinct rows, and the
// angles B1 (row vs its own teacher axis) and B2 (row vs another teacher
// axis).  Terms carrying 1/sin(B1) or 1/sin(B2) factors have removable
// singularities that cancel in exact arithmetic but are numerically
// catastrophic at B1 = 0 (the exact global minimum); callers should evaluate
// at generic points of the family.

#include <cmath>
#include <stdexcept>

#include "landscape/reduced.hpp"
#include "landscape/spectrum.hpp"

namespace landscape {

namespace {

struct DiagGeometry {
  double a1, a2, d, nu;
  double A, sA, cA;
  double B1, sB1, cB1;
  double B2, sB2, cB2;
};

DiagGeometry diag_geometry(const ReducedPoint& r) {
  if (r.family != Family::FULL_DIAG)
    throw std::invalid_argument("closed forms require the full-diagonal family");
  const AngleSet s = reduced_angles(r);
  DiagGeometry g;
  g.a1 = r.coeffs[0];
  g.a2 = r.coeffs[1];
  g.d = r.d;
  g.nu = s.nu_t;
  g.A = s.a_tt;
  g.sA = std::sin(g.A);
  g.cA = std::cos(g.A);
  g.B1 = s.b_t_own;
  g.sB1 = std::sin(g.B1);
  g.cB1 = std::cos(g.B1);
  g.B2 = s.b_t_other;
  g.sB2 = std::sin(g.B2);
  g.cB2 = std::cos(g.B2);
  return g;
}

constexpr double P = M_PI;

}  // namespace

double diag_x_eigenvalue(const ReducedPoint& r) {
  const DiagGeometry g = diag_geometry(r);
  const double a1 = g.a1, a2 = g.a2, d = g.d, nu = g.nu;
  const double A = g.A, sA = g.sA;
  const double sB1 = g.sB1, sB2 = g.sB2;
  const double n2 = sA, m2 = sB2;
  return -a1 * a1 / (2 * P * nu * nu * n2) +
         a1 * a1 * sA / (2 * P * nu * nu * n2 * n2) +
         a1 * a2 / (P * nu * nu * n2) -
         a1 * a2 * sA / (P * nu * nu * n2 * n2) -
         a2 * a2 / (2 * P * nu * nu * n2) +
         a2 * a2 * sA / (2 * P * nu * nu * n2 * n2) + A / (2 * P) +
         (d - 1) * sA / (2 * P) - (d - 1) * sB2 / (2 * P * nu) -
         sB1 / (2 * P * nu) - sB2 / (2 * P * m2 * m2 * nu);
}

double diag_y_eigenvalue(const ReducedPoint& r) {
  const DiagGeometry g = diag_geometry(r);
  const double a1 = g.a1, a2 = g.a2, d = g.d, nu = g.nu;
  const double A = g.A, sA = g.sA;
  const double sB1 = g.sB1, sB2 = g.sB2;
  const double n2 = sA, m2 = sB2;
  return a1 * a1 / (2 * P * nu * nu * n2) +
         a1 * a1 * sA / (2 * P * nu * nu * n2 * n2) -
         a1 * a2 / (P * nu * nu * n2) -
         a1 * a2 * sA / (P * nu * nu * n2 * n2) +
         a2 * a2 / (2 * P * nu * nu * n2) +
         a2 * a2 * sA / (2 * P * nu * nu * n2 * n2) + A / (2 * P) +
         (d - 1) * sA / (2 * P) - (d - 1) * sB2 / (2 * P * nu) -
         sB1 / (2 * P * nu) - sB2 / (2 * P * m2 * m2 * nu);
}

Mat diag_s_block(const ReducedPoint& r) {
  const DiagGeometry g = diag_geometry(r);
  const double a1 = g.a1, a2 = g.a2, d = g.d, nu = g.nu;
  const double A = g.A, sA = g.sA, cA = g.cA;
  const double B1 = g.B1, sB1 = g.sB1, cB1 = g.cB1;
  const double B2 = g.B2, sB2 = g.sB2, cB2 = g.cB2;
  const double n2 = sA, m1 = sB1, m2 = sB2;
  const double nu2 = nu * nu, nu3 = nu * nu * nu;

  Mat T(4, 4);

  T(0, 0) = -a1 * a1 * (d - 1) * sA / (2 * P * nu2) -
            a1 * a1 / (2 * P * nu2 * n2) +
            a1 * a1 * (d - 1) * sA * cA * cA / (2 * P * nu2 * n2 * n2) +
            a1 * a1 * (d - 1) * sB2 / (2 * P * nu3) +
            a1 * a1 * sB1 / (2 * P * nu3) -
            a1 * a1 * (d - 1) * sB2 * cB2 * cB2 / (2 * P * m2 * m2 * nu3) -
            a1 * a1 * sB1 * cB1 * cB1 / (2 * P * m1 * m1 * nu3) +
            a1 * a2 * cA / (P * nu2 * n2) -
            a1 * a2 * (d - 1) * sA * cA / (P * nu2 * n2 * n2) +
            a1 * sB1 * cB1 / (P * m1 * m1 * nu2) -
            a2 * a2 / (2 * P * nu2 * n2) +
            a2 * a2 * (d - 1) * sA / (2 * P * nu2 * n2 * n2) +
            (d - 1) * sA / (2 * P) + 0.5 - (d - 1) * sB2 / (2 * P * nu) -
            sB1 / (2 * P * nu) - sB1 / (2 * P * m1 * m1 * nu);

  T(0, 1) = a1 * a1 * d * cA / (2 * P * nu2 * n2) -
            a1 * a1 * d * sA * cA / (2 * P * nu2 * n2 * n2) -
            a1 * a2 * d / (P * nu2 * n2) +
            a1 * a2 * d * sA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * d * sB1 / (2 * P * nu3) -
            a1 * a2 * d * sB1 * cB1 * cB1 / (2 * P * m1 * m1 * nu3) -
            a1 * a2 * (d * d - d) * sA / (2 * P * nu2) -
            a1 * a2 * (d * d - 2 * d) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * (d * d - d) * sA * cA * cA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * (d * d - d) * sB2 / (2 * P * nu3) -
            a1 * a2 * (d * d - d) * sB2 * cB2 * cB2 / (2 * P * m2 * m2 * nu3) +
            a1 * d * sB2 * cB2 / (2 * P * m2 * m2 * nu2) +
            a2 * a2 * d * cA / (2 * P * nu2 * n2) +
            a2 * a2 * (d * d - 2 * d) * sA / (2 * P * nu2 * n2 * n2) -
            a2 * a2 * (d * d - d) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a2 * d * sB1 * cB1 / (2 * P * m1 * m1 * nu2) + A * d / (2 * P) -
            d / 2.0;

  T(0, 2) = -a1 * a1 * (d - 2) * cA / (2 * P * nu2 * n2) -
            a1 * a1 * (d - 2) * sA * cA / (2 * P * nu2 * n2 * n2) -
            a1 * a2 * (d * d - 3 * d + 2) * sA / (2 * P * nu2) +
            a1 * a2 * (d - 2) * cA / (P * nu2 * n2) +
            a1 * a2 * (d - 2) * sA / (2 * P * nu2 * n2 * n2) -
            a1 * a2 * (d * d - 4 * d + 4) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * (d * d - 3 * d + 2) * sA * cA * cA /
                (2 * P * nu2 * n2 * n2) +
            a1 * a2 * (d - 2) * sB1 / (2 * P * nu3) +
            a1 * a2 * (d * d - 3 * d + 2) * sB2 / (2 * P * nu3) -
            a1 * a2 * (d * d - 3 * d + 2) * sB2 * cB2 * cB2 /
                (2 * P * m2 * m2 * nu3) -
            a1 * a2 * (d - 2) * sB1 * cB1 * cB1 / (2 * P * m1 * m1 * nu3) +
            a1 * (d - 2) * sB2 * cB2 / (2 * P * m2 * m2 * nu2) +
            a2 * a2 * (d - 2) * cA / (2 * P * nu2 * n2) -
            a2 * a2 * (d - 2) / (P * nu2 * n2) +
            a2 * a2 * (d * d - 4 * d + 4) * sA / (2 * P * nu2 * n2 * n2) -
            a2 * a2 * (d * d - 3 * d + 2) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a2 * (d - 2) * sB1 * cB1 / (2 * P * m1 * m1 * nu2) -
            A * (d - 2) / (2 * P) + d / 2.0 - 1.0;

  T(0, 3) = a1 * (d - 2) * sA / (2 * P) + a1 -
            a1 * (d - 1) * sB2 / (2 * P * nu) - a1 * sB1 / (2 * P * nu) -
            a2 * A * (d - 2) / (2 * P) + a2 * (d - 2) / 2.0 + B1 / (2 * P) -
            0.5;

  T(1, 0) = a1 * a1 * cA / (4 * P * nu2 * n2) -
            a1 * a1 * sA * cA / (4 * P * nu2 * n2 * n2) -
            a1 * a2 * (d - 1) * sA / (4 * P * nu2) -
            a1 * a2 / (2 * P * nu2 * n2) -
            a1 * a2 * (d - 2) * sA * cA / (4 * P * nu2 * n2 * n2) +
            a1 * a2 * (d - 1) * sA * cA * cA / (4 * P * nu2 * n2 * n2) +
            a1 * a2 * sA / (4 * P * nu2 * n2 * n2) +
            a1 * a2 * (d - 1) * sB2 / (4 * P * nu3) +
            a1 * a2 * sB1 / (4 * P * nu3) -
            a1 * a2 * (d - 1) * sB2 * cB2 * cB2 / (4 * P * m2 * m2 * nu3) -
            a1 * a2 * sB1 * cB1 * cB1 / (4 * P * m1 * m1 * nu3) +
            a1 * sB2 * cB2 / (4 * P * m2 * m2 * nu2) +
            a2 * a2 * cA / (4 * P * nu2 * n2) +
            a2 * a2 * (d - 2) * sA / (4 * P * nu2 * n2 * n2) -
            a2 * a2 * (d - 1) * sA * cA / (4 * P * nu2 * n2 * n2) +
            a2 * sB1 * cB1 / (4 * P * m1 * m1 * nu2) + A / (4 * P) - 0.25;

  T(1, 1) = -a1 * a1 / (2 * P * nu2 * n2) +
            a1 * a1 * sA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * d * cA / (2 * P * nu2 * n2) -
            a1 * a2 * d * sA * cA / (2 * P * nu2 * n2 * n2) -
            a1 * a2 * (d - 2) / (2 * P * nu2 * n2) +
            a1 * a2 * (d - 2) * sA / (2 * P * nu2 * n2 * n2) +
            a2 * a2 * d * sB1 / (4 * P * nu3) -
            a2 * a2 * d * sB1 * cB1 * cB1 / (4 * P * m1 * m1 * nu3) -
            a2 * a2 * (d * d - d) * sA / (4 * P * nu2) -
            a2 * a2 / (2 * P * nu2 * n2) -
            a2 * a2 * (d * d - 2 * d) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a2 * a2 * (d * d - d) * sA * cA * cA / (4 * P * nu2 * n2 * n2) +
            a2 * a2 * (d * d - 3 * d + 2) * sA / (4 * P * nu2 * n2 * n2) +
            a2 * a2 * (d * d - d) * sB2 / (4 * P * nu3) -
            a2 * a2 * (d * d - d) * sB2 * cB2 * cB2 / (4 * P * m2 * m2 * nu3) +
            a2 * d * sB2 * cB2 / (2 * P * m2 * m2 * nu2) -
            A * (d - 2) / (4 * P) + d / 4.0 + (d - 1) * sA / (2 * P) -
            (d - 1) * sB2 / (2 * P * nu) - sB1 / (2 * P * nu) -
            sB2 / (2 * P * m2 * m2 * nu);

  T(1, 2) = -a1 * a2 * (d - 2) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * (d - 2) * sA / (2 * P * nu2 * n2 * n2) -
            a2 * a2 * (d * d - 3 * d + 2) * sA / (4 * P * nu2) +
            a2 * a2 * (d - 2) * cA / (2 * P * nu2 * n2) -
            a2 * a2 * (d - 2) / (2 * P * nu2 * n2) +
            a2 * a2 * (d * d - 5 * d + 6) * sA / (4 * P * nu2 * n2 * n2) -
            a2 * a2 * (d * d - 4 * d + 4) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a2 * a2 * (d * d - 3 * d + 2) * sA * cA * cA /
                (4 * P * nu2 * n2 * n2) +
            a2 * a2 * (d - 2) * sB1 / (4 * P * nu3) +
            a2 * a2 * (d * d - 3 * d + 2) * sB2 / (4 * P * nu3) -
            a2 * a2 * (d * d - 3 * d + 2) * sB2 * cB2 * cB2 /
                (4 * P * m2 * m2 * nu3) -
            a2 * a2 * (d - 2) * sB1 * cB1 * cB1 / (4 * P * m1 * m1 * nu3) +
            a2 * (d - 2) * sB2 * cB2 / (2 * P * m2 * m2 * nu2) +
            A * (d - 2) / (4 * P) - d / 4.0 + 0.5;

  T(1, 3) = -a2 * A * (d - 2) / (4 * P) + a2 * d / 4.0 +
            a2 * (d - 2) * sA / (4 * P) - a2 * (d - 1) * sB2 / (4 * P * nu) -
            a2 * sB1 / (4 * P * nu) + B2 / (4 * P) - 0.25;

  T(2, 0) = -a1 * a1 * cA / (4 * P * nu2 * n2) -
            a1 * a1 * sA * cA / (4 * P * nu2 * n2 * n2) -
            a1 * a2 * (d - 1) * sA / (4 * P * nu2) +
            a1 * a2 * cA / (2 * P * nu2 * n2) -
            a1 * a2 * (d - 2) * sA * cA / (4 * P * nu2 * n2 * n2) +
            a1 * a2 * (d - 1) * sA * cA * cA / (4 * P * nu2 * n2 * n2) +
            a1 * a2 * sA / (4 * P * nu2 * n2 * n2) +
            a1 * a2 * (d - 1) * sB2 / (4 * P * nu3) +
            a1 * a2 * sB1 / (4 * P * nu3) -
            a1 * a2 * (d - 1) * sB2 * cB2 * cB2 / (4 * P * m2 * m2 * nu3) -
            a1 * a2 * sB1 * cB1 * cB1 / (4 * P * m1 * m1 * nu3) +
            a1 * sB2 * cB2 / (4 * P * m2 * m2 * nu2) +
            a2 * a2 * cA / (4 * P * nu2 * n2) - a2 * a2 / (2 * P * nu2 * n2) +
            a2 * a2 * (d - 2) * sA / (4 * P * nu2 * n2 * n2) -
            a2 * a2 * (d - 1) * sA * cA / (4 * P * nu2 * n2 * n2) +
            a2 * sB1 * cB1 / (4 * P * m1 * m1 * nu2) - A / (4 * P) + 0.25;

  T(2, 1) = -a1 * a2 * d * sA * cA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * d * sA / (2 * P * nu2 * n2 * n2) +
            a2 * a2 * d * cA / (2 * P * nu2 * n2) -
            a2 * a2 * d / (2 * P * nu2 * n2) +
            a2 * a2 * d * sB1 / (4 * P * nu3) -
            a2 * a2 * d * sB1 * cB1 * cB1 / (4 * P * m1 * m1 * nu3) -
            a2 * a2 * (d * d - d) * sA / (4 * P * nu2) +
            a2 * a2 * (d * d - 3 * d) * sA / (4 * P * nu2 * n2 * n2) -
            a2 * a2 * (d * d - 2 * d) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a2 * a2 * (d * d - d) * sA * cA * cA / (4 * P * nu2 * n2 * n2) +
            a2 * a2 * (d * d - d) * sB2 / (4 * P * nu3) -
            a2 * a2 * (d * d - d) * sB2 * cB2 * cB2 / (4 * P * m2 * m2 * nu3) +
            a2 * d * sB2 * cB2 / (2 * P * m2 * m2 * nu2) + A * d / (4 * P) -
            d / 4.0;

  T(2, 2) = a1 * a1 / (2 * P * nu2 * n2) +
            a1 * a1 * sA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * (d - 4) / (2 * P * nu2 * n2) -
            a1 * a2 * (d - 2) * cA / (2 * P * nu2 * n2) +
            a1 * a2 * (d - 4) * sA / (2 * P * nu2 * n2 * n2) -
            a1 * a2 * (d - 2) * sA * cA / (2 * P * nu2 * n2 * n2) -
            a2 * a2 * (d * d - 3 * d + 2) * sA / (4 * P * nu2) -
            a2 * a2 * (d - 2.5) / (P * nu2 * n2) +
            a2 * a2 * (d - 2) * cA / (P * nu2 * n2) +
            a2 * a2 * (d * d - 5 * d + 8) * sA / (4 * P * nu2 * n2 * n2) -
            a2 * a2 * (d * d - 4 * d + 4) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a2 * a2 * (d * d - 3 * d + 2) * sA * cA * cA /
                (4 * P * nu2 * n2 * n2) +
            a2 * a2 * (d - 2) * sB1 / (4 * P * nu3) +
            a2 * a2 * (d * d - 3 * d + 2) * sB2 / (4 * P * nu3) -
            a2 * a2 * (d * d - 3 * d + 2) * sB2 * cB2 * cB2 /
                (4 * P * m2 * m2 * nu3) -
            a2 * a2 * (d - 2) * sB1 * cB1 * cB1 / (4 * P * m1 * m1 * nu3) +
            a2 * (d - 2) * sB2 * cB2 / (2 * P * m2 * m2 * nu2) -
            A * (d - 4) / (4 * P) + d / 4.0 + (d - 1) * sA / (2 * P) - 0.5 -
            (d - 1) * sB2 / (2 * P * nu) - sB1 / (2 * P * nu) -
            sB2 / (2 * P * m2 * m2 * nu);

  T(2, 3) = -a1 * A / (2 * P) + a1 / 2.0 - a2 * A * (d - 4) / (4 * P) +
            a2 * (d - 2) * sA / (4 * P) + a2 * (d - 2) / 4.0 -
            a2 * (d - 1) * sB2 / (4 * P * nu) - a2 * sB1 / (4 * P * nu) +
            B2 / (4 * P) - 0.25;

  T(3, 0) = T(0, 3);

  T(3, 1) = -a2 * A * (d * d - 2 * d) / (2 * P) + a2 * d * d / 2.0 -
            a2 * d * sB1 / (2 * P * nu) + a2 * (d * d - 2 * d) * sA / (2 * P) -
            a2 * (d * d - d) * sB2 / (2 * P * nu) + B2 * d / (2 * P) - d / 2.0;

  T(3, 2) = -a1 * A * (d - 2) / P + a1 * (d - 2) -
            a2 * A * (d * d - 6 * d + 8) / (2 * P) +
            a2 * (d * d - 4 * d + 4) * sA / (2 * P) +
            a2 * (d * d - 4 * d + 4) / 2.0 - a2 * (d - 2) * sB1 / (2 * P * nu) -
            a2 * (d * d - 3 * d + 2) * sB2 / (2 * P * nu) +
            B2 * (d - 2) / (2 * P) - d / 2.0 + 1.0;

  T(3, 3) = A * nu2 * cA / (2 * P) - nu2 * sA / (2 * P) - nu2 * cA / 2.0 +
            nu2 / 2.0;

  return T;
}

Mat diag_t_block(const ReducedPoint& r) {
  const DiagGeometry g = diag_geometry(r);
  const double a1 = g.a1, a2 = g.a2, d = g.d, nu = g.nu;
  const double A = g.A, sA = g.sA, cA = g.cA;
  const double B1 = g.B1, sB1 = g.sB1, cB1 = g.cB1;
  const double B2 = g.B2, sB2 = g.sB2, cB2 = g.cB2;
  const double n2 = sA, m1 = sB1, m2 = sB2;
  const double nu2 = nu * nu, nu3 = nu * nu * nu;

  Mat T(3, 3);

  T(0, 0) = -a1 * a1 * (d - 1) * sA / (2 * P * nu2) +
            a1 * a1 * (d - 1) / (2 * P * nu2 * n2) +
            a1 * a1 * (d - 1) * sA * cA * cA / (2 * P * nu2 * n2 * n2) +
            a1 * a1 * (d - 1) * sB2 / (2 * P * nu3) +
            a1 * a1 * sB1 / (2 * P * nu3) -
            a1 * a1 * (d - 1) * sB2 * cB2 * cB2 / (2 * P * m2 * m2 * nu3) -
            a1 * a1 * sB1 * cB1 * cB1 / (2 * P * m1 * m1 * nu3) -
            a1 * a2 * (d - 1) * cA / (P * nu2 * n2) -
            a1 * a2 * (d - 1) * sA * cA / (P * nu2 * n2 * n2) +
            a1 * sB1 * cB1 / (P * m1 * m1 * nu2) +
            a2 * a2 * (d - 1) / (2 * P * nu2 * n2) +
            a2 * a2 * (d - 1) * sA / (2 * P * nu2 * n2 * n2) +
            (d - 1) * sA / (2 * P) + 0.5 - (d - 1) * sB2 / (2 * P * nu) -
            sB1 / (2 * P * nu) - sB1 / (2 * P * m1 * m1 * nu);

  T(0, 1) = -a1 * a1 * (d - 1) * cA / (2 * P * nu2 * n2) -
            a1 * a1 * (d - 1) * sA * cA / (2 * P * nu2 * n2 * n2) -
            a1 * a2 * (d * d - 2 * d + 1) * sA / (2 * P * nu2) +
            a1 * a2 * (d * d - d) / (2 * P * nu2 * n2) -
            a1 * a2 * (d * d - 3 * d + 2) * cA / (2 * P * nu2 * n2) +
            a1 * a2 * (d - 1) * sA / (2 * P * nu2 * n2 * n2) -
            a1 * a2 * (d * d - 3 * d + 2) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * (d * d - 2 * d + 1) * sA * cA * cA /
                (2 * P * nu2 * n2 * n2) +
            a1 * a2 * (d - 1) * sB1 / (2 * P * nu3) +
            a1 * a2 * (d * d - 2 * d + 1) * sB2 / (2 * P * nu3) -
            a1 * a2 * (d * d - 2 * d + 1) * sB2 * cB2 * cB2 /
                (2 * P * m2 * m2 * nu3) -
            a1 * a2 * (d - 1) * sB1 * cB1 * cB1 / (2 * P * m1 * m1 * nu3) +
            a1 * (d - 1) * sB2 * cB2 / (2 * P * m2 * m2 * nu2) +
            a2 * a2 * (d * d - 3 * d + 2) / (2 * P * nu2 * n2) -
            a2 * a2 * (d * d - 2 * d + 1) * cA / (2 * P * nu2 * n2) +
            a2 * a2 * (d * d - 3 * d + 2) * sA / (2 * P * nu2 * n2 * n2) -
            a2 * a2 * (d * d - 2 * d + 1) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a2 * (d - 1) * sB1 * cB1 / (2 * P * m1 * m1 * nu2) -
            A * (d - 1) / (2 * P) + d / 2.0 - 0.5;

  T(0, 2) = a1 * (d - 1) * sA / P + a1 - a1 * (d - 1) * sB2 / (2 * P * nu) -
            a1 * sB1 / (2 * P * nu) - a2 * A * (d - 1) / P + a2 * (d - 1) +
            B1 / (2 * P) - 0.5;

  T(1, 0) = -a1 * a1 * cA / (2 * P * nu2 * n2) -
            a1 * a1 * sA * cA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * d / (2 * P * nu2 * n2) -
            a1 * a2 * (d - 1) * sA / (2 * P * nu2) -
            a1 * a2 * (d - 2) * cA / (2 * P * nu2 * n2) -
            a1 * a2 * (d - 2) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * (d - 1) * sA * cA * cA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * sA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * (d - 1) * sB2 / (2 * P * nu3) +
            a1 * a2 * sB1 / (2 * P * nu3) -
            a1 * a2 * (d - 1) * sB2 * cB2 * cB2 / (2 * P * m2 * m2 * nu3) -
            a1 * a2 * sB1 * cB1 * cB1 / (2 * P * m1 * m1 * nu3) +
            a1 * sB2 * cB2 / (2 * P * m2 * m2 * nu2) +
            a2 * a2 * (d - 2) / (2 * P * nu2 * n2) -
            a2 * a2 * (d - 1) * cA / (2 * P * nu2 * n2) +
            a2 * a2 * (d - 2) * sA / (2 * P * nu2 * n2 * n2) -
            a2 * a2 * (d - 1) * sA * cA / (2 * P * nu2 * n2 * n2) +
            a2 * sB1 * cB1 / (2 * P * m1 * m1 * nu2) - A / (2 * P) + 0.5;

  T(1, 1) = a1 * a1 / (2 * P * nu2 * n2) +
            a1 * a1 * sA / (2 * P * nu2 * n2 * n2) +
            a1 * a2 * (d - 2) / (P * nu2 * n2) -
            a1 * a2 * (d - 1) * cA / (P * nu2 * n2) +
            a1 * a2 * (d - 2) * sA / (P * nu2 * n2 * n2) -
            a1 * a2 * (d - 1) * sA * cA / (P * nu2 * n2 * n2) -
            a2 * a2 * (d * d - 2 * d + 1) * sA / (2 * P * nu2) -
            a2 * a2 * (d * d - 3 * d + 2) * cA / (P * nu2 * n2) +
            a2 * a2 * (d * d - 3 * d + 2.5) / (P * nu2 * n2) +
            a2 * a2 * (d * d - 4 * d + 4) * sA / (2 * P * nu2 * n2 * n2) -
            a2 * a2 * (d * d - 3 * d + 2) * sA * cA / (P * nu2 * n2 * n2) +
            a2 * a2 * (d * d - 2 * d + 1) * sA * cA * cA /
                (2 * P * nu2 * n2 * n2) +
            a2 * a2 * (d - 1) * sB1 / (2 * P * nu3) +
            a2 * a2 * (d * d - 2 * d + 1) * sB2 / (2 * P * nu3) -
            a2 * a2 * (d * d - 2 * d + 1) * sB2 * cB2 * cB2 /
                (2 * P * m2 * m2 * nu3) -
            a2 * a2 * (d - 1) * sB1 * cB1 * cB1 / (2 * P * m1 * m1 * nu3) +
            a2 * (d - 1) * sB2 * cB2 / (P * m2 * m2 * nu2) -
            A * (d - 2) / (2 * P) + d / 2.0 + (d - 1) * sA / (2 * P) - 0.5 -
            (d - 1) * sB2 / (2 * P * nu) - sB1 / (2 * P * nu) -
            sB2 / (2 * P * m2 * m2 * nu);

  T(1, 2) = -a1 * A / P + a1 - a2 * A * (d - 2) / P +
            a2 * (d - 1) * sA / P + a2 * (d - 1) -
            a2 * (d - 1) * sB2 / (2 * P * nu) - a2 * sB1 / (2 * P * nu) +
            B2 / (2 * P) - 0.5;

  T(2, 0) = T(0, 2);

  T(2, 1) = -a1 * A * (d - 1) / P + a1 * (d - 1) -
            a2 * A * (d * d - 3 * d + 2) / P +
            a2 * (d * d - 2 * d + 1) * sA / P + a2 * (d * d - 2 * d + 1) -
            a2 * (d - 1) * sB1 / (2 * P * nu) -
            a2 * (d * d - 2 * d + 1) * sB2 / (2 * P * nu) +
            B2 * (d - 1) / (2 * P) - d / 2.0 + 0.5;

  T(2, 2) = -A * nu2 * (d - 1) * cA / (2 * P) + nu2 * (d - 1) * sA / (2 * P) +
            nu2 * (d - 1) * cA / 2.0 + nu2 / 2.0;

  return T;
}

}  // namespace landscape
