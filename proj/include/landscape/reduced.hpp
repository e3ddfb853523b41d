#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "landscape/families.hpp"
#include "landscape/types.hpp"

namespace landscape {

// Representative norms, angles, and sines of a block-family point at real
// dimension d.  The large block has d - p rows, the small block p rows; all
// closures are polynomial in (coefficients, d) so d may be fractional.
struct AngleSet {
  int p = 0;
  double nu_t = 0.0;  // norm of a large-block row
  double nu_b = 0.0;  // norm of a small-block row (p >= 1)
  double mu = 1.0;    // teacher row norm (identity teacher)

  // Angles between student rows.
  double a_tt = 0.0;  // two distinct large-block rows
  double a_tb = 0.0;  // large-block row vs small-block row (p >= 1)
  double a_bb = 0.0;  // two distinct small-block rows (p >= 2)

  // Angles between student rows and teacher rows.
  double b_t_own = 0.0;    // large row vs its matched teacher axis (cos a1/nu)
  double b_t_other = 0.0;  // large row vs another large teacher axis (a2/nu)
  double b_t_small = 0.0;  // large row vs a small-block teacher axis (a3/nu)
  double b_b_large = 0.0;  // small row vs a large teacher axis (a4/nu)
  double b_b_own = 0.0;    // small row vs its matched teacher axis (a5/nu)
  double b_b_other = 0.0;  // small row vs another small teacher axis (a6/nu)

  double sin_of(double angle) const { return std::sin(angle); }
};

// Closed-form angle closure of a reduced point (throws std::domain_error on
// non-positive squared norms at extreme fractional parameters).
AngleSet reduced_angles(const ReducedPoint& r);

// Gradient of the loss in block coordinates at real d (the chain-rule sum of
// the matrix gradient over each coefficient's positions), via the explicit
// per-family expressions.
Vec reduced_grad(const ReducedPoint& r);

// Loss value at real d via pair-class counting (counts polynomial in d).
double reduced_loss(const ReducedPoint& r);

// Damped Newton with finite-difference Jacobian; d held fixed.
struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 100;
  double fd_step = 1e-7;
  double max_condition = 1e12;
};
ReducedPoint newton_solve(const ReducedPoint& r0, double tol = 1e-12,
                          int max_iter = 100);
ReducedPoint newton_solve(const ReducedPoint& r0, const NewtonOptions& opt);

// Predictor-corrector continuation from a solved seed at seed.d to d_end,
// sampling `steps` + 1 points (inclusive).  Step halving down to a floor of
// |d_end - seed.d| / 2^10; throws on failure at the floor.
std::vector<ReducedPoint> continue_in_d(const ReducedPoint& seed, double d_end,
                                        int steps);

// Least-squares fit of samples (d, value) to sum_m c_m d^(-e_m) over the
// given half-integer exponents e_m.
struct HalfPowerSeries {
  std::vector<double> exponents;  // e.g. 0, 0.5, 1, 1.5, ...
  Vec coeffs;
  double max_residual = 0.0;

  double eval(double d) const {
    double v = 0.0;
    for (size_t i = 0; i < exponents.size(); ++i)
      v += coeffs[static_cast<int>(i)] * std::pow(d, -exponents[i]);
    return v;
  }
};
HalfPowerSeries fit_half_series(const std::vector<std::pair<double, double>>& samples,
                                const std::vector<double>& exponents);

// Convenience: seed-and-solve a named branch at real dimension d.
ReducedPoint solve_branch(Branch b, double d, double tol = 1e-12);

}  // namespace landscape
