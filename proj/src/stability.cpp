// Minimal non-gauge Hessian eigenvalue of a block-family point at real
// dimension d, and the bisection locating where it changes sign.
//
// At integer d the Hessian is dense and explicit.  At fractional d the
// spectrum is defined by dimension continuation: restrict the Hessian to the
// subspace fixed by the permutations that leave two marked large-block
// indices (and the block split) alone.  In an orbit-indicator basis of that
// subspace every compressed entry is a polynomial in the dimension once the
// scalar kernel inputs (row norms and angles, which close over the reduced
// coefficients at the *target* d) are held fixed.  Assembling the compressed
// matrix at eight integer host dimensions therefore determines those
// polynomials exactly, and evaluating them at the real target d gives the
// continued operator.  At integer targets this reproduces the dense result;
// the fixed subspace meets every eigenvalue cluster (each irreducible in the
// decomposition retains a fixed vector), so its minimum equals the global
// non-gauge minimum.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "landscape/loss.hpp"
#include "landscape/reduced.hpp"
#include "landscape/spectrum.hpp"
#include "landscape/symmetry.hpp"

namespace landscape {

namespace {

struct FrozenEval {
  double value;
  Vec grad_u;
  Mat hess_uu;
  Mat hess_uv;
};

// Kernel derivatives with the norms and the angle supplied instead of
// measured; identical formulas to kernel_eval.
FrozenEval frozen_eval(const Vec& u, const Vec& v, double nu, double nv,
                       double th) {
  const int n = static_cast<int>(u.size());
  const double st = std::sin(th), ct = std::cos(th);
  const Vec uh = u / nu, vh = v / nv;

  FrozenEval e;
  e.value = nu * nv / (2.0 * M_PI) * (st + (M_PI - th) * ct);
  e.grad_u = (nv * st * uh + (M_PI - th) * v) / (2.0 * M_PI);
  const Mat I = Mat::Identity(n, n);
  if (st < 1e-8) {
    e.hess_uu = (nv * st / (2.0 * M_PI * nu)) * (I - uh * uh.transpose());
    e.hess_uv = ((M_PI - th) * I + st * (uh * vh.transpose())) / (2.0 * M_PI);
  } else {
    const Vec nhat = (vh - ct * uh) / st;
    const Vec mhat = (uh - ct * vh) / st;
    e.hess_uu = (nv * st / (2.0 * M_PI * nu)) *
                (I - uh * uh.transpose() + nhat * nhat.transpose());
    e.hess_uv = ((M_PI - th) * I +
                 st * (uh * vh.transpose() + nhat * mhat.transpose())) /
                (2.0 * M_PI);
  }
  return e;
}

// Full (W, alpha) Hessian of the template point at host dimension D, with
// every norm and angle frozen to the target AngleSet.  Exact when D equals
// the (integer) target dimension.
Mat frozen_hessian(Family f, const Vec& a, int D, const AngleSet& s) {
  const int p = family_p(f);
  const int t = D - p;
  const Mat W = template_matrix(f, D, a);
  const int n = D * D + D;
  const FlatIndex idx(D, D);

  auto row_norm = [&](int i) { return i < t ? s.nu_t : s.nu_b; };
  auto ss_angle = [&](int i, int j) {
    if (i == j) return 0.0;
    const bool ti = i < t, tj = j < t;
    if (ti && tj) return s.a_tt;
    if (!ti && !tj) return s.a_bb;
    return s.a_tb;
  };
  auto st_angle = [&](int i, int j) {
    if (i < t) {
      if (j == i) return s.b_t_own;
      return j < t ? s.b_t_other : s.b_t_small;
    }
    if (j == i) return s.b_b_own;
    return j < t ? s.b_b_large : s.b_b_other;
  };
  auto axis = [&](int j) {
    Vec e = Vec::Zero(D);
    e[j] = 1.0;
    return e;
  };

  std::vector<std::vector<FrozenEval>> ww(D), wv(D);
  for (int i = 0; i < D; ++i) {
    ww[i].reserve(D);
    wv[i].reserve(D);
    for (int j = 0; j < D; ++j) {
      ww[i].push_back(frozen_eval(W.row(i), W.row(j), row_norm(i),
                                  row_norm(j), ss_angle(i, j)));
      wv[i].push_back(
          frozen_eval(W.row(i), axis(j), row_norm(i), 1.0, st_angle(i, j)));
    }
  }

  Mat H = Mat::Zero(n, n);
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < D; ++j) {
      Mat B;
      if (i != j) {
        B = ww[i][j].hess_uv;
      } else {
        B = ww[i][i].hess_uu + ww[i][i].hess_uv;
        for (int l = 0; l < D; ++l) {
          if (l != i) B += ww[i][l].hess_uu;
          B -= wv[i][l].hess_uu;
        }
      }
      for (int r = 0; r < D; ++r)
        for (int c = 0; c < D; ++c) H(idx.w(i, r), idx.w(j, c)) = B(r, c);
    }
    for (int j = 0; j < D; ++j) {
      Vec col = ww[i][j].grad_u;
      if (i == j) {
        for (int l = 0; l < D; ++l) col += ww[i][l].grad_u - wv[i][l].grad_u;
      }
      for (int r = 0; r < D; ++r) {
        H(idx.w(i, r), idx.a(j)) = col[r];
        H(idx.a(j), idx.w(i, r)) = col[r];
      }
    }
    for (int j = 0; j < D; ++j) H(idx.a(i), idx.a(j)) = ww[i][j].value;
  }
  return H;
}

// Coordinate orbits of the subgroup fixing the two marked large-block
// indices {0, 1} and the block split.  Classes: 0, 1 (marked singletons),
// 2 (rest of the large block, size d-p-2), 3 (small block, size p).
struct Orbit {
  bool is_alpha = false;
  int rc = 0, cc = 0;
  bool diag = false;  // same row/column index (only when rc == cc)
};

std::vector<Orbit> make_orbits(int p) {
  std::vector<int> classes = {0, 1, 2};
  if (p >= 1) classes.push_back(3);
  auto multi = [p](int c) { return c == 2 || (c == 3 && p >= 2); };

  std::vector<Orbit> orbits;
  for (int rc : classes)
    for (int cc : classes) {
      if (rc == cc) {
        orbits.push_back({false, rc, cc, true});
        if (multi(rc)) orbits.push_back({false, rc, cc, false});
      } else {
        orbits.push_back({false, rc, cc, false});
      }
    }
  for (int c : classes) orbits.push_back({true, c, -1, false});
  return orbits;
}

double class_size(int c, double d, int p) {
  if (c == 0 || c == 1) return 1.0;
  if (c == 2) return d - p - 2.0;
  return static_cast<double>(p);
}

double orbit_size(const Orbit& o, double d, int p) {
  if (o.is_alpha) return class_size(o.rc, d, p);
  const double sr = class_size(o.rc, d, p);
  if (o.rc == o.cc) return o.diag ? sr : sr * (sr - 1.0);
  return sr * class_size(o.cc, d, p);
}

// 0/1 indicator of the orbit in the flat (W, alpha) layout at host D.
Vec orbit_indicator(const Orbit& o, int D, int p) {
  const int t = D - p;
  auto cls = [&](int i) {
    if (i == 0) return 0;
    if (i == 1) return 1;
    return i < t ? 2 : 3;
  };
  const FlatIndex idx(D, D);
  Vec v = Vec::Zero(idx.size());
  if (o.is_alpha) {
    for (int i = 0; i < D; ++i)
      if (cls(i) == o.rc) v[idx.a(i)] = 1.0;
    return v;
  }
  for (int i = 0; i < D; ++i) {
    if (cls(i) != o.rc) continue;
    for (int j = 0; j < D; ++j) {
      if (cls(j) != o.cc) continue;
      if (o.rc == o.cc && ((i == j) != o.diag)) continue;
      v[idx.w(i, j)] = 1.0;
    }
  }
  return v;
}

// Template coefficient occupying positions of a W orbit.
double orbit_template_value(const Orbit& o, const Vec& a) {
  const bool rt = o.rc <= 2, ct = o.cc <= 2;
  if (rt && ct) return o.diag ? a[0] : a[1];
  if (rt) return a[2];
  if (ct) return a[3];
  return o.diag ? a[4] : a[5];
}

// Continued compressed Hessian at real d: Lagrange interpolation in the host
// dimension of the orbit-compressed frozen Hessian.
double continued_min_eig(const ReducedPoint& r) {
  const Family f = r.family;
  const int p = r.p();
  if (p >= 2)
    throw std::invalid_argument(
        "dimension continuation marks two large-block indices only, which "
        "covers every eigenvalue cluster just for splits of size <= 1");
  const AngleSet s = reduced_angles(r);
  const std::vector<Orbit> orbits = make_orbits(p);
  const int q = static_cast<int>(orbits.size());

  constexpr int kNodes = 8;
  const int D0 = p + 8;
  std::vector<Mat> N(kNodes);
  std::vector<double> node(kNodes);
  for (int k = 0; k < kNodes; ++k) {
    const int D = D0 + k;
    node[k] = D;
    const Mat H = frozen_hessian(f, r.coeffs, D, s);
    Mat B(H.rows(), q);
    for (int j = 0; j < q; ++j) B.col(j) = orbit_indicator(orbits[j], D, p);
    N[k] = B.transpose() * H * B;
  }

  // Lagrange weights at the target dimension (compressed entries are
  // polynomials of degree <= 5 in the host dimension; 8 nodes are exact).
  Mat Nd = Mat::Zero(q, q);
  for (int k = 0; k < kNodes; ++k) {
    double lk = 1.0;
    for (int m = 0; m < kNodes; ++m)
      if (m != k) lk *= (r.d - node[m]) / (node[k] - node[m]);
    Nd += lk * N[k];
  }

  // Orthonormalize the (mutually disjoint) orbit indicators by their sizes
  // at the target dimension.
  Vec inv_sqrt(q);
  for (int j = 0; j < q; ++j) {
    const double sz = orbit_size(orbits[j], r.d, p);
    if (sz <= 1e-9)
      throw std::domain_error(
          "dimension continuation needs every orbit size positive (d too "
          "small for the split)");
    inv_sqrt[j] = 1.0 / std::sqrt(sz);
  }
  Mat Nt = inv_sqrt.asDiagonal() * Nd * inv_sqrt.asDiagonal();
  Nt = 0.5 * (Nt + Nt.transpose()).eval();

  // Scaling tangents, summed over each index class, written in the same
  // normalized coordinates; exact null directions at the critical point.
  std::vector<int> classes = {0, 1, 2};
  if (p >= 1) classes.push_back(3);
  Mat G(q, static_cast<int>(classes.size()));
  for (size_t c = 0; c < classes.size(); ++c)
    for (int j = 0; j < q; ++j) {
      double val = 0.0;
      if (orbits[j].rc == classes[c])
        val = orbits[j].is_alpha ? -1.0
                                 : orbit_template_value(orbits[j], r.coeffs);
      G(j, static_cast<int>(c)) = val / inv_sqrt[j];  // times sqrt(size)
    }

  const Eigen::HouseholderQR<Mat> qr(G);
  const Mat Q = qr.householderQ();
  const Mat C = Q.rightCols(q - static_cast<int>(classes.size()));
  const Mat M = (C.transpose() * Nt * C).eval();
  const Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.transpose()));
  return es.eigenvalues().minCoeff();
}

double dense_min_eig(const ReducedPoint& r) {
  ReducedPoint ri = r;
  ri.d = std::round(r.d);
  const NetworkPair pt = lift(ri);
  const Mat H = hessian(pt);
  const auto tang = gauge_tangents(pt);
  const int n = static_cast<int>(H.rows());
  Mat G(n, static_cast<int>(tang.size()));
  for (size_t i = 0; i < tang.size(); ++i)
    G.col(static_cast<int>(i)) = tang[i];
  const Eigen::HouseholderQR<Mat> qr(G);
  const Mat Q = qr.householderQ();
  const Mat C = Q.rightCols(n - static_cast<int>(tang.size()));
  const Mat M = (C.transpose() * H * C).eval();
  const Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.transpose()));
  return es.eigenvalues().minCoeff();
}

}  // namespace

double min_nongauge_eigenvalue(const ReducedPoint& r) {
  const double rd = std::round(r.d);
  if (std::abs(r.d - rd) < 1e-9 && rd >= r.p() + 2) return dense_min_eig(r);
  return continued_min_eig(r);
}

double stability_threshold(Branch b, double d_lo, double d_hi, double tol) {
  auto f = [&](double d) {
    return min_nongauge_eigenvalue(solve_branch(b, d));
  };
  double flo = f(d_lo), fhi = f(d_hi);
  if (flo == 0.0) return d_lo;
  if (fhi == 0.0) return d_hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::runtime_error(
        "minimal non-gauge eigenvalue does not change sign on the interval "
        "(endpoints " +
        std::to_string(flo) + ", " + std::to_string(fhi) + ")");
  while (d_hi - d_lo > tol) {
    const double mid = 0.5 * (d_lo + d_hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      d_lo = mid;
      flo = fm;
    } else {
      d_hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (d_lo + d_hi);
}

}  // namespace landscape
