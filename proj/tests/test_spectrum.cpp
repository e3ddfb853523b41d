#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "landscape/loss.hpp"
#include "landscape/reduced.hpp"
#include "landscape/spectrum.hpp"
#include "landscape/symmetry.hpp"

using namespace landscape;

namespace {

constexpr double kLamX = (M_PI - 2.0) / (4.0 * M_PI);
constexpr double kLamY = (M_PI + 2.0) / (4.0 * M_PI);

ReducedPoint make_point(Family f, double d, const std::vector<double>& a) {
  ReducedPoint r;
  r.family = f;
  r.d = d;
  r.coeffs = Vec(static_cast<int>(a.size()));
  for (size_t i = 0; i < a.size(); ++i) r.coeffs[static_cast<int>(i)] = a[i];
  return r;
}

// Sorted eigenvalue comparison up to a tolerance.
void check_eigs_match(const Vec& got, const Vec& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (int i = 0; i < got.size(); ++i)
    CHECK(std::abs(got[i] - want[i]) < tol * std::max(1.0, std::abs(want[i])));
}

}  // namespace

TEST_CASE("closed-form diagonal-family blocks match the dense compression") {
  // Generic (non-critical) diagonal-family points: both evaluation routes are
  // functions of the configuration only.
  for (const auto& a : {std::vector<double>{0.9, 0.07},
                        std::vector<double>{-0.8, 0.2},
                        std::vector<double>{0.6, -0.12}}) {
    for (double d : {8.0, 10.0}) {
      ReducedPoint r = make_point(Family::FULL_DIAG, d, a);
      NetworkPair pt = lift(r);

      auto tx = transition_matrix(pt, Family::FULL_DIAG, "x_p");
      CHECK(std::abs(diag_x_eigenvalue(r) - tx.entries(0, 0)) < 1e-9);

      auto ty = transition_matrix(pt, Family::FULL_DIAG, "y_p");
      CHECK(std::abs(diag_y_eigenvalue(r) - ty.entries(0, 0)) < 1e-9);

      auto ts = transition_matrix(pt, Family::FULL_DIAG, "s_p");
      check_eigs_match(transition_eigenvalues(diag_s_block(r)),
                       transition_eigenvalues(ts.entries), 1e-8);

      auto tt = transition_matrix(pt, Family::FULL_DIAG, "t");
      check_eigs_match(transition_eigenvalues(diag_t_block(r)),
                       transition_eigenvalues(tt.entries), 1e-8);
    }
  }
}

TEST_CASE("closed-form trivial block agrees at a refined critical point") {
  ReducedPoint sol = solve_branch(Branch::kTypeA, 12);
  NetworkPair pt = lift(sol);
  auto tt = transition_matrix(pt, Family::FULL_DIAG, "t");
  check_eigs_match(transition_eigenvalues(diag_t_block(sol)),
                   transition_eigenvalues(tt.entries), 1e-8);
}

TEST_CASE("two-row-block eigenvalues at the exact global minimum") {
  const int d = 10;
  NetworkPair pt(Mat::Identity(d, d), Vec::Ones(d));
  auto tx = transition_matrix(pt, Family::FULL_DIAG, "x_p");
  CHECK(std::abs(tx.entries(0, 0) - kLamX) < 1e-12);
  auto ty = transition_matrix(pt, Family::FULL_DIAG, "y_p");
  CHECK(std::abs(ty.entries(0, 0) - kLamY) < 1e-12);
}

TEST_CASE("transition eigenvalues appear in the dense spectrum") {
  for (Branch b : {Branch::kTypeII, Branch::kTypeMII}) {
    const int d = 12;
    ReducedPoint sol = solve_branch(b, d);
    NetworkPair pt = lift(sol);
    SpectrumReport sp = full_spectrum(pt);
    const double scale = std::max(1.0, std::abs(sp.raw[sp.raw.size() - 1]));
    for (const auto& tm : all_transition_matrices(pt, branch_family(b))) {
      CHECK(tm.residual < 1e-8);
      Vec ev = transition_eigenvalues(tm.entries);
      for (int i = 0; i < ev.size(); ++i) {
        double best = 1e300;
        for (int j = 0; j < sp.raw.size(); ++j)
          best = std::min(best, std::abs(sp.raw[j] - ev[i]));
        CHECK(best < 1e-7 * scale);
      }
    }
  }
}

TEST_CASE("dense spectra reproduce the per-branch multiplicity tables") {
  for (Branch b : all_branches()) {
    TableCheck tc = spectrum_table_check(b, 12);
    CHECK(tc.multiplicities_exact);
    CHECK(tc.gauge_modes == 12);
    // Finite-d mixing of the two linearly growing eigenvalues deviates from
    // the leading-order centers by about 4.2 / sqrt(d).
    CHECK(tc.max_residual < 5.0 / std::sqrt(12.0));
    int total = 0;
    for (const auto& c : tc.clusters) total += c.multiplicity;
    CHECK(total == 12 * 12 + 12);
  }
}

TEST_CASE("expected tables count the whole parameter space") {
  for (Branch b : all_branches()) {
    for (double d : {9.0, 12.0, 16.0}) {
      int total = 0;
      for (const auto& line : expected_spectrum(b, d)) {
        CHECK(line.multiplicity > 0);
        total += line.multiplicity;
      }
      const int n = static_cast<int>(d);
      CHECK(total == n * n + n);
    }
  }
}

TEST_CASE("gauge tangents annihilate the Hessian at critical points") {
  for (Branch b : {Branch::kIdentity, Branch::kTypeII, Branch::kTypeN}) {
    const int d = 10;
    NetworkPair pt = lift(solve_branch(b, d));
    Mat H = hessian(pt);
    const double scale = H.cwiseAbs().maxCoeff();
    auto tangents = gauge_tangents(pt);
    CHECK(tangents.size() == static_cast<size_t>(d));
    for (const auto& v : tangents) {
      const double q = v.dot(H * v) / v.squaredNorm();
      CHECK(std::abs(q) < 1e-9 * scale);
    }
  }
}

TEST_CASE("dense spectrum counts gauge zeros") {
  const int d = 12;
  NetworkPair pt(Mat::Identity(d, d), Vec::Ones(d));
  SpectrumReport sp = full_spectrum(pt);
  CHECK(sp.gauge_modes == d);
  CHECK(sp.raw.size() == d * d + d);
  int total = 0;
  for (const auto& c : sp.clusters) total += c.multiplicity;
  CHECK(total == d * d + d);
}

TEST_CASE("representative compression rejects non-invariant points") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int d = 8;
  Mat W(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) W(i, j) = gauss(rng);
  NetworkPair pt(W, Vec::Ones(d));
  CHECK_THROWS(transition_matrix(pt, Family::FULL_DIAG, "s_p"));
}

TEST_CASE("dimension-continued minimum matches the dense route at integers") {
  for (Branch b : {Branch::kTypeA, Branch::kTypeII}) {
    for (int d : {8, 10}) {
      ReducedPoint exact = solve_branch(b, d);
      const double dense = min_nongauge_eigenvalue(exact);
      ReducedPoint nudged = solve_branch(b, d + 1e-7);
      const double continued = min_nongauge_eigenvalue(nudged);
      CHECK(std::abs(dense - continued) < 1e-6);
    }
  }
}

TEST_CASE("saddle-to-minimum transition of the five-coefficient branch") {
  CHECK(min_nongauge_eigenvalue(solve_branch(Branch::kTypeII, 3)) < 0.0);
  CHECK(min_nongauge_eigenvalue(solve_branch(Branch::kTypeII, 10)) > 0.0);
  const double dstar = stability_threshold(Branch::kTypeII, 3.0, 10.0);
  CHECK(dstar > 5.5);
  CHECK(dstar < 5.7);
  // Regression pin of the measured crossing.
  CHECK(std::abs(dstar - 5.585) < 0.01);
}

TEST_CASE("globally minimal branch reports monotone stability") {
  CHECK_THROWS_AS(stability_threshold(Branch::kIdentity, 9.0, 20.0),
                  std::runtime_error);
}
