#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "landscape/kernel.hpp"
#include "landscape/loss.hpp"
#include "landscape/reduced.hpp"
#include "landscape/symmetry.hpp"

using namespace landscape;

namespace {

ReducedPoint make_point(Family f, double d, const std::vector<double>& a) {
  ReducedPoint r;
  r.family = f;
  r.d = d;
  r.coeffs = Vec(static_cast<int>(a.size()));
  for (size_t i = 0; i < a.size(); ++i) r.coeffs[static_cast<int>(i)] = a[i];
  return r;
}

// Full-space oracle: the W-block of the analytic gradient, summed over each
// template coefficient class (the chain rule of the block parameterization).
Vec full_grad_class_sums(const ReducedPoint& r) {
  NetworkPair p = lift(r);
  Vec g = grad(p);
  FlatIndex idx(p.k(), p.d());
  Mat G(p.k(), p.d());
  for (int i = 0; i < p.k(); ++i)
    for (int j = 0; j < p.d(); ++j) G(i, j) = g[idx.w(i, j)];
  return class_sums(G, r.family);
}

const std::vector<std::pair<Family, std::vector<double>>> kPoints = {
    {Family::FULL_DIAG, {0.9, 0.07}},
    {Family::FULL_DIAG, {-0.8, 0.2}},
    {Family::SPLIT_1, {0.95, 0.05, 0.15, -0.2, -0.9}},
    {Family::SPLIT_1, {-0.8, 0.25, 0.1, 0.3, 1.05}},
    {Family::SPLIT_2, {0.95, 0.05, 0.15, -0.2, -0.9, 0.12}},
    {Family::SPLIT_2, {-0.8, 0.25, 0.1, 0.3, 1.05, -0.15}},
    {Family::SPLIT_3, {0.95, 0.05, 0.15, -0.2, -0.9, 0.12}},
    {Family::SPLIT_3, {-0.8, 0.25, 0.1, 0.3, 1.05, -0.15}},
};

}  // namespace

TEST_CASE("reduced angles match the lifted geometry") {
  for (const auto& [f, a] : kPoints) {
    for (double d : {8.0, 11.0}) {
      ReducedPoint r = make_point(f, d, a);
      AngleSet s = reduced_angles(r);
      Mat W = lift(r).W;
      const int dd = static_cast<int>(d);
      const int p = r.p();
      const int t = dd - p;
      auto axis = [&](int j) {
        Vec e = Vec::Zero(dd);
        e[j] = 1.0;
        return e;
      };
      CHECK(std::abs(s.nu_t - W.row(0).norm()) < 1e-12);
      CHECK(std::abs(s.a_tt - vector_angle(W.row(0), W.row(1))) < 1e-12);
      CHECK(std::abs(s.b_t_own - vector_angle(W.row(0), axis(0))) < 1e-12);
      CHECK(std::abs(s.b_t_other - vector_angle(W.row(0), axis(1))) < 1e-12);
      if (p >= 1) {
        CHECK(std::abs(s.nu_b - W.row(dd - 1).norm()) < 1e-12);
        CHECK(std::abs(s.a_tb - vector_angle(W.row(0), W.row(dd - 1))) <
              1e-12);
        CHECK(std::abs(s.b_t_small - vector_angle(W.row(0), axis(t))) <
              1e-12);
        CHECK(std::abs(s.b_b_large - vector_angle(W.row(dd - 1), axis(0))) <
              1e-12);
        CHECK(std::abs(s.b_b_own - vector_angle(W.row(dd - 1), axis(dd - 1))) <
              1e-12);
      }
      if (p >= 2) {
        CHECK(std::abs(s.a_bb - vector_angle(W.row(dd - 1), W.row(dd - 2))) <
              1e-12);
        CHECK(std::abs(s.b_b_other -
                       vector_angle(W.row(dd - 2), axis(dd - 1))) < 1e-12);
      }
    }
  }
}

TEST_CASE("reduced loss equals the full loss of the lifted point") {
  for (const auto& [f, a] : kPoints) {
    for (double d : {7.0, 10.0}) {
      ReducedPoint r = make_point(f, d, a);
      const double want = loss(lift(r));
      CHECK(std::abs(reduced_loss(r) - want) <
            1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("reduced gradient equals the class sums of the full gradient") {
  for (const auto& [f, a] : kPoints) {
    for (double d : {7.0, 10.0, 13.0}) {
      ReducedPoint r = make_point(f, d, a);
      Vec want = full_grad_class_sums(r);
      Vec got = reduced_grad(r);
      const double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
      CHECK((got - want).cwiseAbs().maxCoeff() / scale < 1e-10);
    }
  }
}

TEST_CASE("reduced gradient is the derivative of the reduced loss at real d") {
  // Fractional dimensions have no lift; finite differences of reduced_loss
  // are the only available oracle there.
  for (const auto& [f, a] : kPoints) {
    ReducedPoint r = make_point(f, 9.37, a);
    Vec got = reduced_grad(r);
    Vec fd(r.m());
    for (int j = 0; j < r.m(); ++j) {
      const double h = 1e-6;
      ReducedPoint rp = r, rm = r;
      rp.coeffs[j] += h;
      rm.coeffs[j] -= h;
      fd[j] = (reduced_loss(rp) - reduced_loss(rm)) / (2.0 * h);
    }
    const double scale = std::max(1.0, got.cwiseAbs().maxCoeff());
    CHECK((got - fd).cwiseAbs().maxCoeff() / scale < 1e-7);
  }
}

TEST_CASE("newton finds the global minimum branch exactly") {
  ReducedPoint r0 = make_point(Family::FULL_DIAG, 10, {0.93, 0.02});
  ReducedPoint sol = newton_solve(r0, 1e-13, 100);
  CHECK(std::abs(sol.coeffs[0] - 1.0) < 1e-10);
  CHECK(std::abs(sol.coeffs[1]) < 1e-10);
  CHECK(std::abs(reduced_loss(sol)) < 1e-12);
}

TEST_CASE("every named branch solves from its seed and is fully critical") {
  for (Branch b : all_branches()) {
    const double d = 20.0;
    ReducedPoint sol = solve_branch(b, d);
    CHECK(reduced_grad(sol).cwiseAbs().maxCoeff() < 1e-12);
    // Criticality in block coordinates lifts to criticality of the full
    // network (W rows scale-coupled to alpha, gauge at alpha = 1).
    NetworkPair p = lift(sol);
    CHECK(grad(p).cwiseAbs().maxCoeff() < 1e-9);
    // The solution stays close to its asymptotic seed.
    CHECK((sol.coeffs - branch_seed(b, d)).cwiseAbs().maxCoeff() < 0.05);
  }
}

TEST_CASE("continuation tracks a branch down to small d") {
  ReducedPoint seed = make_point(Family::SPLIT_1, 20, {0, 0, 0, 0, 0});
  seed.coeffs = branch_seed(Branch::kTypeII, 20);
  auto path = continue_in_d(seed, 4.0, 16);
  CHECK(path.size() == 17);
  CHECK(path.front().d == doctest::Approx(20.0));
  CHECK(path.back().d == doctest::Approx(4.0));
  for (const auto& r : path)
    CHECK(reduced_grad(r).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("small-d branch solving goes through continuation") {
  ReducedPoint sol = solve_branch(Branch::kTypeII, 3.0);
  CHECK(reduced_grad(sol).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(grad(lift(sol)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("half-power fit recovers a known expansion") {
  std::vector<std::pair<double, double>> samples;
  for (double ld = 3.0; ld <= 6.01; ld += 0.25) {
    const double d = std::pow(10.0, ld);
    samples.push_back({d, 2.0 - 3.0 / std::sqrt(d) + 0.5 / d});
  }
  HalfPowerSeries fit = fit_half_series(samples, {0.0, 0.5, 1.0});
  CHECK(std::abs(fit.coeffs[0] - 2.0) < 1e-10);
  CHECK(std::abs(fit.coeffs[1] + 3.0) < 1e-7);
  CHECK(std::abs(fit.coeffs[2] - 0.5) < 1e-4);
  CHECK(fit.max_residual < 1e-12);
  CHECK(std::abs(fit.eval(1e4) - (2.0 - 3.0 / 100.0 + 0.5 / 1e4)) < 1e-10);

  // Duplicate exponents make the design singular.
  CHECK_THROWS_AS((void)fit_half_series(samples, {0.0, 0.5, 0.5}),
                  std::runtime_error);
}

TEST_CASE("degenerate inputs are rejected") {
  ReducedPoint r = make_point(Family::SPLIT_1, 1.8, {1, 0, 0, 0, -1});
  CHECK_THROWS_AS((void)reduced_angles(r), std::domain_error);
  ReducedPoint z = make_point(Family::FULL_DIAG, 8, {0.0, 0.0});
  CHECK_THROWS_AS((void)reduced_angles(z), std::domain_error);
}
