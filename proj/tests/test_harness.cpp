#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "landscape/harness.hpp"
#include "landscape/reduced.hpp"
#include "landscape/symmetry.hpp"

using namespace landscape;

TEST_CASE("zero learning rate leaves the start point untouched") {
  ExperimentConfig a;
  a.d = a.k = 6;
  a.runs = 1;
  a.lr = 0.0;
  a.max_steps = 100;
  a.seed = 42;
  ExperimentConfig b = a;
  b.max_steps = 0;
  auto ra = run_sgd(a), rb = run_sgd(b);
  REQUIRE(ra.size() == 1);
  CHECK(ra[0].steps == 0);
  CHECK_FALSE(ra[0].converged);
  CHECK((ra[0].endpoint_W - rb[0].endpoint_W).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("runs are deterministic and CSV output is byte-identical") {
  ExperimentConfig cfg;
  cfg.d = cfg.k = 6;
  cfg.runs = 2;
  cfg.seed = 7;
  cfg.max_steps = 20000;
  auto r1 = run_sgd(cfg), r2 = run_sgd(cfg);
  CHECK(runs_to_csv(r1) == runs_to_csv(r2));
}

TEST_CASE("small experiment converges to classified family points") {
  ExperimentConfig cfg;
  cfg.d = cfg.k = 6;
  cfg.runs = 4;
  cfg.seed = 11;
  for (const auto& r : run_sgd(cfg)) {
    CHECK(r.converged);
    CHECK_FALSE(r.diverged);
    CHECK(r.final_grad_norm < cfg.grad_tol);
    CHECK(r.isotropy.family != Family::TRIVIAL);
    CHECK(r.isotropy.family != Family::OTHER);
    CHECK(r.coeff_distance >= 0.0);
    CHECK(r.coeff_distance < 1e-4);
    // The refined block coefficients reproduce a critical point.
    ReducedPoint rp;
    rp.family = r.isotropy.family;
    rp.d = cfg.d;
    rp.coeffs = r.coefficients;
    CHECK(reduced_grad(rp).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("non-identity diagonal teacher is supported") {
  ExperimentConfig cfg;
  cfg.d = cfg.k = 5;
  cfg.runs = 1;
  cfg.seed = 3;
  cfg.max_steps = 30000;
  cfg.teacher_diag = Vec::Ones(5);
  cfg.teacher_diag[3] = 2.0;
  cfg.teacher_diag[4] = 2.0;
  auto recs = run_sgd(cfg);
  REQUIRE(recs.size() == 1);
  CHECK_FALSE(recs[0].diverged);
  CHECK(recs[0].final_loss < 1.0);
}

TEST_CASE("config validation rejects bad inputs") {
  ExperimentConfig cfg;
  cfg.grad_tol = 0.0;
  CHECK_THROWS_AS(run_sgd(cfg), std::invalid_argument);
  cfg = ExperimentConfig{};
  cfg.k = cfg.d + 1;
  CHECK_THROWS_AS(run_sgd(cfg), std::invalid_argument);
  cfg = ExperimentConfig{};
  cfg.teacher_diag = Vec::Ones(cfg.d + 2);
  CHECK_THROWS_AS(run_sgd(cfg), std::invalid_argument);
}

TEST_CASE("half-power fits recover the closed-form expansions") {
  for (const auto& t : series_verify(Branch::kTypeII)) {
    if (std::abs(t.reference) > 1e-12)
      CHECK(std::abs(t.fitted - t.reference) <
            1e-3 * std::abs(t.reference));
    else
      CHECK(std::abs(t.fitted) < 1e-4);
  }
}
