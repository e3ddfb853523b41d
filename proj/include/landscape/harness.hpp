#pragma once

#include <string>
#include <vector>

#include "landscape/families.hpp"
#include "landscape/reduced.hpp"
#include "landscape/types.hpp"

namespace landscape {

// Configuration of a batch of SGD symmetry-breaking runs.
struct ExperimentConfig {
  int d = 10;
  int k = 10;  // k = d in v1
  int runs = 100;
  double lr = 0.05;
  int batch = 64;
  int max_steps = 60000;
  double grad_tol = 1e-8;
  std::uint64_t seed = 1;
  Vec teacher_diag;  // empty = identity teacher

  void validate() const {
    if (d <= 0 || k != d) throw std::invalid_argument("requires k = d > 0");
    if (runs <= 0 || batch <= 0 || max_steps < 0)
      throw std::invalid_argument("counts must be positive");
    if (grad_tol <= 0.0) throw std::invalid_argument("grad_tol must be > 0");
    if (lr < 0.0) throw std::invalid_argument("lr must be >= 0");
    if (teacher_diag.size() != 0 && teacher_diag.size() != d)
      throw std::invalid_argument("teacher diagonal must have d entries");
  }
};

// Outcome of one SGD run.
struct RunRecord {
  int run = 0;
  std::uint64_t seed = 0;
  int steps = 0;
  bool converged = false;  // analytic gradient norm driven below grad_tol
  bool diverged = false;   // loss exceeded 1e6
  double final_loss = 0.0;
  double final_grad_norm = 0.0;
  IsotropyClass isotropy;      // classified on the gauge-normalized weights
  Vec coefficients;            // Newton-refined block coefficients, if named
  double coeff_distance = -1;  // |endpoint block coords - refined|_inf, or -1
  Mat endpoint_W;              // gauge-normalized endpoint (alpha folded in)
};

// Minibatch SGD on the population loss via fresh Gaussian samples per step
// (the stochastic gradient is the gradient of the empirical squared loss on
// the batch); convergence is declared on the analytic gradient.  Endpoints
// that reach a small analytic gradient are polished by damped Newton on the
// full (W, alpha) space, then classified and (identity teacher, named
// isotropy) Newton-refined in block coordinates.  Deterministic per seed.
std::vector<RunRecord> run_sgd(const ExperimentConfig& cfg);

// CSV emission of a run batch (17 significant digits, byte-stable).
std::string runs_to_csv(const std::vector<RunRecord>& records);

// One fitted term of a coefficient's half-power expansion compared against
// the closed-form seed value.
struct SeriesTermCheck {
  int coeff_index = 0;    // which block coefficient (0-based)
  double exponent = 0.0;  // power of d^(-1) (0, 1, 1.5, 2, ...)
  double fitted = 0.0;    // from Newton solves at large d
  double reference = 0.0; // extracted from the closed-form seed
};

// Solves the branch at d = 10^3 .. 10^6 (log-spaced), fits every block
// coefficient to a half-power series, and pairs each fitted term with the
// closed-form expansion value.
std::vector<SeriesTermCheck> series_verify(Branch b);

}  // namespace landscape
