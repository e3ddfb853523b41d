#pragma once

#include <random>

#include "landscape/types.hpp"

namespace landscape {

// Closed-form Gaussian expectation for a ReLU pair:
//   kernel(u, v) = E_{x ~ N(0, I)}[ relu(u.x) relu(v.x) ]
//               = (|u||v| / 2pi) (sin t + (pi - t) cos t),  t = angle(u, v).
double kernel(const Vec& u, const Vec& v);

// grad_u kernel(u, v) = (1/2pi) (|v| sin t * u/|u| + (pi - t) v).
Vec kernel_grad(const Vec& u, const Vec& v);

// Second derivatives: (d^2k/du^2, d^2k/dv du).  The uu block uses the
// regularized limit when u and v are numerically parallel (sin t < 1e-8).
std::pair<Mat, Mat> kernel_hessian(const Vec& u, const Vec& v);

struct KernelEval {
  double value;
  Vec grad_u;
  Mat hess_uu;
  Mat hess_uv;
};
KernelEval kernel_eval(const Vec& u, const Vec& v);

struct McResult {
  double mean;
  double std_err;
};

// Plain Monte-Carlo estimate of the same expectation.  Deterministic for a
// fixed seed: samples are drawn in fixed-size chunks with per-chunk derived
// seeds, so the result does not depend on any execution schedule.
McResult kernel_mc(const Vec& u, const Vec& v, std::int64_t n_samples,
                   std::uint64_t seed);

// Shared helpers -----------------------------------------------------------

// Angle with clamped cosine; throws std::domain_error on zero-norm input.
double vector_angle(const Vec& u, const Vec& v);

// Deterministic standard-normal stream: explicit Box-Muller over the
// standardized mt19937_64 engine (avoids the implementation-defined
// std::normal_distribution).
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01(), u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 in [0,1) -> 1-u1 > 0
    double z0 = r * std::cos(2.0 * M_PI * u2);
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return z0;
  }

  void fill(Vec& out) {
    for (int i = 0; i < out.size(); ++i) out[i] = next();
  }

 private:
  double uniform01() {  // in [0, 1), 53-bit resolution
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace landscape
