#include "landscape/kernel.hpp"

#include <cmath>

namespace landscape {

double vector_angle(const Vec& u, const Vec& v) {
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0)
    throw std::domain_error("angle undefined for zero-norm vector");
  // atan2 of the half-angle chords: accurate at both ends of [0, pi], and
  // exactly zero for identical inputs (acos of a clamped cosine is not).
  const Vec uh = u / nu, vh = v / nv;
  return 2.0 * std::atan2((uh - vh).norm(), (uh + vh).norm());
}

double kernel(const Vec& u, const Vec& v) {
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0)
    throw std::domain_error("kernel undefined for zero-norm vector");
  const double t = vector_angle(u, v);
  return nu * nv / (2.0 * M_PI) * (std::sin(t) + (M_PI - t) * std::cos(t));
}

Vec kernel_grad(const Vec& u, const Vec& v) {
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0)
    throw std::domain_error("kernel gradient undefined for zero-norm vector");
  const double t = vector_angle(u, v);
  return (nv * std::sin(t) / nu * u + (M_PI - t) * v) / (2.0 * M_PI);
}

std::pair<Mat, Mat> kernel_hessian(const Vec& u, const Vec& v) {
  const auto e = kernel_eval(u, v);
  return {e.hess_uu, e.hess_uv};
}

KernelEval kernel_eval(const Vec& u, const Vec& v) {
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0)
    throw std::domain_error("kernel undefined for zero-norm vector");
  const int n = static_cast<int>(u.size());
  const double t = vector_angle(u, v);
  const double st = std::sin(t), ct = std::cos(t);
  const Vec uh = u / nu, vh = v / nv;

  KernelEval e;
  e.value = nu * nv / (2.0 * M_PI) * (st + (M_PI - t) * ct);
  e.grad_u = (nv * st * uh + (M_PI - t) * v) / (2.0 * M_PI);

  const Mat I = Mat::Identity(n, n);
  if (st < 1e-8) {
    // Parallel pair: the normal direction n = (vh - ct*uh)/st is undefined,
    // but every term it multiplies carries a sin factor whose limit is zero.
    e.hess_uu = (nv * st / (2.0 * M_PI * nu)) * (I - uh * uh.transpose());
    e.hess_uv = ((M_PI - t) * I + st * (uh * vh.transpose())) / (2.0 * M_PI);
  } else {
    const Vec nhat = (vh - ct * uh) / st;  // unit normal to u towards v
    const Vec mhat = (uh - ct * vh) / st;  // unit normal to v towards u
    e.hess_uu = (nv * st / (2.0 * M_PI * nu)) *
                (I - uh * uh.transpose() + nhat * nhat.transpose());
    e.hess_uv = ((M_PI - t) * I +
                 st * (uh * vh.transpose() + nhat * mhat.transpose())) /
                (2.0 * M_PI);
  }
  return e;
}

McResult kernel_mc(const Vec& u, const Vec& v, std::int64_t n_samples,
                   std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const int n = static_cast<int>(u.size());
  // Fixed-size chunks with per-chunk derived seeds: the estimate is a pure
  // function of (inputs, seed) regardless of how chunks are scheduled.
  constexpr std::int64_t kChunk = 1 << 16;
  long double sum = 0.0L, sum_sq = 0.0L;
  Vec x(n);
  for (std::int64_t start = 0, chunk_id = 0; start < n_samples;
       start += kChunk, ++chunk_id) {
    const std::int64_t stop = std::min(n_samples, start + kChunk);
    GaussianStream g(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL +
                     static_cast<std::uint64_t>(chunk_id));
    for (std::int64_t s = start; s < stop; ++s) {
      g.fill(x);
      const double a = u.dot(x), b = v.dot(x);
      const double y = (a > 0.0 ? a : 0.0) * (b > 0.0 ? b : 0.0);
      sum += y;
      sum_sq += static_cast<long double>(y) * y;
    }
  }
  const double mean = static_cast<double>(sum / n_samples);
  const double var = static_cast<double>(
      (sum_sq - sum * sum / n_samples) / std::max<std::int64_t>(1, n_samples - 1));
  McResult r;
  r.mean = mean;
  r.std_err = std::sqrt(std::max(0.0, var) / n_samples);
  return r;
}

}  // namespace landscape
