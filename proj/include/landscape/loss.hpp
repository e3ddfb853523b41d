#pragma once

#include "landscape/types.hpp"

namespace landscape {

// Population squared loss of the student (W, alpha) against the teacher
// (V, beta) under standard Gaussian inputs:
//   L = 1/2 E[(sum_i alpha_i relu(w_i.x) - sum_j beta_j relu(v_j.x))^2],
// assembled from pairwise kernel values.
double loss(const NetworkPair& p);

// Analytic gradient over (W, alpha) in FlatIndex layout.
Vec grad(const NetworkPair& p);

// Analytic symmetric Hessian over (W, alpha) in FlatIndex layout.
Mat hessian(const NetworkPair& p);

// Row permutation pi on (W, alpha) and column permutation rho on W:
// returns (P_pi W P_rho^T, P_pi alpha); teacher carried over unchanged.
NetworkPair apply_permutation(const NetworkPair& p, const Perm& pi,
                              const Perm& rho);

// Monte-Carlo estimate of the same loss (oracle for the closed form).
struct LossMc {
  double mean;
  double std_err;
};
LossMc loss_mc(const NetworkPair& p, std::int64_t n_samples,
               std::uint64_t seed);

// Central finite differences of `loss` / `grad` (test oracles).
Vec fd_grad(const NetworkPair& p, double h_scale = 1e-5);
Mat fd_hessian(const NetworkPair& p, double h_scale = 1e-5);

}  // namespace landscape
