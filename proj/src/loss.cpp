#include "landscape/loss.hpp"

#include <cmath>

#include "landscape/kernel.hpp"

namespace landscape {

namespace {

double teacher_term(const NetworkPair& p) {
  double t = 0.0;
  const int d = p.d();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      t += 0.5 * p.beta[i] * p.beta[j] * kernel(p.V.row(i), p.V.row(j));
  return t;
}

}  // namespace

double loss(const NetworkPair& p) {
  p.validate();
  const int k = p.k(), d = p.d();
  double L = teacher_term(p);
  for (int i = 0; i < k; ++i) {
    const Vec wi = p.W.row(i);
    for (int j = 0; j < k; ++j)
      L += 0.5 * p.alpha[i] * p.alpha[j] * kernel(wi, p.W.row(j));
    for (int j = 0; j < d; ++j)
      L -= p.alpha[i] * p.beta[j] * kernel(wi, p.V.row(j));
  }
  return L;
}

Vec grad(const NetworkPair& p) {
  p.validate();
  const int k = p.k(), d = p.d();
  FlatIndex idx(k, d);
  Vec g = Vec::Zero(idx.size());
  for (int i = 0; i < k; ++i) {
    const Vec wi = p.W.row(i);
    Vec gw = Vec::Zero(d);
    double ga = 0.0;
    // The self pair contributes d/dw [a_i^2/2 k(w,w)] = a_i^2 grad_u k(w,w)
    // by symmetry of the kernel, so a uniform sum over j is exact.
    for (int j = 0; j < k; ++j) {
      const Vec wj = p.W.row(j);
      gw += p.alpha[j] * kernel_grad(wi, wj);
      ga += p.alpha[j] * kernel(wi, wj);
    }
    for (int j = 0; j < d; ++j) {
      const Vec vj = p.V.row(j);
      gw -= p.beta[j] * kernel_grad(wi, vj);
      ga -= p.beta[j] * kernel(wi, vj);
    }
    gw *= p.alpha[i];
    for (int c = 0; c < d; ++c) g[idx.w(i, c)] = gw[c];
    g[idx.a(i)] = ga;
  }
  return g;
}

Mat hessian(const NetworkPair& p) {
  p.validate();
  const int k = p.k(), d = p.d();
  FlatIndex idx(k, d);
  Mat H = Mat::Zero(idx.size(), idx.size());

  // Cache pairwise kernel evaluations among student rows and vs teacher.
  std::vector<std::vector<KernelEval>> ww(k);
  std::vector<std::vector<KernelEval>> wv(k);
  for (int i = 0; i < k; ++i) {
    ww[i].reserve(k);
    for (int j = 0; j < k; ++j) ww[i].push_back(kernel_eval(p.W.row(i), p.W.row(j)));
    wv[i].reserve(d);
    for (int j = 0; j < d; ++j) wv[i].push_back(kernel_eval(p.W.row(i), p.V.row(j)));
  }

  for (int i = 0; i < k; ++i) {
    // W_i x W_j blocks.
    for (int j = 0; j < k; ++j) {
      Mat B;
      if (i != j) {
        B = p.alpha[i] * p.alpha[j] * ww[i][j].hess_uv;
      } else {
        // Self pair: d^2/dw^2 [a^2/2 k(w,w)] = a^2 (H_uu + H_uv)(w,w).
        B = p.alpha[i] * p.alpha[i] * (ww[i][i].hess_uu + ww[i][i].hess_uv);
        for (int l = 0; l < k; ++l)
          if (l != i) B += p.alpha[i] * p.alpha[l] * ww[i][l].hess_uu;
        for (int l = 0; l < d; ++l)
          B -= p.alpha[i] * p.beta[l] * wv[i][l].hess_uu;
      }
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) H(idx.w(i, a), idx.w(j, b)) = B(a, b);
    }
    // W_i x alpha_j blocks.
    for (int j = 0; j < k; ++j) {
      Vec col = p.alpha[i] * ww[i][j].grad_u;
      if (i == j) {
        for (int l = 0; l < k; ++l) col += p.alpha[l] * ww[i][l].grad_u;
        for (int l = 0; l < d; ++l) col -= p.beta[l] * wv[i][l].grad_u;
      }
      for (int a = 0; a < d; ++a) {
        H(idx.w(i, a), idx.a(j)) = col[a];
        H(idx.a(j), idx.w(i, a)) = col[a];
      }
    }
    // alpha x alpha block.
    for (int j = 0; j < k; ++j) H(idx.a(i), idx.a(j)) = ww[i][j].value;
  }
  return H;
}

NetworkPair apply_permutation(const NetworkPair& p, const Perm& pi,
                              const Perm& rho) {
  const int k = p.k(), d = p.d();
  if (static_cast<int>(pi.size()) != k || static_cast<int>(rho.size()) != d)
    throw std::invalid_argument("permutation size mismatch");
  NetworkPair q = p;
  for (int i = 0; i < k; ++i) {
    q.alpha[pi[i]] = p.alpha[i];
    for (int j = 0; j < d; ++j) q.W(pi[i], rho[j]) = p.W(i, j);
  }
  return q;
}

LossMc loss_mc(const NetworkPair& p, std::int64_t n_samples,
               std::uint64_t seed) {
  p.validate();
  const int k = p.k(), d = p.d();
  constexpr std::int64_t kChunk = 1 << 16;
  long double sum = 0.0L, sum_sq = 0.0L;
  Vec x(d);
  for (std::int64_t start = 0, chunk_id = 0; start < n_samples;
       start += kChunk, ++chunk_id) {
    const std::int64_t stop = std::min(n_samples, start + kChunk);
    GaussianStream g(seed * 0x9e3779b97f4a7c15ULL + 0x94d049bb133111ebULL +
                     static_cast<std::uint64_t>(chunk_id));
    for (std::int64_t s = start; s < stop; ++s) {
      g.fill(x);
      double student = 0.0, teacher = 0.0;
      for (int i = 0; i < k; ++i) {
        const double z = p.W.row(i).dot(x);
        if (z > 0.0) student += p.alpha[i] * z;
      }
      for (int j = 0; j < d; ++j) {
        const double z = p.V.row(j).dot(x);
        if (z > 0.0) teacher += p.beta[j] * z;
      }
      const double y = 0.5 * (student - teacher) * (student - teacher);
      sum += y;
      sum_sq += static_cast<long double>(y) * y;
    }
  }
  const double mean = static_cast<double>(sum / n_samples);
  const double var = static_cast<double>(
      (sum_sq - sum * sum / n_samples) /
      std::max<std::int64_t>(1, n_samples - 1));
  return {mean, std::sqrt(std::max(0.0, var) / n_samples)};
}

Vec fd_grad(const NetworkPair& p, double h_scale) {
  const FlatIndex idx(p.k(), p.d());
  Vec x = idx.flatten(p.W, p.alpha);
  Vec g(idx.size());
  for (int c = 0; c < idx.size(); ++c) {
    const double h = h_scale * (1.0 + std::abs(x[c]));
    Vec xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    NetworkPair pp = p, pm = p;
    std::tie(pp.W, pp.alpha) = idx.unflatten(xp);
    std::tie(pm.W, pm.alpha) = idx.unflatten(xm);
    g[c] = (loss(pp) - loss(pm)) / (2.0 * h);
  }
  return g;
}

Mat fd_hessian(const NetworkPair& p, double h_scale) {
  const FlatIndex idx(p.k(), p.d());
  Vec x = idx.flatten(p.W, p.alpha);
  Mat H(idx.size(), idx.size());
  for (int c = 0; c < idx.size(); ++c) {
    const double h = h_scale * (1.0 + std::abs(x[c]));
    Vec xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    NetworkPair pp = p, pm = p;
    std::tie(pp.W, pp.alpha) = idx.unflatten(xp);
    std::tie(pm.W, pm.alpha) = idx.unflatten(xm);
    H.col(c) = (grad(pp) - grad(pm)) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

}  // namespace landscape
