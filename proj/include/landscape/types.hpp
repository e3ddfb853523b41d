#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace landscape {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Perm = std::vector<int>;  // perm[i] = image of index i

// Named isotropy families: diagonal permutation subgroups that fix the
// canonical block templates below.  p is the size of the small block.
enum class Family {
  FULL_DIAG,  // p = 0, full diagonal subgroup
  SPLIT_1,    // p = 1
  SPLIT_2,    // p = 2
  SPLIT_3,    // p = 3
  TRIVIAL,    // no detected symmetry
  OTHER,      // block symmetry with p > 3
};

inline int family_p(Family f) {
  switch (f) {
    case Family::FULL_DIAG: return 0;
    case Family::SPLIT_1: return 1;
    case Family::SPLIT_2: return 2;
    case Family::SPLIT_3: return 3;
    default: throw std::invalid_argument("family has no block size");
  }
}

inline int family_coeff_count(Family f) {
  switch (f) {
    case Family::FULL_DIAG: return 2;
    case Family::SPLIT_1: return 5;
    case Family::SPLIT_2: return 6;
    case Family::SPLIT_3: return 6;
    default: throw std::invalid_argument("family has no coefficients");
  }
}

inline std::string family_name(Family f) {
  switch (f) {
    case Family::FULL_DIAG: return "FULL_DIAG";
    case Family::SPLIT_1: return "SPLIT_1";
    case Family::SPLIT_2: return "SPLIT_2";
    case Family::SPLIT_3: return "SPLIT_3";
    case Family::TRIVIAL: return "TRIVIAL";
    case Family::OTHER: return "OTHER";
  }
  return "?";
}

struct IsotropyClass {
  Family family = Family::TRIVIAL;
  int p = -1;  // split size for named families (or detected size for OTHER)
  // Row/column permutations mapping the observed matrix into canonical
  // block form: W_canonical = P_pi * W * P_rho^T.
  std::optional<std::pair<Perm, Perm>> conjugators;
};

// A point on one of the named critical families, in block coordinates.
// coeffs = (a1..am), m = 2/5/6/6 for p = 0/1/2/3; d may be fractional.
struct ReducedPoint {
  Family family = Family::FULL_DIAG;
  Vec coeffs;
  double d = 0.0;
  Vec lambdas;  // optional row scales; empty means all ones

  int p() const { return family_p(family); }
  int m() const { return family_coeff_count(family); }
};

// Student network (W, alpha) against a fixed teacher (V, beta).
struct NetworkPair {
  Mat W;      // k x d
  Vec alpha;  // k
  Mat V;      // d x d, defaults to identity
  Vec beta;   // d, defaults to ones

  NetworkPair() = default;
  NetworkPair(Mat W_, Vec alpha_)
      : W(std::move(W_)), alpha(std::move(alpha_)) {
    V = Mat::Identity(W.cols(), W.cols());
    beta = Vec::Ones(W.cols());
  }
  NetworkPair(Mat W_, Vec alpha_, Mat V_, Vec beta_)
      : W(std::move(W_)), alpha(std::move(alpha_)), V(std::move(V_)),
        beta(std::move(beta_)) {}

  int k() const { return static_cast<int>(W.rows()); }
  int d() const { return static_cast<int>(W.cols()); }

  void validate() const {
    if (W.rows() == 0 || W.cols() == 0) throw std::invalid_argument("empty W");
    if (alpha.size() != W.rows()) throw std::invalid_argument("alpha size");
    if (V.rows() != W.cols() || V.cols() != W.cols())
      throw std::invalid_argument("V shape");
    if (beta.size() != W.cols()) throw std::invalid_argument("beta size");
    for (int i = 0; i < W.rows(); ++i)
      if (W.row(i).norm() == 0.0) throw std::domain_error("zero row in W");
    for (int j = 0; j < V.rows(); ++j)
      if (V.row(j).norm() == 0.0) throw std::domain_error("zero row in V");
  }
};

// Flat parameter layout: row-major W first, then alpha.
struct FlatIndex {
  int k = 0, d = 0;
  FlatIndex(int k_, int d_) : k(k_), d(d_) {}
  int size() const { return k * d + k; }
  int w(int i, int j) const { return i * d + j; }
  int a(int i) const { return k * d + i; }

  Vec flatten(const Mat& W, const Vec& alpha) const {
    Vec x(size());
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < d; ++j) x[w(i, j)] = W(i, j);
    for (int i = 0; i < k; ++i) x[a(i)] = alpha[i];
    return x;
  }
  std::pair<Mat, Vec> unflatten(const Vec& x) const {
    Mat W(k, d);
    Vec alpha(k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < d; ++j) W(i, j) = x[w(i, j)];
    for (int i = 0; i < k; ++i) alpha[i] = x[a(i)];
    return {W, alpha};
  }
};

}  // namespace landscape
