#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "landscape/loss.hpp"
#include "landscape/symmetry.hpp"

using namespace landscape;

namespace {

Vec generic_coeffs(Family f) {
  const int m = family_coeff_count(f);
  Vec a(m);
  const double vals[6] = {0.9, 0.1, 0.3, -0.2, 1.1, 0.25};
  for (int i = 0; i < m; ++i) a[i] = vals[i];
  return a;
}

Perm random_perm(int d, std::mt19937& rng) {
  Perm p(d);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

Mat permute(const Mat& W, const Perm& pi, const Perm& rho) {
  Mat out(W.rows(), W.cols());
  for (int r = 0; r < W.rows(); ++r)
    for (int c = 0; c < W.cols(); ++c) out(pi[r], rho[c]) = W(r, c);
  return out;
}

const std::vector<Family> kNamed = {Family::FULL_DIAG, Family::SPLIT_1,
                                    Family::SPLIT_2, Family::SPLIT_3};

}  // namespace

TEST_CASE("lift/reduce round trip") {
  std::mt19937 rng(17);
  for (Family f : kNamed) {
    const int d = 8;
    ReducedPoint r;
    r.family = f;
    r.d = d;
    r.coeffs = generic_coeffs(f);
    r.lambdas = Vec::Ones(d);
    for (int i = 0; i < d; ++i)
      r.lambdas[i] = 0.5 + std::uniform_real_distribution<>(0.0, 1.0)(rng);

    NetworkPair p = lift(r);
    CHECK(p.k() == d);
    for (int i = 0; i < d; ++i)
      CHECK(p.alpha[i] == doctest::Approx(1.0 / r.lambdas[i]).epsilon(1e-14));

    IsotropyClass cls;
    cls.family = f;
    cls.p = family_p(f);
    ReducedPoint back = reduce(p, cls);
    CHECK((back.coeffs - r.coeffs).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((back.lambdas - r.lambdas).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("reduce rejects points off the subspace") {
  ReducedPoint r;
  r.family = Family::SPLIT_2;
  r.d = 7;
  r.coeffs = generic_coeffs(r.family);
  NetworkPair p = lift(r);
  p.W(0, 2) += 1e-6;  // off-template perturbation above the 1e-9 residual gate
  IsotropyClass cls;
  cls.family = r.family;
  CHECK_THROWS_AS((void)reduce(p, cls), std::runtime_error);
}

TEST_CASE("detect_isotropy recovers each family under permutations") {
  std::mt19937 rng(23);
  for (Family f : kNamed) {
    for (int d : {7, 12}) {
      Mat M = template_matrix(f, d, generic_coeffs(f));
      for (int rep = 0; rep < 4; ++rep) {
        Perm pi = random_perm(d, rng), rho = random_perm(d, rng);
        Mat W = permute(M, pi, rho);
        IsotropyClass cls = detect_isotropy(W, 1e-10);
        CHECK(cls.family == f);
        CHECK(cls.p == family_p(f));
        REQUIRE(cls.conjugators.has_value());
        // The returned conjugators must map W back onto the template shape.
        Mat Wc = permute(W, cls.conjugators->first, cls.conjugators->second);
        Mat P = project_to_subspace(Wc, f);
        CHECK((Wc - P).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("detect_isotropy on identity, noise, and larger splits") {
  const int d = 9;
  IsotropyClass id_cls = detect_isotropy(Mat::Identity(d, d), 1e-10);
  CHECK(id_cls.family == Family::FULL_DIAG);

  std::mt19937 rng(31);
  std::normal_distribution<> N(0.0, 1.0);
  Mat R(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) R(r, c) = N(rng);
  CHECK(detect_isotropy(R, 1e-6).family == Family::TRIVIAL);

  // p = 4 split: symmetric but not one of the named families.
  Mat M = Mat::Constant(d, d, 0.1);
  const int t = d - 4;
  for (int i = 0; i < d; ++i) M(i, i) = (i < t) ? 0.9 : 1.1;
  for (int r = 0; r < t; ++r)
    for (int c = t; c < d; ++c) M(r, c) = 0.3;
  for (int r = t; r < d; ++r)
    for (int c = 0; c < t; ++c) M(r, c) = -0.2;
  for (int r = t; r < d; ++r)
    for (int c = t; c < d; ++c)
      if (r != c) M(r, c) = 0.25;
  CHECK(detect_isotropy(M, 1e-10).family == Family::OTHER);
}

TEST_CASE("detection tolerance separates noise scales") {
  std::mt19937 rng(37);
  std::normal_distribution<> N(0.0, 1.0);
  const int d = 8;
  Mat M = template_matrix(Family::SPLIT_1, d, generic_coeffs(Family::SPLIT_1));
  Mat noisy = M;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) noisy(r, c) += 1e-8 * N(rng);
  CHECK(detect_isotropy(noisy, 1e-6).family == Family::SPLIT_1);
  Mat bad = M;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) bad(r, c) += 1e-4 * N(rng);
  CHECK(detect_isotropy(bad, 1e-6).family == Family::TRIVIAL);
}

TEST_CASE("multiplicity matches brute-force orbit counting") {
  // Enumerate all (row, column) permutation images of a generic family point
  // and count the distinct matrices.
  auto orbit_size = [](Family f, int d) {
    Mat M = template_matrix(f, d, generic_coeffs(f));
    std::vector<Perm> perms;
    Perm base(d);
    std::iota(base.begin(), base.end(), 0);
    do {
      perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    std::set<std::string> seen;
    for (const Perm& pi : perms)
      for (const Perm& rho : perms) {
        Mat W = permute(M, pi, rho);
        std::ostringstream key;
        key.precision(17);
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) key << W(r, c) << ',';
        seen.insert(key.str());
      }
    return seen.size();
  };

  CHECK(multiplicity(Family::FULL_DIAG, 4) == orbit_size(Family::FULL_DIAG, 4));
  CHECK(multiplicity(Family::SPLIT_1, 4) == orbit_size(Family::SPLIT_1, 4));
  CHECK(multiplicity(Family::SPLIT_2, 4) == orbit_size(Family::SPLIT_2, 4));
  CHECK(multiplicity(Family::SPLIT_3, 5) == orbit_size(Family::SPLIT_3, 5));

  // Closed forms at larger d.
  CHECK(multiplicity(Family::FULL_DIAG, 10) == 3628800ULL);
  CHECK(multiplicity(Family::SPLIT_1, 10) == 36288000ULL);
  CHECK(multiplicity(Family::SPLIT_2, 10) == 3628800ULL * 45ULL);
  CHECK(multiplicity(Family::SPLIT_3, 10) == 3628800ULL * 120ULL);
  CHECK_THROWS_AS((void)multiplicity(Family::FULL_DIAG, 40),
                  std::overflow_error);
}

TEST_CASE("projection is the orthogonal class average") {
  std::mt19937 rng(41);
  std::normal_distribution<> N(0.0, 1.0);
  const int d = 7;
  Mat G(d, d), H(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      G(r, c) = N(rng);
      H(r, c) = N(rng);
    }
  for (Family f : kNamed) {
    Mat PG = project_to_subspace(G, f);
    // Idempotent and self-adjoint => orthogonal projection.
    CHECK((project_to_subspace(PG, f) - PG).cwiseAbs().maxCoeff() < 1e-12);
    const double lhs = (PG.array() * H.array()).sum();
    const double rhs = (G.array() * project_to_subspace(H, f).array()).sum();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("class sums are the chain rule of the template parameterization") {
  // F(a) = sum_{rc} sin(template(a)_{rc});  dF/da must equal the class sums
  // of the entrywise cosine matrix.
  for (Family f : kNamed) {
    const int d = 7;
    Vec a = generic_coeffs(f);
    Mat C = template_matrix(f, d, a).array().cos();
    Vec cs = class_sums(C, f);
    for (int j = 0; j < a.size(); ++j) {
      const double h = 1e-6;
      Vec ap = a, am = a;
      ap[j] += h;
      am[j] -= h;
      const double fp = template_matrix(f, d, ap).array().sin().sum();
      const double fm = template_matrix(f, d, am).array().sin().sum();
      CHECK(std::abs((fp - fm) / (2.0 * h) - cs[j]) < 1e-8);
    }
  }
}

TEST_CASE("templates degrade gracefully when the top block is 1x1") {
  // A three-row split in dimension four leaves a single top row; the
  // off-diagonal class of the top block is empty but the matrix is still
  // well-defined.
  Vec a(6);
  a << 1.1, 1.2, 1.3, 1.4, 1.5, 1.6;
  Mat M = template_matrix(Family::SPLIT_3, 4, a);
  CHECK(M(0, 0) == 1.1);
  CHECK(M(0, 1) == 1.3);
  CHECK(M(1, 0) == 1.4);
  CHECK(M(1, 1) == 1.5);
  CHECK(M(1, 2) == 1.6);
  CHECK_THROWS_AS(template_matrix(Family::SPLIT_3, 3, a),
                  std::invalid_argument);
}
