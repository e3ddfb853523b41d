#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "landscape/kernel.hpp"

using namespace landscape;

namespace {

Vec random_vec(GaussianStream& g, int d) {
  Vec v(d);
  g.fill(v);
  return v;
}

// Central finite differences of kernel in u (oracle for kernel_grad).
Vec fd_kernel_grad(const Vec& u, const Vec& v, double h_scale = 1e-6) {
  Vec g(u.size());
  for (int i = 0; i < u.size(); ++i) {
    const double h = h_scale * (1.0 + std::abs(u[i]));
    Vec up = u, um = u;
    up[i] += h;
    um[i] -= h;
    g[i] = (kernel(up, v) - kernel(um, v)) / (2.0 * h);
  }
  return g;
}

// Central finite differences of kernel_grad (oracle for kernel_hessian).
std::pair<Mat, Mat> fd_kernel_hessian(const Vec& u, const Vec& v,
                                      double h_scale = 1e-6) {
  const int d = static_cast<int>(u.size());
  Mat huu(d, d), huv(d, d);
  for (int j = 0; j < d; ++j) {
    double h = h_scale * (1.0 + std::abs(u[j]));
    Vec up = u, um = u;
    up[j] += h;
    um[j] -= h;
    huu.col(j) = (kernel_grad(up, v) - kernel_grad(um, v)) / (2.0 * h);
    h = h_scale * (1.0 + std::abs(v[j]));
    Vec vp = v, vm = v;
    vp[j] += h;
    vm[j] -= h;
    huv.col(j) = (kernel_grad(u, vp) - kernel_grad(u, vm)) / (2.0 * h);
  }
  return {huu, huv};
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

TEST_CASE("closed form at exact angles") {
  const int d = 6;
  Vec e0 = Vec::Zero(d), e1 = Vec::Zero(d);
  e0[0] = 1.0;
  e1[1] = 1.0;

  // Aligned: |u|^2 / 2.
  CHECK(rel_err(kernel(3.0 * e0, 3.0 * e0), 4.5) < 1e-14);
  // Orthogonal: |u||v| / 2pi.
  CHECK(rel_err(kernel(2.0 * e0, 5.0 * e1), 10.0 / (2.0 * M_PI)) < 1e-14);
  // Anti-parallel: 0.
  CHECK(std::abs(kernel(e0, -e0)) < 1e-14);
  // 60 degrees between unit vectors.
  Vec u = e0, v = 0.5 * e0 + std::sqrt(3.0) / 2.0 * e1;
  const double t = M_PI / 3.0;
  const double expect = (std::sin(t) + (M_PI - t) * std::cos(t)) / (2.0 * M_PI);
  CHECK(rel_err(kernel(u, v), expect) < 1e-14);
}

TEST_CASE("monte carlo agrees with closed form") {
  GaussianStream g(7);
  for (int d : {3, 8}) {
    for (int rep = 0; rep < 3; ++rep) {
      Vec u = random_vec(g, d), v = random_vec(g, d);
      McResult mc = kernel_mc(u, v, 1000000, 1000 + rep);
      CHECK(mc.std_err > 0.0);
      CHECK(std::abs(mc.mean - kernel(u, v)) < 4.0 * mc.std_err);
    }
  }
}

TEST_CASE("monte carlo is deterministic in the seed") {
  GaussianStream g(11);
  Vec u = random_vec(g, 5), v = random_vec(g, 5);
  McResult a = kernel_mc(u, v, 200000, 42);
  McResult b = kernel_mc(u, v, 200000, 42);
  CHECK(a.mean == b.mean);
  CHECK(a.std_err == b.std_err);
  McResult c = kernel_mc(u, v, 200000, 43);
  CHECK(a.mean != c.mean);
}

TEST_CASE("gradient matches finite differences") {
  GaussianStream g(3);
  for (int rep = 0; rep < 6; ++rep) {
    Vec u = random_vec(g, 7), v = random_vec(g, 7);
    Vec an = kernel_grad(u, v);
    Vec fd = fd_kernel_grad(u, v);
    const double scale = std::max(1.0, an.cwiseAbs().maxCoeff());
    CHECK((an - fd).cwiseAbs().maxCoeff() / scale < 1e-6);
  }
}

TEST_CASE("hessian blocks match finite differences") {
  GaussianStream g(5);
  for (int rep = 0; rep < 6; ++rep) {
    Vec u = random_vec(g, 6), v = random_vec(g, 6);
    auto [huu, huv] = kernel_hessian(u, v);
    auto [fuu, fuv] = fd_kernel_hessian(u, v);
    const double s1 = std::max(1.0, huu.cwiseAbs().maxCoeff());
    const double s2 = std::max(1.0, huv.cwiseAbs().maxCoeff());
    CHECK((huu - fuu).cwiseAbs().maxCoeff() / s1 < 1e-6);
    CHECK((huv - fuv).cwiseAbs().maxCoeff() / s2 < 1e-6);
    CHECK((huu - huu.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("derivatives near parallel vectors") {
  GaussianStream g(9);
  Vec u = random_vec(g, 5);
  // Small perpendicular perturbation away from exact parallelism.
  Vec w = random_vec(g, 5);
  w -= w.dot(u) / u.squaredNorm() * u;
  Vec v = 1.3 * u + 1e-5 * w;

  Vec an = kernel_grad(u, v);
  Vec fd = fd_kernel_grad(u, v, 1e-7);
  CHECK((an - fd).cwiseAbs().maxCoeff() /
            std::max(1.0, an.cwiseAbs().maxCoeff()) <
        1e-4);

  auto [huu, huv] = kernel_hessian(u, v);
  auto [fuu, fuv] = fd_kernel_hessian(u, v, 1e-7);
  CHECK((huv - fuv).cwiseAbs().maxCoeff() /
            std::max(1.0, huv.cwiseAbs().maxCoeff()) <
        1e-4);
  // The uu block has a genuinely singular directional limit; check only the
  // regularized structural values at exact parallelism below.
  (void)huu;
  (void)fuu;

  // Exact parallel limits: grad = u/2, d^2k/dvdu = I/2, regularized uu = 0.
  auto [puu, puv] = kernel_hessian(u, u);
  CHECK((kernel_grad(u, u) - 0.5 * u).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((puv - 0.5 * Mat::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(puu.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("homogeneity and rotation invariance") {
  GaussianStream g(13);
  Vec u = random_vec(g, 6), v = random_vec(g, 6);
  const double base = kernel(u, v);

  CHECK(std::abs(kernel(2.5 * u, 0.3 * v) - 2.5 * 0.3 * base) <
        1e-12 * std::max(1.0, std::abs(base)));

  Mat A(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) A(i, j) = random_vec(g, 1)[0];
  Mat Q = Eigen::HouseholderQR<Mat>(A).householderQ();
  CHECK(std::abs(kernel(Q * u, Q * v) - base) <
        1e-12 * std::max(1.0, std::abs(base)));
}

TEST_CASE("zero-norm input is rejected") {
  Vec z = Vec::Zero(4), u = Vec::Ones(4);
  CHECK_THROWS_AS((void)kernel(z, u), std::domain_error);
  CHECK_THROWS_AS((void)kernel_grad(u, z), std::domain_error);
  CHECK_THROWS_AS((void)vector_angle(z, z), std::domain_error);
}
