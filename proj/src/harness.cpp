#include "landscape/harness.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "landscape/kernel.hpp"
#include "landscape/loss.hpp"
#include "landscape/symmetry.hpp"

namespace landscape {

namespace {

constexpr double kDivergenceLoss = 1e6;
constexpr double kPolishEntryGrad = 1e-2;
constexpr int kCheckEvery = 250;
constexpr int kPlateauPatience = 4;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Uniform in [-b, b) from a standardized engine.
double uniform_pm(std::mt19937_64& rng, double b) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return b * (2.0 * u - 1.0);
}

NetworkPair make_teacher_pair(Mat W, Vec alpha, const Vec& teacher_diag) {
  const int d = static_cast<int>(W.cols());
  if (teacher_diag.size() == 0) return NetworkPair(std::move(W), std::move(alpha));
  Mat V = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j) V(j, j) = teacher_diag[j];
  return NetworkPair(std::move(W), std::move(alpha), std::move(V), teacher_diag);
}

// Damped (Levenberg-style) Newton polish on the full (W, alpha) space.
// Returns true when the analytic gradient norm reaches tol.
bool newton_polish(NetworkPair& pt, double tol, int max_iter) {
  FlatIndex idx(pt.k(), pt.d());
  Vec x = idx.flatten(pt.W, pt.alpha);
  double f = loss(pt);
  for (int it = 0; it < max_iter; ++it) {
    Vec g = grad(pt);
    const double gn = g.norm();
    if (gn < tol) return true;
    Mat H = hessian(pt);
    double eps = 1e-10 * std::max(1.0, H.cwiseAbs().maxCoeff());
    bool accepted = false;
    for (int damp = 0; damp < 12; ++damp) {
      Mat Hd = H;
      Hd.diagonal().array() += eps;
      Vec step = Hd.ldlt().solve(g);
      Vec xc = x - step;
      auto [Wc, ac] = idx.unflatten(xc);
      NetworkPair cand(Wc, ac, pt.V, pt.beta);
      double fc, gc;
      try {
        fc = loss(cand);
        gc = grad(cand).norm();
      } catch (const std::exception&) {
        eps *= 100.0;
        continue;
      }
      if (fc <= f + 1e-12 || gc < 0.5 * gn) {
        pt = cand;
        x = xc;
        f = fc;
        accepted = true;
        break;
      }
      eps *= 100.0;
    }
    if (!accepted) return false;
  }
  return grad(pt).norm() < tol;
}

// Average the entries of a canonical-form matrix over each template
// coefficient class.
Vec class_averages(const Mat& Wc, Family f) {
  const int d = static_cast<int>(Wc.rows());
  const int m = family_coeff_count(f);
  Vec sums = Vec::Zero(m), counts = Vec::Zero(m);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const int i = template_coeff_at(f, d, r, c);
      if (i < 0) continue;
      sums[i] += Wc(r, c);
      counts[i] += 1.0;
    }
  for (int i = 0; i < m; ++i)
    if (counts[i] > 0.0) sums[i] /= counts[i];
  return sums;
}

void classify_endpoint(RunRecord& rec, const NetworkPair& pt,
                       bool identity_teacher) {
  // Gauge-normalized coordinates: fold the second layer into the rows.
  Mat M = pt.W;
  for (int i = 0; i < pt.k(); ++i) M.row(i) *= pt.alpha[i];
  rec.endpoint_W = M;
  rec.isotropy = detect_isotropy(M, 1e-4);
  if (!identity_teacher) return;
  const Family fam = rec.isotropy.family;
  if (fam == Family::TRIVIAL || fam == Family::OTHER) return;
  if (!rec.isotropy.conjugators) return;
  const auto& [pi, rho] = *rec.isotropy.conjugators;
  const int d = pt.d();
  Mat Wc(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) Wc(pi[i], rho[j]) = M(i, j);
  ReducedPoint r0;
  r0.family = fam;
  r0.d = d;
  r0.coeffs = class_averages(Wc, fam);
  try {
    ReducedPoint refined = newton_solve(r0);
    rec.coefficients = refined.coeffs;
    rec.coeff_distance = (refined.coeffs - r0.coeffs).cwiseAbs().maxCoeff();
  } catch (const std::exception&) {
    rec.coeff_distance = -1.0;
  }
}

}  // namespace

std::vector<RunRecord> run_sgd(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<RunRecord> out;
  out.reserve(cfg.runs);
  const double xavier = std::sqrt(6.0 / (cfg.d + cfg.d));
  for (int run = 0; run < cfg.runs; ++run) {
    RunRecord rec;
    rec.run = run;
    rec.seed = cfg.seed + static_cast<std::uint64_t>(run);
    std::mt19937_64 rng(rec.seed);

    Mat W(cfg.k, cfg.d);
    for (int i = 0; i < cfg.k; ++i)
      for (int j = 0; j < cfg.d; ++j) W(i, j) = uniform_pm(rng, xavier);
    Vec alpha = Vec::Ones(cfg.k);
    NetworkPair pt = make_teacher_pair(W, alpha, cfg.teacher_diag);

    double lr = cfg.lr;
    const double lr_floor = cfg.lr * 0x1.0p-20;
    double best_loss = 1e300;
    int stale_checks = 0;
    int step = 0;
    bool converged = false, diverged = false;

    auto analytic_check = [&]() {
      double f, gn;
      try {
        f = loss(pt);
        gn = grad(pt).norm();
      } catch (const std::exception&) {
        diverged = true;
        return;
      }
      if (!std::isfinite(f) || f > kDivergenceLoss) {
        diverged = true;
        return;
      }
      rec.final_loss = f;
      rec.final_grad_norm = gn;
      if (gn < cfg.grad_tol) {
        converged = true;
        return;
      }
      if (f < best_loss - 1e-12) {
        best_loss = f;
        stale_checks = 0;
      } else if (++stale_checks >= kPlateauPatience) {
        lr *= 0.5;
        stale_checks = 0;
      }
    };

    analytic_check();
    GaussianStream noise(rec.seed ^ 0x9E3779B97F4A7C15ull);
    Vec x(cfg.d);
    while (!converged && !diverged && step < cfg.max_steps && lr > lr_floor) {
      Mat gW = Mat::Zero(cfg.k, cfg.d);
      Vec gA = Vec::Zero(cfg.k);
      for (int s = 0; s < cfg.batch; ++s) {
        noise.fill(x);
        Vec pre = pt.W * x;
        Vec act = pre.cwiseMax(0.0);
        Vec tpre = pt.V * x;
        const double err =
            pt.alpha.dot(act) - pt.beta.dot(tpre.cwiseMax(0.0));
        for (int i = 0; i < cfg.k; ++i) {
          if (pre[i] > 0.0) gW.row(i) += (err * pt.alpha[i]) * x.transpose();
          gA[i] += err * act[i];
        }
      }
      pt.W -= (lr / cfg.batch) * gW;
      pt.alpha -= (lr / cfg.batch) * gA;
      ++step;
      if (step % kCheckEvery == 0) analytic_check();
    }
    if (!converged && !diverged) analytic_check();

    if (!converged && !diverged && cfg.lr > 0.0 &&
        rec.final_grad_norm < kPolishEntryGrad) {
      converged = newton_polish(pt, cfg.grad_tol, 300);
      rec.final_loss = loss(pt);
      rec.final_grad_norm = grad(pt).norm();
    }
    rec.steps = step;
    rec.converged = converged;
    rec.diverged = diverged;
    if (!diverged)
      classify_endpoint(rec, pt, cfg.teacher_diag.size() == 0);
    out.push_back(std::move(rec));
  }
  return out;
}

std::string runs_to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream os;
  os << "run,seed,steps,converged,diverged,final_loss,final_grad_norm,"
        "isotropy,p,coeff_distance,coefficients\n";
  for (const auto& r : records) {
    os << r.run << ',' << r.seed << ',' << r.steps << ','
       << (r.converged ? 1 : 0) << ',' << (r.diverged ? 1 : 0) << ','
       << fmt17(r.final_loss) << ',' << fmt17(r.final_grad_norm) << ','
       << family_name(r.isotropy.family) << ',' << r.isotropy.p << ','
       << fmt17(r.coeff_distance) << ',';
    for (int i = 0; i < r.coefficients.size(); ++i) {
      if (i) os << ';';
      os << fmt17(r.coefficients[i]);
    }
    os << '\n';
  }
  return os.str();
}

std::vector<SeriesTermCheck> series_verify(Branch b) {
  const std::vector<double> fit_exps = {0.0, 1.0, 1.5, 2.0, 2.5, 3.0};
  const std::vector<double> ref_exps = {0.0, 1.0, 1.5, 2.0};
  std::vector<double> dims;
  for (double e = 3.0; e <= 6.01; e += 0.25)
    dims.push_back(std::pow(10.0, e));

  std::vector<ReducedPoint> sols;
  for (double d : dims) sols.push_back(solve_branch(b, d));
  const int m = sols.front().m();

  // Closed-form reference terms, extracted exactly from the seed expansion
  // (the seed is a finite combination of the same powers).
  const std::vector<double> probe = {4.0, 9.0, 16.0, 25.0};
  Mat V(4, 4);
  Mat seeds(4, m);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) V(i, j) = std::pow(probe[i], -ref_exps[j]);
    seeds.row(i) = branch_seed(b, probe[i]).transpose();
  }
  Mat ref = V.partialPivLu().solve(seeds);  // 4 x m term values

  std::vector<SeriesTermCheck> out;
  for (int c = 0; c < m; ++c) {
    std::vector<std::pair<double, double>> samples;
    for (size_t i = 0; i < dims.size(); ++i)
      samples.emplace_back(dims[i], sols[i].coeffs[c]);
    HalfPowerSeries fit = fit_half_series(samples, fit_exps);
    for (size_t e = 0; e < ref_exps.size(); ++e) {
      SeriesTermCheck t;
      t.coeff_index = c;
      t.exponent = ref_exps[e];
      t.fitted = fit.coeffs[static_cast<int>(e)];
      t.reference = ref(static_cast<int>(e), c);
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace landscape
