// Command-line front end: critical-point solving, spectra, stability
// thresholds, orbit multiplicities, SGD experiments, and figure data export.
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "landscape/harness.hpp"
#include "landscape/kernel.hpp"
#include "landscape/loss.hpp"
#include "landscape/reduced.hpp"
#include "landscape/spectrum.hpp"
#include "landscape/symmetry.hpp"

using namespace landscape;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Branch parse_branch(const std::string& name) {
  try {
    return branch_from_name(name);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--family", "unknown family '" + name + "'");
  }
}

// The multiplicity subcommand also accepts block-family tokens.
Family parse_block_family(const std::string& name) {
  if (name == "fulldiag" || name == "full_diag" || name == "split0")
    return Family::FULL_DIAG;
  if (name == "split1") return Family::SPLIT_1;
  if (name == "split2") return Family::SPLIT_2;
  if (name == "split3") return Family::SPLIT_3;
  return branch_family(parse_branch(name));
}

// "A:B" or "A:B:step" -> inclusive integer range.
std::vector<int> parse_d_range(const std::string& spec) {
  int lo = 0, hi = 0, step = 1;
  std::istringstream is(spec);
  std::string tok;
  std::vector<int> parts;
  while (std::getline(is, tok, ':')) parts.push_back(std::stoi(tok));
  if (parts.size() < 2 || parts.size() > 3)
    throw CLI::ValidationError("--d-range", "expected A:B or A:B:step");
  lo = parts[0];
  hi = parts[1];
  if (parts.size() == 3) step = parts[2];
  if (step <= 0 || hi < lo)
    throw CLI::ValidationError("--d-range", "invalid range");
  std::vector<int> out;
  for (int d = lo; d <= hi; d += step) out.push_back(d);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << content;
}

int cmd_kernel_check() {
  bool ok = true;
  GaussianStream gs(20240101);
  for (int i = 0; i < 20; ++i) {
    const int dim = 3 + (i % 5);
    Vec u(dim), v(dim);
    gs.fill(u);
    gs.fill(v);
    const double exact = kernel(u, v);
    McResult mc = kernel_mc(u, v, 400000, 1000 + i);
    const double dev = std::abs(mc.mean - exact);
    const bool pass = dev <= 4.0 * mc.std_err;
    ok = ok && pass;
    std::printf("pair %2d: exact=%s mc=%s +- %s  %s\n", i, fmt17(exact).c_str(),
                fmt17(mc.mean).c_str(), fmt17(mc.std_err).c_str(),
                pass ? "PASS" : "FAIL");
  }
  Vec e1 = Vec::Zero(4), e2 = Vec::Zero(4);
  e1[0] = 1.0;
  e2[1] = 1.0;
  const double orth = kernel(e1, e2);
  const bool pass = std::abs(orth - 1.0 / (2.0 * M_PI)) < 1e-12;
  ok = ok && pass;
  std::printf("orthogonal unit pair: %s (want 1/2pi)  %s\n",
              fmt17(orth).c_str(), pass ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int cmd_solve(const std::string& family, double d) {
  ReducedPoint sol = solve_branch(parse_branch(family), d);
  std::printf("family=%s d=%s\n", family.c_str(), fmt17(d).c_str());
  for (int i = 0; i < sol.coeffs.size(); ++i)
    std::printf("a%d=%s\n", i + 1, fmt17(sol.coeffs[i]).c_str());
  std::printf("loss=%s\n", fmt17(reduced_loss(sol)).c_str());
  std::printf("grad_inf=%s\n",
              fmt17(reduced_grad(sol).cwiseAbs().maxCoeff()).c_str());
  return 0;
}

int cmd_continue(const std::string& family, double from, double to, int steps,
                 const std::string& out) {
  Branch b = parse_branch(family);
  ReducedPoint seed = solve_branch(b, from);
  auto path = continue_in_d(seed, to, steps);
  std::ostringstream os;
  os << "d";
  for (int i = 0; i < path.front().coeffs.size(); ++i) os << ",a" << i + 1;
  os << ",loss\n";
  for (const auto& r : path) {
    os << fmt17(r.d);
    for (int i = 0; i < r.coeffs.size(); ++i) os << ',' << fmt17(r.coeffs[i]);
    os << ',' << fmt17(reduced_loss(r)) << '\n';
  }
  if (out.empty())
    std::cout << os.str();
  else
    write_file(out, os.str());
  return 0;
}

int cmd_series_verify(const std::string& family) {
  bool ok = true;
  for (const auto& t : series_verify(parse_branch(family))) {
    const double rel =
        std::abs(t.reference) > 1e-12
            ? std::abs(t.fitted - t.reference) / std::abs(t.reference)
            : std::abs(t.fitted);
    const bool pass = rel < 1e-3;
    ok = ok && pass;
    std::printf("a%d d^-%.1f: fitted=%s reference=%s rel=%.3e  %s\n",
                t.coeff_index + 1, t.exponent, fmt17(t.fitted).c_str(),
                fmt17(t.reference).c_str(), rel, pass ? "PASS" : "FAIL");
  }
  return ok ? 0 : 1;
}

int cmd_spectrum(const std::string& family, int d, const std::string& mode,
                 const std::string& out, const std::string& raw_out) {
  Branch b = parse_branch(family);
  json rep;
  rep["family"] = family;
  rep["d"] = d;
  rep["mode"] = mode;
  json clusters = json::array();
  SpectrumReport sp;
  if (mode == "full") {
    TableCheck tc = spectrum_table_check(b, d);
    for (const auto& c : tc.clusters)
      clusters.push_back({{"center", c.center},
                          {"multiplicity", c.multiplicity},
                          {"rep_label", c.rep_label}});
    rep["gauge_modes"] = tc.gauge_modes;
    sp = full_spectrum(lift(solve_branch(b, d)));
  } else if (mode == "first-layer") {
    sp = full_spectrum(lift(solve_branch(b, d)), SpectrumMode::kFirstLayerOnly);
    for (const auto& c : sp.clusters)
      clusters.push_back({{"center", c.center},
                          {"multiplicity", c.multiplicity},
                          {"rep_label", c.rep_label}});
    rep["gauge_modes"] = sp.gauge_modes;
  } else {
    throw CLI::ValidationError("--mode", "expected full or first-layer");
  }
  rep["clusters"] = clusters;
  if (!raw_out.empty()) {
    std::ostringstream os;
    os << "eigenvalue\n";
    for (int i = 0; i < sp.raw.size(); ++i) os << fmt17(sp.raw[i]) << '\n';
    write_file(raw_out, os.str());
    rep["raw_path"] = raw_out;
  }
  const std::string text = rep.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return 0;
}

int cmd_stability(const std::string& family, double lo, double hi) {
  try {
    const double dstar = stability_threshold(parse_branch(family), lo, hi);
    std::printf("d*=%s\n", fmt17(dstar).c_str());
  } catch (const std::runtime_error& e) {
    std::printf("monotone stability: %s\n", e.what());
  }
  return 0;
}

int cmd_multiplicity(const std::string& family, int d) {
  std::printf("%llu\n", static_cast<unsigned long long>(
                            multiplicity(parse_block_family(family), d)));
  return 0;
}

int cmd_sgd(const ExperimentConfig& cfg, const std::string& out) {
  auto records = run_sgd(cfg);
  const std::string csv = runs_to_csv(records);
  if (out.empty())
    std::cout << csv;
  else
    write_file(out, csv);
  int converged = 0, nontrivial = 0;
  for (const auto& r : records) {
    converged += r.converged;
    nontrivial += r.converged && r.isotropy.family != Family::TRIVIAL &&
                  r.isotropy.family != Family::OTHER;
  }
  std::fprintf(stderr, "%d/%d converged, %d at named isotropy\n", converged,
               cfg.runs, nontrivial);
  return 0;
}

int cmd_figure1(const std::string& family, const std::string& d_range,
                const std::string& out) {
  Branch b = parse_branch(family);
  std::ostringstream os;
  os << "d,index,eigenvalue\n";
  for (int d : parse_d_range(d_range)) {
    SpectrumReport sp = full_spectrum(lift(solve_branch(b, d)));
    for (int i = 0; i < sp.raw.size(); ++i)
      os << d << ',' << i << ',' << fmt17(sp.raw[i]) << '\n';
  }
  if (out.empty())
    std::cout << os.str();
  else
    write_file(out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ReLU student-teacher landscape toolkit"};
  app.require_subcommand(1);

  auto* kc = app.add_subcommand("kernel-check", "Monte-Carlo kernel oracle");

  std::string family = "typeII";
  double d_real = 12, from = 12, to = 3, lo = 3, hi = 10;
  int d_int = 12, steps = 16;
  std::string out, raw_out, mode = "full", d_range = "8:64:4";

  auto* sv = app.add_subcommand("solve", "solve a family at real d");
  sv->add_option("--family", family)->required();
  sv->add_option("--d", d_real)->required();

  auto* ct = app.add_subcommand("continue", "continuation path in d");
  ct->add_option("--family", family)->required();
  ct->add_option("--from", from)->required();
  ct->add_option("--to", to)->required();
  ct->add_option("--steps", steps)->required();
  ct->add_option("--out", out);

  auto* se = app.add_subcommand("series-verify",
                                "half-power coefficients vs closed forms");
  se->add_option("--family", family)->required();

  auto* spc = app.add_subcommand("spectrum", "dense Hessian spectrum report");
  spc->add_option("--family", family)->required();
  spc->add_option("--d", d_int)->required();
  spc->add_option("--mode", mode)->check(CLI::IsMember({"full", "first-layer"}));
  spc->add_option("--out", out);
  spc->add_option("--raw-out", raw_out);

  auto* st = app.add_subcommand("stability", "stability threshold in real d");
  st->add_option("--family", family)->required();
  st->add_option("--lo", lo)->required();
  st->add_option("--hi", hi)->required();

  auto* mu = app.add_subcommand("multiplicity", "orbit size of a family");
  mu->add_option("--family", family)->required();
  mu->add_option("--d", d_int)->required();

  ExperimentConfig cfg;
  std::vector<double> teacher;
  auto* sg = app.add_subcommand("sgd", "SGD symmetry-breaking runs");
  sg->add_option("--d", cfg.d)->required();
  sg->add_option("--runs", cfg.runs)->required();
  sg->add_option("--seed", cfg.seed)->required();
  sg->add_option("--lr", cfg.lr);
  sg->add_option("--batch", cfg.batch);
  sg->add_option("--max-steps", cfg.max_steps);
  sg->add_option("--grad-tol", cfg.grad_tol);
  sg->add_option("--teacher-diag", teacher,
                 "teacher diagonal entries (default identity)");
  sg->add_option("--out", out);

  auto* fg = app.add_subcommand("figure1", "eigenvalue-vs-d CSV");
  fg->add_option("--family", family)->required();
  fg->add_option("--d-range", d_range, "A:B or A:B:step");
  fg->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*kc) return cmd_kernel_check();
    if (*sv) return cmd_solve(family, d_real);
    if (*ct) return cmd_continue(family, from, to, steps, out);
    if (*se) return cmd_series_verify(family);
    if (*spc) return cmd_spectrum(family, d_int, mode, out, raw_out);
    if (*st) return cmd_stability(family, lo, hi);
    if (*mu) return cmd_multiplicity(family, d_int);
    if (*sg) {
      cfg.k = cfg.d;
      if (!teacher.empty()) {
        cfg.teacher_diag = Vec(static_cast<int>(teacher.size()));
        for (size_t i = 0; i < teacher.size(); ++i)
          cfg.teacher_diag[static_cast<int>(i)] = teacher[i];
      }
      return cmd_sgd(cfg, out);
    }
    if (*fg) return cmd_figure1(family, d_range, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
