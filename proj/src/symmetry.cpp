#include "landscape/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace landscape {

int template_coeff_at(Family f, int d, int r, int c) {
  const int p = family_p(f);
  const int t = d - p;
  if (r < t && c < t) return r == c ? 0 : 1;
  if (r < t) return 2;                    // a3 column block
  if (c < t) return 3;                    // a4 row block
  return r == c ? 4 : 5;                  // small diagonal block
}

Mat template_matrix(Family f, int d, const Vec& coeffs) {
  const int m = family_coeff_count(f);
  if (coeffs.size() != m) throw std::invalid_argument("coefficient count");
  const int p = family_p(f);
  // The matrix is well-defined whenever the top block is nonempty; when
  // d == p + 1 the off-diagonal class of the 1x1 top block is simply unused.
  if (d <= p) throw std::invalid_argument("d too small for family");
  Mat M(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const int idx = template_coeff_at(f, d, r, c);
      if (idx >= m) throw std::logic_error("template slot out of range");
      M(r, c) = coeffs[idx];
    }
  return M;
}

NetworkPair lift(const ReducedPoint& r) {
  const double di = std::round(r.d);
  if (std::abs(r.d - di) > 1e-12)
    throw std::domain_error("lift requires an integer dimension");
  const int d = static_cast<int>(di);
  Mat M = template_matrix(r.family, d, r.coeffs);
  Vec lam = r.lambdas.size() ? r.lambdas : Vec::Ones(d);
  if (lam.size() != d) throw std::invalid_argument("lambda size");
  Vec alpha(d);
  for (int i = 0; i < d; ++i) {
    if (lam[i] <= 0.0) throw std::invalid_argument("lambdas must be positive");
    M.row(i) *= lam[i];
    alpha[i] = 1.0 / lam[i];
  }
  return NetworkPair(M, alpha);
}

ReducedPoint reduce(const NetworkPair& p, const IsotropyClass& cls) {
  const int d = p.d();
  if (p.k() != d) throw std::invalid_argument("reduce requires k = d");
  const int m = family_coeff_count(cls.family);
  const int split = family_p(cls.family);
  const int t = d - split;

  // Undo the row scaling gauge: Diag(alpha) W has lambda = 1 coordinates.
  Mat M = p.W;
  for (int i = 0; i < d; ++i) M.row(i) *= p.alpha[i];

  ReducedPoint r;
  r.family = cls.family;
  r.d = d;
  r.lambdas = Vec::Ones(d);
  for (int i = 0; i < d; ++i) r.lambdas[i] = 1.0 / p.alpha[i];
  r.coeffs = Vec::Zero(m);
  r.coeffs[0] = M(0, 0);
  if (t >= 2) r.coeffs[1] = M(0, 1);
  if (m >= 5) {
    r.coeffs[2] = M(0, d - 1);
    r.coeffs[3] = M(d - 1, 0);
    r.coeffs[4] = M(d - 1, d - 1);
  }
  if (m >= 6 && split >= 2) r.coeffs[5] = M(d - 2, d - 1);

  const Mat rebuilt = template_matrix(cls.family, d, r.coeffs);
  const double resid = (M - rebuilt).cwiseAbs().maxCoeff();
  if (resid > 1e-9)
    throw std::runtime_error("matrix is not in the requested fixed-point "
                             "subspace (residual " + std::to_string(resid) +
                             ")");
  return r;
}

namespace {

// Groups indices whose key vectors agree entrywise within tol.
std::vector<std::vector<int>> group_by_signature(
    const std::vector<Vec>& keys, double tol) {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(keys.size()); ++i) {
    bool placed = false;
    for (auto& g : groups) {
      if ((keys[g[0]] - keys[i]).cwiseAbs().maxCoeff() <= tol) {
        g.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({i});
  }
  return groups;
}

Vec sorted_copy(const Vec& v) {
  Vec s = v;
  std::sort(s.data(), s.data() + s.size());
  return s;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// Produces candidate row -> column matchings identifying the diagonal of a
// block.  For blocks of size <= 3 all bijections are enumerated; for larger
// blocks each row's distinguished column (the entry deviating from the
// row's majority value) determines the matching uniquely.
std::vector<std::vector<std::pair<int, int>>> diagonal_matchings(
    const Mat& W, const std::vector<int>& rows, const std::vector<int>& cols,
    double tol) {
  std::vector<std::vector<std::pair<int, int>>> result;
  if (rows.size() != cols.size()) return result;
  const size_t n = rows.size();
  if (n <= 3) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    do {
      std::vector<std::pair<int, int>> m;
      for (size_t a = 0; a < n; ++a) m.push_back({rows[a], cols[order[a]]});
      result.push_back(std::move(m));
    } while (std::next_permutation(order.begin(), order.end()));
    return result;
  }
  std::vector<bool> used(n, false);
  std::vector<int> undecided;
  std::vector<std::pair<int, int>> out(n, {-1, -1});
  for (size_t a = 0; a < n; ++a) {
    std::vector<double> vals;
    for (int c : cols) vals.push_back(W(rows[a], c));
    const double med = median_of(vals);
    int hit = -1;
    int n_hits = 0;
    for (size_t b = 0; b < n; ++b)
      if (std::abs(vals[b] - med) > tol) {
        hit = static_cast<int>(b);
        ++n_hits;
      }
    if (n_hits > 1) return result;
    if (n_hits == 1) {
      if (used[hit]) return result;
      used[hit] = true;
      out[a] = {rows[a], cols[hit]};
    } else {
      undecided.push_back(static_cast<int>(a));
    }
  }
  size_t next_free = 0;
  for (int a : undecided) {
    while (next_free < n && used[next_free]) ++next_free;
    if (next_free == n) return result;
    used[next_free] = true;
    out[a] = {rows[a], cols[next_free]};
  }
  result.push_back(std::move(out));
  return result;
}

Family family_of_p(int p) {
  switch (p) {
    case 0: return Family::FULL_DIAG;
    case 1: return Family::SPLIT_1;
    case 2: return Family::SPLIT_2;
    case 3: return Family::SPLIT_3;
    default: return Family::OTHER;
  }
}

bool try_split(const Mat& W, int p, double tol, IsotropyClass& out) {
  const int d = static_cast<int>(W.rows());
  const int t = d - p;
  if (t < 2 || p < 0) return false;

  std::vector<Vec> row_keys(d), col_keys(d);
  for (int i = 0; i < d; ++i) {
    row_keys[i] = sorted_copy(W.row(i));
    col_keys[i] = sorted_copy(W.col(i));
  }
  auto row_groups = group_by_signature(row_keys, tol);
  auto col_groups = group_by_signature(col_keys, tol);
  const size_t expected = (p == 0) ? 1 : 2;
  if (row_groups.size() != expected || col_groups.size() != expected)
    return false;

  // Try both role assignments when the two groups have equal sizes.
  std::vector<std::pair<int, int>> row_roles, col_roles;  // (top idx, bot idx)
  auto roles_of = [&](const std::vector<std::vector<int>>& g)
      -> std::vector<std::pair<int, int>> {
    if (p == 0) return {{0, -1}};
    std::vector<std::pair<int, int>> roles;
    if (static_cast<int>(g[0].size()) == t &&
        static_cast<int>(g[1].size()) == p)
      roles.push_back({0, 1});
    if (static_cast<int>(g[1].size()) == t &&
        static_cast<int>(g[0].size()) == p)
      roles.push_back({1, 0});
    return roles;
  };

  for (auto [rt, rb] : roles_of(row_groups)) {
    for (auto [ct, cb] : roles_of(col_groups)) {
      const std::vector<int>& top_rows = row_groups[rt];
      const std::vector<int>& top_cols = col_groups[ct];
      std::vector<int> bot_rows, bot_cols;
      if (p > 0) {
        bot_rows = row_groups[rb];
        bot_cols = col_groups[cb];
      }
      const auto top_options = diagonal_matchings(W, top_rows, top_cols, tol);
      std::vector<std::vector<std::pair<int, int>>> bot_options;
      if (p > 0)
        bot_options = diagonal_matchings(W, bot_rows, bot_cols, tol);
      else
        bot_options.push_back({});

      for (const auto& top_match : top_options) {
        for (const auto& bot_match : bot_options) {
          Perm pi(d), rho(d);
          int pos = 0;
          for (auto [r, c] : top_match) {
            pi[r] = pos;
            rho[c] = pos;
            ++pos;
          }
          for (auto [r, c] : bot_match) {
            pi[r] = pos;
            rho[c] = pos;
            ++pos;
          }
          Mat Wc(d, d);
          for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) Wc(pi[r], rho[c]) = W(r, c);

          // Average each coefficient class, rebuild, and verify entrywise.
          double sums[6] = {0, 0, 0, 0, 0, 0};
          int counts[6] = {0, 0, 0, 0, 0, 0};
          auto slot = [&](int r, int c) {
            return (r < t && c < t) ? (r == c ? 0 : 1)
                   : (r < t)        ? 2
                   : (c < t)        ? 3
                                    : (r == c ? 4 : 5);
          };
          for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
              sums[slot(r, c)] += Wc(r, c);
              ++counts[slot(r, c)];
            }
          double dev = 0.0;
          for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
              dev = std::max(dev, std::abs(Wc(r, c) -
                                           sums[slot(r, c)] / counts[slot(r, c)]));
          if (dev <= tol) {
            out.family = family_of_p(p);
            out.p = p;
            out.conjugators = std::make_pair(pi, rho);
            return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace

IsotropyClass detect_isotropy(const Mat& W, double tol) {
  if (W.rows() != W.cols()) throw std::invalid_argument("square matrix only");
  const int d = static_cast<int>(W.rows());
  IsotropyClass cls;
  for (int p = 0; p <= 3 && p < d - 1; ++p)
    if (try_split(W, p, tol, cls)) return cls;
  for (int p = 4; p < d - 1; ++p)
    if (try_split(W, p, tol, cls)) {
      cls.family = Family::OTHER;
      return cls;
    }
  cls.family = Family::TRIVIAL;
  cls.p = -1;
  cls.conjugators.reset();
  return cls;
}

std::uint64_t multiplicity(Family f, int d) {
  const int p = family_p(f);
  // |S_d x S_d| / |iso| = d! * d! / ((d-p)! p!) = d! * C(d,p) * p!/p!.
  auto mul_checked = [](std::uint64_t a, std::uint64_t b) {
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    if (r > UINT64_MAX) throw std::overflow_error("multiplicity overflow");
    return static_cast<std::uint64_t>(r);
  };
  std::uint64_t fact = 1;
  for (int i = 2; i <= d; ++i) fact = mul_checked(fact, i);
  std::uint64_t choose = 1;
  for (int i = 0; i < p; ++i) choose = mul_checked(choose, d - i);
  for (int i = 2; i <= p; ++i) choose /= i;
  return mul_checked(fact, choose);
}

Mat project_to_subspace(const Mat& G, Family f) {
  const int d = static_cast<int>(G.rows());
  double sums[6] = {0, 0, 0, 0, 0, 0};
  int counts[6] = {0, 0, 0, 0, 0, 0};
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const int idx = template_coeff_at(f, d, r, c);
      sums[idx] += G(r, c);
      ++counts[idx];
    }
  Mat P(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const int idx = template_coeff_at(f, d, r, c);
      P(r, c) = sums[idx] / counts[idx];
    }
  return P;
}

Vec class_sums(const Mat& G, Family f) {
  const int d = static_cast<int>(G.rows());
  const int m = family_coeff_count(f);
  Vec s = Vec::Zero(m);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) s[template_coeff_at(f, d, r, c)] += G(r, c);
  return s;
}

}  // namespace landscape
