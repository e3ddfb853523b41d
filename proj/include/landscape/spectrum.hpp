#pragma once

#include <map>
#include <string>
#include <vector>

#include "landscape/families.hpp"
#include "landscape/reduced.hpp"
#include "landscape/types.hpp"

namespace landscape {

enum class SpectrumMode { kFull, kFirstLayerOnly };

// One eigenvalue cluster of a dense spectrum.
struct Cluster {
  double center = 0.0;     // mean of the member eigenvalues
  int multiplicity = 0;    // number of members
  std::string rep_label;   // irreducible tag when known, else empty
  double spread = 0.0;     // max |member - center|
};

struct SpectrumReport {
  SpectrumMode mode = SpectrumMode::kFull;
  int d = 0;
  Vec raw;  // all eigenvalues, ascending
  std::vector<Cluster> clusters;
  int gauge_modes = 0;  // count of |eig| < 1e-9 * max|eig|
};

// Default clustering gap: within-cluster spread is O(d^-1/2), between-cluster
// gaps are Theta(1).
double default_cluster_gap(int d);

// Dense symmetric eigendecomposition of the loss Hessian (full (W, alpha)
// space, or the W block only) with greedy gap-based clustering.
SpectrumReport full_spectrum(const NetworkPair& p,
                             SpectrumMode mode = SpectrumMode::kFull,
                             double cluster_gap = 0.0);

// Per-row scaling tangents (w_i, -alpha_i e_i): exact Hessian null directions
// at every critical point (the loss is invariant under w_i -> c w_i,
// alpha_i -> alpha_i / c).
std::vector<Vec> gauge_tangents(const NetworkPair& p);

// One flat (W, alpha) spanning vector per copy of each irreducible in the
// block family's isotypic decomposition, keyed by irreducible tag:
//   t         trivial                       (3 / 7 / 8 / 8 copies)
//   s_p       standard rep of the large block   (4 / 6 / 6 / 6)
//   s_q       standard rep of the small block   (- / - / 5 / 6)
//   x_p, x_q  exterior square of the standard rep
//   y_p       two-row-partition rep of the large block
//   s_p(x)s_q tensor of the two standard reps   (- / - / 2 / 2)
// The span of each group is an invariant subspace of the Hessian at any
// point of the family's fixed subspace.
std::map<std::string, std::vector<Vec>> representative_vectors(Family f,
                                                               int d);

struct TransitionMatrix {
  std::string rep_label;
  Mat entries;            // q x q, in the representative_vectors basis
  int degree = 0;         // irreducible degree = dense multiplicity per copy
  double residual = 0.0;  // worst relative least-squares expansion residual
};

// Hessian compressed to the copies of one irreducible: applies the full
// Hessian to each representative and expands the image back in the
// representative basis.  Throws if the image leaks out of the isotypic span
// by more than 1e-8 relative.
TransitionMatrix transition_matrix(const NetworkPair& p, Family f,
                                   const std::string& rep_label);
std::vector<TransitionMatrix> all_transition_matrices(const NetworkPair& p,
                                                      Family f);

// Real sorted eigenvalues of a (generally non-symmetric) transition matrix.
Vec transition_eigenvalues(const Mat& T);

// Hand-derived closed forms of the compressed Hessian blocks at any point of
// the full-diagonal family, as functions of the point's norms and angles.
// The x/y blocks are 1x1 (their value is the dense eigenvalue); the s and t
// blocks are given in an unspecified orthogonal basis, so only their
// eigenvalues are basis-independent.  All four have removable 0/0
// singularities where the row-vs-own-axis angle vanishes (the exact global
// minimum); evaluate them at generic or perturbed points.
double diag_x_eigenvalue(const ReducedPoint& r);
double diag_y_eigenvalue(const ReducedPoint& r);
Mat diag_s_block(const ReducedPoint& r);  // 4 x 4
Mat diag_t_block(const ReducedPoint& r);  // 3 x 3

// Leading-order spectrum of a named branch at dimension d: cluster centers
// (exact multiplicities, values correct up to O(d^-1/2)).
struct ExpectedLine {
  double center = 0.0;
  int multiplicity = 0;
  std::string rep_label;
};
std::vector<ExpectedLine> expected_spectrum(Branch b, double d);

// Dense spectrum of the solved branch at integer d compared against the
// leading-order table: merged expected centers, nearest-center assignment,
// exact multiplicity verdict, and the worst center deviation.
struct TableCheck {
  Branch branch = Branch::kIdentity;
  int d = 0;
  std::vector<Cluster> clusters;  // expected lines with achieved counts
  bool multiplicities_exact = false;
  double max_residual = 0.0;  // max |eigenvalue - assigned center|
  int gauge_modes = 0;
};
TableCheck spectrum_table_check(Branch b, int d);

// Minimal non-gauge Hessian eigenvalue of a family point at real dimension d.
// Integer d uses the dense Hessian with the scaling tangents projected out;
// fractional d uses the dimension-continued compression described in
// stability.cpp (exact at integers, polynomial in d in between).
double min_nongauge_eigenvalue(const ReducedPoint& r);

// Bisection on real d of the minimal non-gauge eigenvalue along the branch's
// continued solution path; returns the sign-change location within tol.
// Throws std::runtime_error (reporting both endpoint eigenvalues) when the
// eigenvalue does not change sign over [d_lo, d_hi].
double stability_threshold(Branch b, double d_lo, double d_hi,
                           double tol = 1e-3);

}  // namespace landscape
