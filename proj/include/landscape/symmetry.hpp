#pragma once

#include "landscape/types.hpp"

namespace landscape {

// Index of the template coefficient occupying position (r, c) of the d x d
// canonical block matrix of a named family (0-based return value in 0..m-1),
// or -1 if the family has no such coefficient slot.
int template_coeff_at(Family f, int d, int r, int c);

// Canonical block matrix of a named family at integer dimension d.
Mat template_matrix(Family f, int d, const Vec& coeffs);

// Builds the full network from block coordinates: W = Diag(lambda) * M(a),
// alpha = lambda^{-1}, teacher = (I, 1).  Requires integer r.d.
NetworkPair lift(const ReducedPoint& r);

// Reads the block coefficients of a network whose W lies in the fixed-point
// subspace of `cls` (canonical orientation); throws if the residual between
// W and the rebuilt template exceeds 1e-9.
ReducedPoint reduce(const NetworkPair& p, const IsotropyClass& cls);

// Largest named block symmetry (p <= 3, in order p = 0, 1, 2, 3) under which
// some row/column reordering of W matches the canonical template entrywise
// within tol; OTHER for larger splits, TRIVIAL if none.
IsotropyClass detect_isotropy(const Mat& W, double tol);

// Orbit size of a family point under simultaneous row/column permutations:
// d!, d*d!, d!*C(d,2), d!*C(d,3) for p = 0, 1, 2, 3.
std::uint64_t multiplicity(Family f, int d);

// Orthogonal projection of a d x d matrix onto the fixed-point subspace of
// the named family (entry average over each template coefficient class).
Mat project_to_subspace(const Mat& G, Family f);

// Sum of the entries of G over each coefficient class of the family: the
// chain-rule image of a matrix gradient under the template parameterization.
Vec class_sums(const Mat& G, Family f);

}  // namespace landscape
