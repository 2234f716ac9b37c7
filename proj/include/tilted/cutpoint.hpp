#pragma once

// Cut points of a subset A of [n] for weights (p,q), p,q >= 1.
//
// With f(A,u) = |A ∩ [u]|/p and g(A,u) = (n - u - |A \ [u]|)/q, position x is
// a cut point when 0 <= g(A,x) - f(A,x) < 1/p. For p <= q both functions move
// in steps of at most 1/p, so a cut point always exists, but only on the
// extended domain {0} ∪ [n]: for A = [n] the unique cut point is x = 0. For
// p > q the 1/q-sized g steps can skip the window and some sets have no cut
// point at all (A={1} in [2] under (2,1)); the scan then raises
// std::domain_error rather than pretending otherwise.
//
// The equivalent integer characterisation |A∩[x]| = floor(p(n-x-|A\[x]|)/q)
// is implemented separately (floor_equivalence_check) and kept independent of
// the rational route; tests assert the two agree everywhere.

#include "tilted/rational.hpp"
#include "tilted/subset.hpp"

#include <utility>
#include <vector>

namespace tilted {

Rational f_value(const Subset& A, int u, long long p);
Rational g_value(const Subset& A, int u, long long q);

// The defining inequality, evaluated with exact rationals.
bool satisfies_cut_inequality(const Subset& A, int x, long long p,
                              long long q);

struct CutPointReport {
  Subset set;
  long long p = 1;
  long long q = 1;
  std::vector<int> cut_points;                       // ascending, in {0} ∪ [n]
  std::vector<std::pair<Rational, Rational>> trace;  // (f,g) at u = 0..n
};

// All cut points of A. An empty scan is an internal bug for p <= q
// (std::logic_error) and a legitimate outcome for p > q (std::domain_error).
CutPointReport cut_points(const Subset& A, long long p, long long q);

// Smallest cut point (deterministic tie-break; any cut point would do).
int choose_cut_point(const Subset& A, long long p, long long q);

// Integer route: |A∩[x]| == floor((p/q)(n-x-|A\[x]|)).
bool floor_equivalence_check(const Subset& A, int x, long long p, long long q);

}  // namespace tilted
