#pragma once

// Prefix-deviation band family and the cut-point concentration window.
//
// G = { G ⊆ [n] : some prefix x ∈ [n] has | |[x]∩G| - x/2 | > T }, with
// T = sqrt(n ln n) by default (natural log: the bound chain needs
// exp(-2 ln n) = n^-2). Membership is decided by comparing the integer
// (2|[x]∩G| - x)^2 against 4T^2, so no floating-point tie can flip a verdict
// away from the exact predicate; comparisons that land within 1e-9 of the
// threshold are re-evaluated in long double.
//
// Everything counts exactly: |G| by a ±1 walk DP over prefix deviations,
// per-x violator counts from one binomial row, both integer arithmetic.

#include "tilted/cutpoint.hpp"
#include "tilted/rational.hpp"
#include "tilted/subset.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tilted {

struct BandSpec {
  int n = 0;
  double threshold = 0;       // T
  bool natural_threshold = false;  // T = sqrt(n ln n)

  // Default band: T = sqrt(n ln n); needs n >= 2 so that T > 0.
  static BandSpec natural(int n);
  static BandSpec with_threshold(int n, double t);

  // |deviation| > T, where twice_dev = 2|[x]∩G| - x is exact.
  bool deviation_exceeds(long long twice_dev) const;
};

// Some prefix x ∈ [n] of G deviates beyond T.
bool in_band_family(const Subset& G, const BandSpec& spec);

// Exact |G|: 2^n minus the number of ±1 prefix walks staying inside the band.
std::uint64_t count_band_family(const BandSpec& spec);

// Exact |{G : prefix x of G deviates beyond T}| = 2^(n-x) Σ_{y bad} C(x,y).
std::uint64_t band_violators_at(const BandSpec& spec, int x);

// Two-sided Chernoff-Hoeffding tail bound 2 exp(-2 t^2 / x) for x summands.
double chernoff_rhs(int n, int x, double t);

// Uniform subset conditioned outside the band family (rejection sampling).
Subset sample_outside_band(std::mt19937_64& rng, const BandSpec& spec);

struct CutPointWindowReport {
  double center = 0;  // pn/(p+q)
  double radius = 0;  // 8 sqrt(n ln n)
  std::vector<int> cut_points;
  std::vector<double> distances;  // |x - center| per cut point
  bool all_within = false;
};

// Checks every cut point of F (not just the chosen one) against the window
// |x - pn/(p+q)| <= 8 sqrt(n ln n). Requires 1 <= p <= q and F outside the
// band family; callers screen with in_band_family first.
CutPointWindowReport cut_point_window_check(const Subset& F, long long p,
                                            long long q);

struct WindowRange {
  int lo = 0;
  int hi = 0;
};

// ({0} ∪ [n]) ∩ [pn/(p+q) - 8 sqrt(n ln n), pn/(p+q) + 8 sqrt(n ln n)].
WindowRange concentration_window(int n, long long p, long long q);

// |G| + Σ_{x in window} fx_bound(x, n, q): a fully explicit finite-n family
// size bound. p = 0 or q = 0 degenerates to a plain Sperner family, where the
// exact extremal value C(n, ⌊n/2⌋) is returned instead. Requires n >= 2.
BigInt explicit_upper_bound(int n, long long p, long long q);

}  // namespace tilted
