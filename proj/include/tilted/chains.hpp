#pragma once

// Permutation-method apparatus: canonical sets C(x,k), block permutations of
// [x] and [n]\[x], the chains they generate, the chain double-counting
// identity and the LYM-type inequality it yields.
//
// For x + k <= n let j(x,k) = floor(p(n-x-k)/q) and
//   C(x,k) = {1,...,j(x,k)} ∪ {x+1,...,x+k},
// which exists when j(x,k) <= x. A block permutation π = (π1,π2) permutes
// [x] and [n]\[x] separately; the chain at (x, r, π) is
//   { π(C(x, tq+r)) : t >= 0, tq+r <= n-x, C exists },
// listed in increasing t. Distinct chain members are always forbidden as an
// ordered pair (larger-k member first): one chain carries at most one member
// of a valid family, which is what the double count integrates over Π_x.

#include "tilted/rational.hpp"
#include "tilted/subset.hpp"

#include <optional>
#include <random>
#include <vector>

namespace tilted {

// floor(p(n-x-k)/q); requires 0 <= x, 0 <= k, x+k <= n, q >= 1.
// Satisfies j(x, k+q) = j(x,k) - p whenever both sides are defined.
long long j_of(int x, int k, long long p, long long q, int n);

// C(x,k), or nullopt when j(x,k) > x. The boundary case j(x,k) = x is a
// well-defined set and is needed for surjectivity onto families with full
// lower block, so existence uses <= x, not < x.
std::optional<Subset> canonical_set(int x, int k, long long p, long long q,
                                    int n);

// π = (π1,π2) ∈ S_x × S_{n-x} acting on [n]: π(i) = π1(i) for i <= x,
// π(i) = π2(i-x) + x for i > x.
struct BlockPermutation {
  int x = 0;
  int n = 0;
  std::vector<int> lower;  // lower[i-1] = π1(i), a permutation of [x]
  std::vector<int> upper;  // upper[i-1] = π2(i), a permutation of [n-x]

  BlockPermutation() = default;  // empty placeholder; apply() needs n >= 1
  BlockPermutation(int x, int n, std::vector<int> lower,
                   std::vector<int> upper);
  static BlockPermutation identity(int x, int n);
  static BlockPermutation random(int x, int n, std::mt19937_64& rng);

  int apply_element(int i) const {
    return i <= x ? lower[static_cast<std::size_t>(i) - 1]
                  : upper[static_cast<std::size_t>(i - x) - 1] + x;
  }
  Subset apply(const Subset& A) const;
};

// Existing members π(C(x, tq+r)) for t = 0,1,...; may be empty. 0 <= r < q.
std::vector<Subset> chain_members(int x, int r, const BlockPermutation& pi,
                                  long long p, long long q, int n);

// One chain: the residue class r at split x under a block permutation.
struct ChainSpec {
  int x = 0;
  int r = 0;
  BlockPermutation pi;
  std::vector<Subset> members;  // increasing t
};

ChainSpec make_chain(int x, int r, BlockPermutation pi, long long p,
                     long long q, int n);

// True iff every distinct member pair is forbidden (patterns on) in the
// larger-k-first orientation AND the structural facts behind that claim hold:
// |F\G| = k'-k and lives above x, |G\F| = j(x,k)-j(x,k') and lives in [x],
// and every member M has |M∩[x]| = j(x, |M\[x]|) (x is a cut point of M).
bool verify_chain_forbidden(const std::vector<Subset>& members, int x,
                            long long p, long long q);
bool verify_chain_forbidden(const ChainSpec& spec, long long p, long long q);

// Σ_{F ∈ fam} 1 / (C(x,|F∩[x]|) · C(n-x,|F\[x]|)), exact. Every member must
// have x as a cut point (|F∩[x]| = j(x,|F\[x]|)); throws otherwise. For the
// x-slice of a valid patterns family the value is <= q.
Rational lym_sum(const Family& fam, int x, long long p, long long q);

struct DoubleCountResult {
  BigInt enumerated;   // #{(π,r,t) : π(C(x,tq+r)) ∈ fam} by brute force
  BigInt analytic;     // Σ_F a!(x-a)!k!(n-x-k)! over members with cut point x
  BigInt bound;        // q · x! · (n-x)!
  bool identity_ok = false;  // enumerated == analytic (exact, any family)
  bool bound_ok = false;     // enumerated <= bound (guaranteed if fam valid)
};

// Enumerates all of Π_x; requires x!(n-x)! <= 10^6.
DoubleCountResult double_count_check(const Family& fam, int x, long long p,
                                     long long q);

inline constexpr long long kDoubleCountCap = 1'000'000;

// q · C(x,⌊x/2⌋) · C(n-x,⌊(n-x)/2⌋): the largest possible x-slice permitted
// by the LYM sum (every term is at least 1 over the central binomial product).
BigInt fx_bound(int x, int n, long long q);

}  // namespace tilted
