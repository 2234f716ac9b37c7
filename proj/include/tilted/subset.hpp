#pragma once

// Ground set, subset masks, tilt parameters and the forbidden-pair predicate.
//
// Element i of [n] = {1,...,n} lives at bit i-1 (bit 0 = element 1), n <= 62
// so every count up to 2^n fits an unsigned 64-bit integer. An ordered pair
// (F,G) is forbidden when
//   (i)  p|F\G| = q|G\F|, and
//   (ii) every element of F\G exceeds every element of G\F   [patterns only]
// with (ii) vacuously true when either difference is empty. The (0,0) variant
// (patterns required) skips (i) entirely. Both difference conditions reduce to
// O(1) word operations: (ii) with nonempty differences is
// min(F\G) > max(G\F).

#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tilted {

inline constexpr int kMaxGround = 62;

// Mask of the prefix {1,...,u}; u clamped to [0,64].
inline constexpr std::uint64_t prefix_mask(int u) {
  if (u <= 0) return 0;
  if (u >= 64) return ~0ull;
  return (1ull << u) - 1;
}

struct Ground {
  int n = 0;

  explicit Ground(int n_) : n(n_) {
    if (n < 1 || n > kMaxGround)
      throw std::invalid_argument("ground size n must be in [1," +
                                  std::to_string(kMaxGround) + "], got " +
                                  std::to_string(n_));
  }
  std::uint64_t full_mask() const { return prefix_mask(n); }
  std::uint64_t subset_count() const { return 1ull << n; }
};

struct Subset {
  std::uint64_t bits = 0;
  int n = 0;

  Subset() = default;
  Subset(std::uint64_t bits_, int n_) : bits(bits_), n(n_) {
    if (n < 1 || n > kMaxGround)
      throw std::invalid_argument("subset ground size out of range: " +
                                  std::to_string(n_));
    if (bits & ~prefix_mask(n))
      throw std::invalid_argument("subset mask uses bits beyond n=" +
                                  std::to_string(n_));
  }

  static Subset from_elements(std::span<const int> elems, int n) {
    std::uint64_t bits = 0;
    for (int e : elems) {
      if (e < 1 || e > n)
        throw std::invalid_argument("element " + std::to_string(e) +
                                    " out of range for n=" + std::to_string(n));
      bits |= 1ull << (e - 1);
    }
    return Subset(bits, n);
  }

  bool contains(int i) const { return (bits >> (i - 1)) & 1u; }
  int count() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }

  // Smallest / largest element label; 0 on the empty set.
  int min_element() const { return bits ? std::countr_zero(bits) + 1 : 0; }
  int max_element() const { return bits ? 64 - std::countl_zero(bits) : 0; }

  int count_in_prefix(int u) const {  // |A ∩ [u]|
    return std::popcount(bits & prefix_mask(u));
  }
  int count_above(int u) const {  // |A \ [u]|
    return std::popcount(bits & ~prefix_mask(u));
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::uint64_t m = bits; m; m &= m - 1)
      out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  friend bool operator==(const Subset&, const Subset&) = default;
};

struct TiltParams {
  long long p = 1;
  long long q = 0;
  bool patterns = false;

  void validate() const {
    if (p < 0 || q < 0)
      throw std::invalid_argument("tilt parameters must be nonnegative");
    if (p == 0 && q == 0 && !patterns)
      throw std::invalid_argument(
          "p=q=0 requires the patterns variant (plain condition (i) would be "
          "vacuous)");
  }
};

// Coprime form (p/g, q/g) with g = gcd(p,q); the (0,0) variant passes through.
TiltParams normalize_params(TiltParams params);

// Ordered Def-2 predicate on raw masks sharing a ground set. No validation;
// params are assumed validated.
inline bool is_forbidden_ordered_bits(std::uint64_t f, std::uint64_t g,
                                      const TiltParams& params) noexcept {
  if (f == g) return false;
  const std::uint64_t fmg = f & ~g;
  const std::uint64_t gmf = g & ~f;
  if (params.p != 0 || params.q != 0) {
    if (params.p * std::popcount(fmg) != params.q * std::popcount(gmf))
      return false;
    if (!params.patterns) return true;
  }
  if (fmg == 0 || gmf == 0) return true;  // (ii) vacuous
  return std::countr_zero(fmg) > 63 - std::countl_zero(gmf);
}

inline bool is_conflicting_bits(std::uint64_t f, std::uint64_t g,
                                const TiltParams& params) noexcept {
  return is_forbidden_ordered_bits(f, g, params) ||
         is_forbidden_ordered_bits(g, f, params);
}

bool is_forbidden_ordered(const Subset& F, const Subset& G,
                          const TiltParams& params);
bool is_conflicting_pair(const Subset& F, const Subset& G,
                         const TiltParams& params);

// A family of distinct subsets of one ground set, stored in ascending numeric
// mask order (the determinism contract for all downstream output).
struct Family {
  int n = 0;
  std::vector<std::uint64_t> members;

  static Family from_masks(int n, std::vector<std::uint64_t> masks);

  std::size_t size() const { return members.size(); }
  Subset member(std::size_t i) const { return Subset(members[i], n); }
  bool contains_mask(std::uint64_t m) const;
};

struct VerifyResult {
  bool valid = true;
  // Conflicting unordered pairs as (smaller mask, larger mask), in scan order.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> conflicts;
  std::uint64_t pairs_checked = 0;
};

// O(|fam|^2) pairwise check; the reference oracle for the search module.
// Collects at most max_conflicts conflicting pairs (validity is still exact).
VerifyResult verify_family(
    const Family& fam, const TiltParams& params,
    std::size_t max_conflicts = std::numeric_limits<std::size_t>::max());

}  // namespace tilted
