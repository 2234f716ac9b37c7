#include "tilted/chains.hpp"

#include "tilted/prng.hpp"

#include <algorithm>
#include <numeric>

namespace tilted {

namespace {

void require_q(long long q) {
  if (q < 1)
    throw std::invalid_argument("q must be >= 1, got " + std::to_string(q));
}

void require_p(long long p) {
  if (p < 1)
    throw std::invalid_argument("p must be >= 1, got " + std::to_string(p));
}

std::vector<int> identity_perm(int m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

bool is_perm_of(const std::vector<int>& v, int m) {
  if (static_cast<int>(v.size()) != m) return false;
  std::uint64_t seen = 0;
  for (int e : v) {
    if (e < 1 || e > m || (seen >> (e - 1)) & 1) return false;
    seen |= 1ull << (e - 1);
  }
  return true;
}

}  // namespace

long long j_of(int x, int k, long long p, long long q, int n) {
  require_q(q);
  if (p < 0) throw std::invalid_argument("p must be nonnegative");
  if (x < 0 || k < 0 || x + k > n)
    throw std::out_of_range("j(x,k) needs 0 <= x, 0 <= k, x+k <= n; got x=" +
                            std::to_string(x) + " k=" + std::to_string(k) +
                            " n=" + std::to_string(n));
  return (p * (n - x - k)) / q;
}

std::optional<Subset> canonical_set(int x, int k, long long p, long long q,
                                    int n) {
  const long long j = j_of(x, k, p, q, n);
  if (j > x) return std::nullopt;
  const std::uint64_t low = prefix_mask(static_cast<int>(j));
  const std::uint64_t high = k ? (prefix_mask(k) << x) : 0;
  return Subset(low | high, n);
}

BlockPermutation::BlockPermutation(int x_, int n_, std::vector<int> lower_,
                                   std::vector<int> upper_)
    : x(x_), n(n_), lower(std::move(lower_)), upper(std::move(upper_)) {
  if (x < 0 || x > n || n < 1 || n > kMaxGround)
    throw std::invalid_argument("block permutation needs 0 <= x <= n");
  if (!is_perm_of(lower, x))
    throw std::invalid_argument("lower block is not a permutation of [x]");
  if (!is_perm_of(upper, n - x))
    throw std::invalid_argument("upper block is not a permutation of [n-x]");
}

BlockPermutation BlockPermutation::identity(int x, int n) {
  return BlockPermutation(x, n, identity_perm(x), identity_perm(n - x));
}

BlockPermutation BlockPermutation::random(int x, int n,
                                          std::mt19937_64& rng) {
  auto lower = identity_perm(x);
  auto upper = identity_perm(n - x);
  deterministic_shuffle(lower, rng);
  deterministic_shuffle(upper, rng);
  return BlockPermutation(x, n, std::move(lower), std::move(upper));
}

Subset BlockPermutation::apply(const Subset& A) const {
  if (A.n != n)
    throw std::invalid_argument("permutation and subset ground sets differ");
  std::uint64_t out = 0;
  for (std::uint64_t m = A.bits; m; m &= m - 1)
    out |= 1ull << (apply_element(std::countr_zero(m) + 1) - 1);
  return Subset(out, n);
}

std::vector<Subset> chain_members(int x, int r, const BlockPermutation& pi,
                                  long long p, long long q, int n) {
  require_p(p);
  require_q(q);
  if (r < 0 || r >= q)
    throw std::invalid_argument("residue r must satisfy 0 <= r < q");
  if (pi.x != x || pi.n != n)
    throw std::invalid_argument("permutation does not match (x, n)");
  std::vector<Subset> members;
  for (int k = r; k <= n - x; k += static_cast<int>(q)) {
    if (auto c = canonical_set(x, k, p, q, n)) members.push_back(pi.apply(*c));
  }
  return members;
}

ChainSpec make_chain(int x, int r, BlockPermutation pi, long long p,
                     long long q, int n) {
  ChainSpec spec;
  spec.x = x;
  spec.r = r;
  spec.members = chain_members(x, r, pi, p, q, n);
  spec.pi = std::move(pi);
  return spec;
}

bool verify_chain_forbidden(const ChainSpec& spec, long long p, long long q) {
  return verify_chain_forbidden(spec.members, spec.x, p, q);
}

bool verify_chain_forbidden(const std::vector<Subset>& members, int x,
                            long long p, long long q) {
  require_p(p);
  require_q(q);
  const TiltParams patterns_on{p, q, true};
  for (const Subset& m : members) {
    // x must be a cut point of every member: |M∩[x]| = j(x, |M\[x]|).
    if (m.count_in_prefix(x) != j_of(x, m.count_above(x), p, q, m.n))
      return false;
  }
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const Subset& small_k = members[a];
      const Subset& large_k = members[b];
      const std::uint64_t gain = large_k.bits & ~small_k.bits;
      const std::uint64_t loss = small_k.bits & ~large_k.bits;
      const int dk = large_k.count_above(x) - small_k.count_above(x);
      const int dj = small_k.count_in_prefix(x) - large_k.count_in_prefix(x);
      if (std::popcount(gain) != dk || std::popcount(loss) != dj) return false;
      if (gain & prefix_mask(x)) return false;   // gained elements exceed x
      if (loss & ~prefix_mask(x)) return false;  // lost elements lie in [x]
      if (!is_forbidden_ordered_bits(large_k.bits, small_k.bits, patterns_on))
        return false;
    }
  }
  return true;
}

Rational lym_sum(const Family& fam, int x, long long p, long long q) {
  require_p(p);
  require_q(q);
  if (x < 0 || x > fam.n)
    throw std::out_of_range("x outside {0}∪[n] for n=" + std::to_string(fam.n));
  Rational sum = 0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Subset f = fam.member(i);
    const int a = f.count_in_prefix(x);
    const int k = f.count_above(x);
    if (a != j_of(x, k, p, q, fam.n))
      throw std::invalid_argument(
          "family member without cut point x=" + std::to_string(x));
    sum += Rational(1, binomial(x, a) * binomial(fam.n - x, k));
  }
  return sum;
}

DoubleCountResult double_count_check(const Family& fam, int x, long long p,
                                     long long q) {
  require_p(p);
  require_q(q);
  const int n = fam.n;
  if (x < 0 || x > n)
    throw std::out_of_range("x outside {0}∪[n] for n=" + std::to_string(n));
  const BigInt group_order = factorial(x) * factorial(n - x);
  if (group_order > kDoubleCountCap)
    throw std::invalid_argument("x!(n-x)! = " + group_order.str() +
                                " exceeds the enumeration cap " +
                                std::to_string(kDoubleCountCap));

  DoubleCountResult result;
  result.bound = q * group_order;

  // Analytic side: each member F with cut point x is reached by exactly
  // a!(x-a)! k!(n-x-k)! permutations (and a single (r,t), determined by k).
  result.analytic = 0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Subset f = fam.member(i);
    const int a = f.count_in_prefix(x);
    const int k = f.count_above(x);
    if (a == j_of(x, k, p, q, n))
      result.analytic += factorial(a) * factorial(x - a) * factorial(k) *
                         factorial(n - x - k);
  }

  // Enumerated side: every π ∈ Π_x, every existing C(x,k). The (r,t) double
  // index is in bijection with k = tq+r, 0 <= k <= n-x.
  std::vector<std::uint64_t> canon;
  for (int k = 0; k <= n - x; ++k) {
    if (auto c = canonical_set(x, k, p, q, n)) canon.push_back(c->bits);
  }

  std::uint64_t hits = 0;
  std::vector<int> pi1 = identity_perm(x);
  do {
    std::vector<int> pi2 = identity_perm(n - x);
    do {
      for (std::uint64_t cbits : canon) {
        std::uint64_t image = 0;
        for (std::uint64_t m = cbits; m; m &= m - 1) {
          const int i = std::countr_zero(m) + 1;
          const int target = i <= x ? pi1[static_cast<std::size_t>(i) - 1]
                                    : pi2[static_cast<std::size_t>(i - x) - 1] + x;
          image |= 1ull << (target - 1);
        }
        if (fam.contains_mask(image)) ++hits;
      }
    } while (std::next_permutation(pi2.begin(), pi2.end()));
  } while (std::next_permutation(pi1.begin(), pi1.end()));

  result.enumerated = hits;
  result.identity_ok = result.enumerated == result.analytic;
  result.bound_ok = result.enumerated <= result.bound;
  return result;
}

BigInt fx_bound(int x, int n, long long q) {
  require_q(q);
  if (x < 0 || x > n)
    throw std::out_of_range("x outside {0}∪[n] for n=" + std::to_string(n));
  return q * binomial(x, x / 2) * binomial(n - x, (n - x) / 2);
}

}  // namespace tilted
