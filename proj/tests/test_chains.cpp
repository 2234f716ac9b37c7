#include "tilted/chains.hpp"

#include "tilted/cutpoint.hpp"

#include "doctest.h"
#include "oracle.hpp"

#include <algorithm>
#include <random>

using namespace tilted;

namespace {
Subset S(std::initializer_list<int> elems, int n) {
  std::vector<int> v(elems);
  return Subset::from_elements(std::span<const int>(v.data(), v.size()), n);
}

const std::vector<std::pair<long long, long long>> kWeights = {
    {1, 1}, {1, 2}, {2, 1}, {2, 3}, {1, 3}};
}  // namespace

TEST_CASE("j_of values and the step identity") {
  CHECK(j_of(3, 2, 1, 2, 8) == 1);
  CHECK(j_of(5, 3, 1, 2, 8) == 0);  // k = n-x
  CHECK(j_of(4, 0, 2, 3, 10) == 4);
  CHECK_THROWS_AS(j_of(5, 4, 1, 2, 8), std::out_of_range);

  for (int n = 1; n <= 20; ++n)
    for (auto [p, q] : kWeights)
      for (int x = 0; x <= n; ++x)
        for (int k = 0; x + k + q <= n; ++k)
          CHECK(j_of(x, k + static_cast<int>(q), p, q, n) ==
                j_of(x, k, p, q, n) - p);
}

TEST_CASE("canonical sets") {
  CHECK(canonical_set(3, 2, 1, 2, 8).value() == S({1, 4, 5}, 8));
  CHECK(canonical_set(3, 0, 1, 2, 8).value() == S({1, 2}, 8));
  // j = x boundary: exists under <=
  CHECK(canonical_set(4, 0, 2, 3, 10).value() == S({1, 2, 3, 4}, 10));
  // j > x: no such set
  CHECK_FALSE(canonical_set(0, 0, 1, 2, 8).has_value());
  CHECK_THROWS_AS(canonical_set(3, 6, 1, 2, 8), std::out_of_range);
}

TEST_CASE("block permutation action") {
  const BlockPermutation swap12(2, 4, {2, 1}, {1, 2});
  CHECK(swap12.apply(S({1, 3}, 4)) == S({2, 3}, 4));
  const auto id = BlockPermutation::identity(2, 4);
  CHECK(id.apply(S({1, 3}, 4)) == S({1, 3}, 4));
  CHECK(id.apply(Subset(prefix_mask(4), 4)) == Subset(prefix_mask(4), 4));
  // blocks stay blocks
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pi = BlockPermutation::random(3, 8, rng);
    for (std::uint64_t mask = 0; mask < 256; mask += 7) {
      const Subset a(mask, 8);
      const Subset image = pi.apply(a);
      CHECK(image.count() == a.count());
      CHECK(image.count_in_prefix(3) == a.count_in_prefix(3));
      CHECK(image.count_above(3) == a.count_above(3));
    }
  }
  CHECK_THROWS_AS(BlockPermutation(2, 4, {1, 1}, {1, 2}),
                  std::invalid_argument);
}

TEST_CASE("chain members") {
  const auto id8 = BlockPermutation::identity(3, 8);
  const auto chain = chain_members(3, 0, id8, 1, 2, 8);
  REQUIRE(chain.size() == 3);
  CHECK(chain[0] == S({1, 2}, 8));
  CHECK(chain[1] == S({1, 4, 5}, 8));
  CHECK(chain[2] == S({4, 5, 6, 7}, 8));

  const auto id10 = BlockPermutation::identity(4, 10);
  const auto chain2 = chain_members(4, 0, id10, 2, 3, 10);
  REQUIRE(chain2.size() == 3);
  CHECK(chain2[0] == S({1, 2, 3, 4}, 10));
  CHECK(chain2[1] == S({1, 2, 5, 6, 7}, 10));
  CHECK(chain2[2] == S({5, 6, 7, 8, 9, 10}, 10));

  // residue beyond the remaining capacity: nothing to generate
  const auto id_hi = BlockPermutation::identity(7, 8);
  CHECK(chain_members(7, 2, id_hi, 1, 3, 8).empty());

  CHECK_THROWS_AS(chain_members(3, 2, id8, 1, 2, 8), std::invalid_argument);
}

TEST_CASE("chains are pairwise forbidden (o1)") {
  const auto id8 = BlockPermutation::identity(3, 8);
  CHECK(verify_chain_forbidden(chain_members(3, 0, id8, 1, 2, 8), 3, 1, 2));
  const ChainSpec spec = make_chain(3, 0, id8, 1, 2, 8);
  CHECK(spec.members.size() == 3);
  CHECK(verify_chain_forbidden(spec, 1, 2));
  const auto id10 = BlockPermutation::identity(4, 10);
  CHECK(verify_chain_forbidden(chain_members(4, 0, id10, 2, 3, 10), 4, 2, 3));
  CHECK(verify_chain_forbidden({}, 3, 1, 2));
  CHECK(verify_chain_forbidden({S({1, 2}, 8)}, 3, 1, 2));

  // every chain, identity plus sampled permutations, n <= 8 here
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 8; ++n) {
    for (auto [p, q] : kWeights) {
      for (int x = 0; x <= n; ++x) {
        for (int r = 0; r < q; ++r) {
          const auto members =
              chain_members(x, r, BlockPermutation::identity(x, n), p, q, n);
          CHECK(verify_chain_forbidden(members, x, p, q));
          for (int s = 0; s < 5; ++s) {
            const auto pi = BlockPermutation::random(x, n, rng);
            CHECK(verify_chain_forbidden(chain_members(x, r, pi, p, q, n), x,
                                         p, q));
          }
        }
      }
    }
  }
}

TEST_CASE("chain members all have x as cut point") {
  std::mt19937_64 rng(99);
  for (int n = 1; n <= 8; ++n) {
    for (auto [p, q] : kWeights) {
      for (int x = 0; x <= n; ++x) {
        for (int r = 0; r < q; ++r) {
          const auto pi = BlockPermutation::random(x, n, rng);
          for (const Subset& m : chain_members(x, r, pi, p, q, n))
            CHECK(floor_equivalence_check(m, x, p, q));
        }
      }
    }
  }
}

TEST_CASE("o2 surjectivity: every set is a permuted canonical set at its cut point") {
  std::size_t skipped_no_cut_point = 0;
  for (int n = 1; n <= 10; ++n) {
    for (auto [p, q] : kWeights) {
      for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        const Subset f(mask, n);
        int x = -1;
        try {
          x = choose_cut_point(f, p, q);
        } catch (const std::domain_error&) {
          REQUIRE(p > q);  // only the p > q weights may lack cut points
          ++skipped_no_cut_point;
          continue;
        }
        const int k = f.count_above(x);
        const int a = f.count_in_prefix(x);
        REQUIRE(a == j_of(x, k, p, q, n));
        const auto canon = canonical_set(x, k, p, q, n);
        REQUIRE(canon.has_value());

        // send {1..a} onto F∩[x] and {x+1..x+k} onto F\[x]
        std::vector<int> lower, upper;
        for (int e = 1; e <= x; ++e)
          if (f.contains(e)) lower.push_back(e);
        for (int e = 1; e <= x; ++e)
          if (!f.contains(e)) lower.push_back(e);
        for (int e = x + 1; e <= n; ++e)
          if (f.contains(e)) upper.push_back(e - x);
        for (int e = x + 1; e <= n; ++e)
          if (!f.contains(e)) upper.push_back(e - x);
        std::vector<int> pi1(static_cast<std::size_t>(x));
        std::vector<int> pi2(static_cast<std::size_t>(n - x));
        for (int i = 0; i < x; ++i) pi1[static_cast<std::size_t>(i)] = lower[static_cast<std::size_t>(i)];
        for (int i = 0; i < n - x; ++i) pi2[static_cast<std::size_t>(i)] = upper[static_cast<std::size_t>(i)];
        const BlockPermutation pi(x, n, pi1, pi2);
        CHECK(pi.apply(*canon) == f);
      }
    }
  }
  CHECK(skipped_no_cut_point > 0);  // the (2,1) rows do hit the gap
}

TEST_CASE("lym_sum") {
  SUBCASE("single member and empty family") {
    const Family empty = Family::from_masks(8, {});
    CHECK(lym_sum(empty, 3, 1, 2) == Rational(0));
    const Family one = Family::from_masks(8, {S({1, 4, 5}, 8).bits});
    // a=1, k=2: 1/(C(3,1) C(5,2)) = 1/30
    CHECK(lym_sum(one, 3, 1, 2) == Rational(1, 30));
  }
  SUBCASE("member without cut point x is rejected") {
    const Family bad = Family::from_masks(8, {S({1, 2, 3}, 8).bits});
    CHECK_THROWS_AS(lym_sum(bad, 3, 1, 2), std::invalid_argument);
  }
  SUBCASE("every maximal valid family at n=4, (1,2) patterns: sum <= 2 per x") {
    const int n = 4;
    const TiltParams params{1, 2, true};
    // enumerate all maximal independent sets of the conflict graph
    std::vector<std::uint64_t> adj(16, 0);
    for (std::uint64_t i = 0; i < 16; ++i)
      for (std::uint64_t j = i + 1; j < 16; ++j)
        if (testoracle::conflicting(i, j, n, params)) {
          adj[i] |= 1ull << j;
          adj[j] |= 1ull << i;
        }
    std::vector<std::uint64_t> maximal_sets;
    for (std::uint64_t pick = 0; pick < (1ull << 16); ++pick) {
      bool independent = true;
      for (int v = 0; v < 16 && independent; ++v)
        if ((pick >> v) & 1u) independent = (adj[static_cast<std::size_t>(v)] & pick) == 0;
      if (!independent) continue;
      bool maximal = true;
      for (int v = 0; v < 16 && maximal; ++v)
        if (!((pick >> v) & 1u)) maximal = (adj[static_cast<std::size_t>(v)] & pick) != 0;
      if (maximal) maximal_sets.push_back(pick);
    }
    REQUIRE_FALSE(maximal_sets.empty());
    for (std::uint64_t pick : maximal_sets) {
      std::vector<std::vector<std::uint64_t>> slices(static_cast<std::size_t>(n) + 1);
      for (int v = 0; v < 16; ++v)
        if ((pick >> v) & 1u) {
          const Subset m(static_cast<std::uint64_t>(v), n);
          slices[static_cast<std::size_t>(choose_cut_point(m, 1, 2))].push_back(m.bits);
        }
      for (int x = 0; x <= n; ++x) {
        if (slices[static_cast<std::size_t>(x)].empty()) continue;
        const Rational sum =
            lym_sum(Family::from_masks(n, slices[static_cast<std::size_t>(x)]), x, 1, 2);
        CHECK(sum <= 2);
      }
    }
  }
}

TEST_CASE("double_count_check") {
  SUBCASE("empty family") {
    const auto res = double_count_check(Family::from_masks(6, {}), 3, 1, 2);
    CHECK(res.enumerated == 0);
    CHECK(res.identity_ok);
    CHECK(res.bound_ok);
  }
  SUBCASE("singleton canonical family matches the orbit count") {
    const int n = 6, x = 3;
    for (int k = 0; k <= n - x; ++k) {
      const auto canon = canonical_set(x, k, 1, 2, n);
      if (!canon) continue;
      const auto res =
          double_count_check(Family::from_masks(n, {canon->bits}), x, 1, 2);
      const int a = canon->count_in_prefix(x);
      CHECK(res.enumerated ==
            factorial(a) * factorial(x - a) * factorial(k) *
                factorial(n - x - k));
      CHECK(res.identity_ok);
      CHECK(res.bound_ok);
    }
  }
  SUBCASE("valid families at n=6, x=3, (1,2): enumerated <= 72") {
    const int n = 6;
    const TiltParams params{1, 2, true};
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::uint64_t> members;
      for (std::uint64_t m = 0; m < (1ull << n); ++m) {
        if ((rng() & 1u) == 0) continue;
        bool ok = true;
        for (std::uint64_t g : members)
          ok = ok && !testoracle::conflicting(m, g, n, params);
        if (ok) members.push_back(m);
      }
      const auto fam = Family::from_masks(n, members);
      const auto res = double_count_check(fam, 3, 1, 2);
      CHECK(res.identity_ok);
      CHECK(res.bound_ok);
      CHECK(res.bound == 2 * 36);
    }
  }
  SUBCASE("cap on the permutation group size") {
    CHECK_THROWS_AS(double_count_check(Family::from_masks(14, {}), 7, 1, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("fx_bound") {
  CHECK(fx_bound(0, 8, 2) == 2 * binomial(8, 4));
  CHECK(fx_bound(8, 8, 2) == 2 * binomial(8, 4));
  CHECK(fx_bound(4, 8, 2) == 72);
  // Vandermonde: the central-binomial product never exceeds C(n, n/2), so the
  // bound peaks at the degenerate splits x=0 and x=n and dips in the middle.
  for (int n : {6, 9, 12}) {
    BigInt peak = 0;
    for (int x = 0; x <= n; ++x) peak = std::max(peak, fx_bound(x, n, 1));
    CHECK(peak == fx_bound(0, n, 1));
    CHECK(peak == fx_bound(n, n, 1));
    CHECK(fx_bound(n / 2, n, 1) <= peak);
  }
}
