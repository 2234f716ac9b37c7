#include "tilted/subset.hpp"

#include <algorithm>
#include <numeric>

namespace tilted {

TiltParams normalize_params(TiltParams params) {
  params.validate();
  if (params.p == 0 && params.q == 0) return params;
  const long long g = std::gcd(params.p, params.q);
  params.p /= g;
  params.q /= g;
  return params;
}

namespace {
void require_same_ground(const Subset& F, const Subset& G) {
  if (F.n != G.n)
    throw std::invalid_argument("subsets live on different ground sets (n=" +
                                std::to_string(F.n) + " vs n=" +
                                std::to_string(G.n) + ")");
}
}  // namespace

bool is_forbidden_ordered(const Subset& F, const Subset& G,
                          const TiltParams& params) {
  require_same_ground(F, G);
  params.validate();
  return is_forbidden_ordered_bits(F.bits, G.bits, params);
}

bool is_conflicting_pair(const Subset& F, const Subset& G,
                         const TiltParams& params) {
  require_same_ground(F, G);
  params.validate();
  return is_conflicting_bits(F.bits, G.bits, params);
}

Family Family::from_masks(int n, std::vector<std::uint64_t> masks) {
  Ground ground(n);
  for (std::uint64_t m : masks) {
    if (m & ~ground.full_mask())
      throw std::invalid_argument("family member exceeds ground mask for n=" +
                                  std::to_string(n));
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  Family fam;
  fam.n = n;
  fam.members = std::move(masks);
  return fam;
}

bool Family::contains_mask(std::uint64_t m) const {
  return std::binary_search(members.begin(), members.end(), m);
}

VerifyResult verify_family(const Family& fam, const TiltParams& params,
                           std::size_t max_conflicts) {
  params.validate();
  VerifyResult result;
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.members.size(); ++j) {
      ++result.pairs_checked;
      if (is_conflicting_bits(fam.members[i], fam.members[j], params)) {
        result.valid = false;
        if (result.conflicts.size() < max_conflicts)
          result.conflicts.emplace_back(fam.members[i], fam.members[j]);
      }
    }
  }
  return result;
}

}  // namespace tilted
