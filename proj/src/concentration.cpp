#include "tilted/concentration.hpp"

#include "tilted/chains.hpp"
#include "tilted/prng.hpp"

#include <cmath>
#include <stdexcept>

namespace tilted {

namespace {
constexpr double kTieGuard = 1e-9;

void require_band_n(int n) {
  if (n < 1 || n > kMaxGround)
    throw std::invalid_argument("band spec needs 1 <= n <= " +
                                std::to_string(kMaxGround));
}
}  // namespace

BandSpec BandSpec::natural(int n) {
  require_band_n(n);
  if (n < 2)
    throw std::invalid_argument(
        "natural band threshold sqrt(n ln n) is not positive for n < 2");
  BandSpec spec;
  spec.n = n;
  spec.threshold = std::sqrt(n * std::log(static_cast<double>(n)));
  spec.natural_threshold = true;
  return spec;
}

BandSpec BandSpec::with_threshold(int n, double t) {
  require_band_n(n);
  if (!(t > 0)) throw std::invalid_argument("band threshold must be > 0");
  BandSpec spec;
  spec.n = n;
  spec.threshold = t;
  return spec;
}

bool BandSpec::deviation_exceeds(long long twice_dev) const {
  const double lhs = static_cast<double>(twice_dev) * static_cast<double>(twice_dev);
  const double rhs = natural_threshold
                         ? 4.0 * n * std::log(static_cast<double>(n))
                         : 4.0 * threshold * threshold;
  if (std::abs(lhs - rhs) < kTieGuard) {
    // Near-tie: redo the comparison at extended precision.
    const long double l = static_cast<long double>(twice_dev) * twice_dev;
    const long double r =
        natural_threshold
            ? 4.0L * n * std::log(static_cast<long double>(n))
            : 4.0L * static_cast<long double>(threshold) * threshold;
    return l > r;
  }
  return lhs > rhs;
}

bool in_band_family(const Subset& G, const BandSpec& spec) {
  if (G.n != spec.n)
    throw std::invalid_argument("subset and band spec ground sets differ");
  int count = 0;
  for (int x = 1; x <= spec.n; ++x) {
    if (G.contains(x)) ++count;
    if (spec.deviation_exceeds(2ll * count - x)) return true;
  }
  return false;
}

std::uint64_t count_band_family(const BandSpec& spec) {
  const int n = spec.n;
  // Walk value S_x = 2|[x]∩G| - x, offset by n into [0, 2n].
  std::vector<std::uint64_t> cur(2 * static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::uint64_t> next(cur.size(), 0);
  std::vector<char> allowed(cur.size(), 0);
  for (int v = -n; v <= n; ++v)
    allowed[static_cast<std::size_t>(v + n)] = !spec.deviation_exceeds(v);
  cur[static_cast<std::size_t>(n)] = 1;  // S_0 = 0
  for (int x = 1; x <= n; ++x) {
    std::fill(next.begin(), next.end(), 0);
    for (int v = -(x - 1); v <= x - 1; ++v) {
      const std::uint64_t c = cur[static_cast<std::size_t>(v + n)];
      if (!c) continue;
      if (allowed[static_cast<std::size_t>(v + 1 + n)])
        next[static_cast<std::size_t>(v + 1 + n)] += c;
      if (allowed[static_cast<std::size_t>(v - 1 + n)])
        next[static_cast<std::size_t>(v - 1 + n)] += c;
    }
    cur.swap(next);
  }
  std::uint64_t stayers = 0;
  for (std::uint64_t c : cur) stayers += c;
  return (1ull << n) - stayers;
}

std::uint64_t band_violators_at(const BandSpec& spec, int x) {
  if (x < 1 || x > spec.n)
    throw std::out_of_range("prefix position x must be in [n]");
  std::uint64_t bad_prefixes = 0;
  for (int y = 0; y <= x; ++y) {
    if (spec.deviation_exceeds(2ll * y - x))
      bad_prefixes += binomial(x, y).convert_to<std::uint64_t>();
  }
  return bad_prefixes << (spec.n - x);
}

double chernoff_rhs(int n, int x, double t) {
  if (x < 1 || x > n)
    throw std::invalid_argument("chernoff_rhs needs 0 < x <= n");
  if (t < 0) throw std::invalid_argument("chernoff_rhs needs t >= 0");
  return 2.0 * std::exp(-2.0 * t * t / x);
}

Subset sample_outside_band(std::mt19937_64& rng, const BandSpec& spec) {
  for (;;) {
    Subset candidate(draw_mask(rng, spec.n), spec.n);
    if (!in_band_family(candidate, spec)) return candidate;
  }
}

namespace {
// |x - pn/(p+q)| <= 8 sqrt(n ln n), decided on squared integers:
// (x(p+q) - pn)^2 <= 64 n ln(n) (p+q)^2, with the same near-tie escalation.
bool within_window(int x, int n, long long p, long long q) {
  const long long num = x * (p + q) - p * n;
  const double lhs = static_cast<double>(num) * static_cast<double>(num);
  const double rhs = 64.0 * n * std::log(static_cast<double>(n)) *
                     static_cast<double>((p + q) * (p + q));
  if (std::abs(lhs - rhs) < kTieGuard) {
    const long double l = static_cast<long double>(num) * num;
    const long double r = 64.0L * n * std::log(static_cast<long double>(n)) *
                          static_cast<long double>((p + q) * (p + q));
    return l <= r;
  }
  return lhs <= rhs;
}
}  // namespace

CutPointWindowReport cut_point_window_check(const Subset& F, long long p,
                                            long long q) {
  if (p < 1 || q < 1)
    throw std::invalid_argument("window check needs p, q >= 1");
  if (p > q)
    throw std::invalid_argument(
        "window check is stated for p <= q; swap roles via the relabeling "
        "i -> n+1-i");
  const BandSpec spec = BandSpec::natural(F.n);
  if (in_band_family(F, spec))
    throw std::invalid_argument(
        "subset lies in the band family; the window lemma does not apply");

  CutPointWindowReport report;
  report.center = static_cast<double>(p) * F.n / static_cast<double>(p + q);
  report.radius = 8.0 * std::sqrt(F.n * std::log(static_cast<double>(F.n)));
  report.cut_points = cut_points(F, p, q).cut_points;
  report.all_within = true;
  for (int x : report.cut_points) {
    report.distances.push_back(std::abs(x - report.center));
    if (!within_window(x, F.n, p, q)) report.all_within = false;
  }
  return report;
}

WindowRange concentration_window(int n, long long p, long long q) {
  WindowRange range{0, n};
  while (range.lo <= n && !within_window(range.lo, n, p, q)) ++range.lo;
  while (range.hi >= 0 && !within_window(range.hi, n, p, q)) --range.hi;
  return range;
}

BigInt explicit_upper_bound(int n, long long p, long long q) {
  if (n < 2)
    throw std::invalid_argument("explicit upper bound needs n >= 2");
  const TiltParams norm = normalize_params(TiltParams{p, q, true});
  if (norm.p == 0 || norm.q == 0) return binomial(n, n / 2);
  BigInt bound = count_band_family(BandSpec::natural(n));
  const WindowRange window = concentration_window(n, norm.p, norm.q);
  for (int x = window.lo; x <= window.hi; ++x)
    bound += fx_bound(x, n, norm.q);
  return bound;
}

}  // namespace tilted
