#include "tilted/cutpoint.hpp"

namespace tilted {

namespace {
void require_weight(long long w, const char* name) {
  if (w < 1)
    throw std::invalid_argument(std::string(name) + " must be >= 1, got " +
                                std::to_string(w));
}
void require_position(const Subset& A, int u) {
  if (u < 0 || u > A.n)
    throw std::out_of_range("position " + std::to_string(u) +
                            " outside {0}∪[n] for n=" + std::to_string(A.n));
}
}  // namespace

Rational f_value(const Subset& A, int u, long long p) {
  require_weight(p, "p");
  require_position(A, u);
  return Rational(A.count_in_prefix(u), p);
}

Rational g_value(const Subset& A, int u, long long q) {
  require_weight(q, "q");
  require_position(A, u);
  return Rational(A.n - u - A.count_above(u), q);
}

bool satisfies_cut_inequality(const Subset& A, int x, long long p,
                              long long q) {
  const Rational diff = g_value(A, x, q) - f_value(A, x, p);
  return diff >= 0 && diff * p < 1;
}

namespace {
// Existence is guaranteed only for p <= q: g moves in steps of 1/q, which fit
// inside the width-1/p window exactly when 1/q <= 1/p. For p > q the window
// can be skipped outright (A={1} in [2] under (2,1): g-f passes 1, 1/2, -1/2).
[[noreturn]] void report_no_cut_point(long long p, long long q) {
  if (p <= q)
    throw std::logic_error("internal invariant violated: no cut point found");
  throw std::domain_error(
      "set has no (" + std::to_string(p) + "," + std::to_string(q) +
      ")-cut point; existence is guaranteed only for p <= q");
}
}  // namespace

CutPointReport cut_points(const Subset& A, long long p, long long q) {
  require_weight(p, "p");
  require_weight(q, "q");
  CutPointReport report;
  report.set = A;
  report.p = p;
  report.q = q;
  report.trace.reserve(static_cast<std::size_t>(A.n) + 1);
  for (int u = 0; u <= A.n; ++u) {
    Rational f = f_value(A, u, p);
    Rational g = g_value(A, u, q);
    Rational diff = g - f;
    if (diff >= 0 && diff * p < 1) report.cut_points.push_back(u);
    report.trace.emplace_back(std::move(f), std::move(g));
  }
  if (report.cut_points.empty()) report_no_cut_point(p, q);
  return report;
}

int choose_cut_point(const Subset& A, long long p, long long q) {
  require_weight(p, "p");
  require_weight(q, "q");
  for (int u = 0; u <= A.n; ++u) {
    if (satisfies_cut_inequality(A, u, p, q)) return u;
  }
  report_no_cut_point(p, q);
}

bool floor_equivalence_check(const Subset& A, int x, long long p,
                             long long q) {
  require_weight(p, "p");
  require_weight(q, "q");
  require_position(A, x);
  const long long above_outside = A.n - x - A.count_above(x);
  return A.count_in_prefix(x) == (p * above_outside) / q;
}

}  // namespace tilted
