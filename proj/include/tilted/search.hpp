#pragma once

// Extremal search: a family is valid iff it is an independent set of the
// conflict graph on subsets (edge = conflicting pair), so maximum family
// sizes are maximum independent sets. Exact answers come from a deterministic
// branch-and-bound with greedy clique-cover bounds; lower bounds from greedy
// insertion and from the level constructions.

#include "tilted/rational.hpp"
#include "tilted/subset.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace tilted {

inline constexpr std::size_t kMaxGraphVertices = std::size_t{1} << 16;

struct ConflictGraph {
  int n = 0;
  TiltParams params;
  std::vector<std::uint64_t> vertices;   // masks, ascending
  std::size_t row_words = 0;
  std::vector<std::uint64_t> adjacency;  // vertex_count() rows of row_words

  std::size_t vertex_count() const { return vertices.size(); }
  const std::uint64_t* row(std::size_t i) const {
    return adjacency.data() + i * row_words;
  }
  bool adjacent(std::size_t i, std::size_t j) const {
    return (row(i)[j >> 6] >> (j & 63)) & 1u;
  }
  std::size_t degree(std::size_t i) const;
  std::uint64_t edge_count() const;

  // Graph-based validity: no member pair is adjacent. Members must be
  // vertices of this graph.
  bool family_is_independent(const Family& fam) const;
};

// Conflict graph on all 2^n subsets (2^n <= 2^16), or on a given family.
// Construction self-checks 1000 random adjacency entries against a slow
// element-list reference predicate.
ConflictGraph build_conflict_graph(int n, const TiltParams& params);
ConflictGraph build_conflict_graph(const Family& fam, const TiltParams& params);

struct SearchResult {
  std::size_t size = 0;
  Family witness;
  bool optimal = false;
  std::uint64_t nodes_explored = 0;
  bool time_budget_hit = false;
};

// Exact maximum family size, or best-known with optimal=false once the budget
// runs out. Deterministic branching: highest degree in the residual graph,
// ties broken toward the lowest mask. Witness reproducibility is guaranteed
// for workers == 1; with more workers only (size, optimal) is
// scheduling-independent. The witness is re-verified with verify_family
// before returning.
SearchResult max_family_exact(int n, const TiltParams& params,
                              std::chrono::milliseconds budget,
                              int workers = 1);

enum class GreedyOrder {
  kMiddleOut,       // levels by distance from n/2, ascending mask inside
  kRandomPerm,      // seeded shuffle of all masks
  kDegreeAscending  // conflict-graph degree, ascending; needs the graph
};

Family greedy_family(int n, const TiltParams& params, GreedyOrder order,
                     std::uint64_t seed);

// Level ⌊n/2⌋; valid for any p != q (same-level pairs force p = q in (i)).
Family construct_middle_level(int n);

// Union of the q-p levels nearest n/2 (coprime q > p >= 1): valid already as
// a plain tilted family, hence with patterns too.
Family construct_consecutive_levels(int n, long long p, long long q);

enum class SweepMode { kAuto, kExact, kHeuristic };

struct SweepRow {
  int n = 0;
  long long p = 0;
  long long q = 0;
  bool patterns = false;
  std::size_t best = 0;       // best lower bound found
  bool exact = false;         // best is the true maximum
  std::size_t construction = 0;
  std::size_t greedy = 0;
  BigInt upper_bound;
  double ratio = 0;           // best / (2^n / sqrt(n))
};

std::vector<SweepRow> sweep(int n_lo, int n_hi, const TiltParams& params,
                            SweepMode mode, std::chrono::milliseconds budget,
                            std::uint64_t seed);

// Header "n,p,q,patterns,best,exact,construction,greedy,upper_bound,ratio";
// the exact column is left empty on rows where optimality was not proven.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace tilted
