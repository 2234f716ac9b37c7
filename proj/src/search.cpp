#include "tilted/search.hpp"

#include "tilted/concentration.hpp"
#include "tilted/prng.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace tilted {

namespace {

// Slow element-list reference for the build self-test; deliberately shares no
// code with the word-parallel predicate.
bool reference_forbidden(std::uint64_t fbits, std::uint64_t gbits, int n,
                         const TiltParams& params) {
  if (fbits == gbits) return false;
  std::vector<int> fmg, gmf;
  for (int i = 1; i <= n; ++i) {
    const bool in_f = (fbits >> (i - 1)) & 1u;
    const bool in_g = (gbits >> (i - 1)) & 1u;
    if (in_f && !in_g) fmg.push_back(i);
    if (in_g && !in_f) gmf.push_back(i);
  }
  if (params.p != 0 || params.q != 0) {
    if (params.p * static_cast<long long>(fmg.size()) !=
        params.q * static_cast<long long>(gmf.size()))
      return false;
    if (!params.patterns) return true;
  }
  for (int f : fmg)
    for (int g : gmf)
      if (f <= g) return false;
  return true;
}

bool reference_conflicting(std::uint64_t f, std::uint64_t g, int n,
                           const TiltParams& params) {
  return reference_forbidden(f, g, n, params) ||
         reference_forbidden(g, f, n, params);
}

void self_check_adjacency(const ConflictGraph& g) {
  if (g.vertex_count() < 2) return;
  std::mt19937_64 rng(0xC0FFEEull);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t i = draw_below(rng, g.vertex_count());
    std::size_t j = draw_below(rng, g.vertex_count() - 1);
    if (j >= i) ++j;
    const bool expect =
        reference_conflicting(g.vertices[i], g.vertices[j], g.n, g.params);
    if (g.adjacent(i, j) != expect || g.adjacent(j, i) != expect)
      throw std::logic_error(
          "conflict graph self-check failed: adjacency disagrees with the "
          "reference predicate");
  }
}

ConflictGraph build_graph_impl(int n, std::vector<std::uint64_t> vertices,
                               const TiltParams& params) {
  params.validate();
  ConflictGraph g;
  g.n = n;
  g.params = params;
  g.vertices = std::move(vertices);
  const std::size_t v = g.vertices.size();
  if (v > kMaxGraphVertices)
    throw std::invalid_argument(
        "conflict graph would have " + std::to_string(v) +
        " vertices (cap 2^16); use the heuristic/greedy mode instead");
  g.row_words = (v + 63) / 64;
  g.adjacency.assign(v * g.row_words, 0);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = i + 1; j < v; ++j) {
      if (is_conflicting_bits(g.vertices[i], g.vertices[j], params)) {
        g.adjacency[i * g.row_words + (j >> 6)] |= 1ull << (j & 63);
        g.adjacency[j * g.row_words + (i >> 6)] |= 1ull << (i & 63);
      }
    }
  }
  self_check_adjacency(g);
  return g;
}

}  // namespace

std::size_t ConflictGraph::degree(std::size_t i) const {
  std::size_t d = 0;
  const std::uint64_t* r = row(i);
  for (std::size_t w = 0; w < row_words; ++w) d += std::popcount(r[w]);
  return d;
}

std::uint64_t ConflictGraph::edge_count() const {
  std::uint64_t twice = 0;
  for (std::size_t i = 0; i < vertex_count(); ++i) twice += degree(i);
  return twice / 2;
}

bool ConflictGraph::family_is_independent(const Family& fam) const {
  std::vector<std::size_t> idx;
  idx.reserve(fam.size());
  for (std::uint64_t m : fam.members) {
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), m);
    if (it == vertices.end() || *it != m)
      throw std::invalid_argument("family member is not a graph vertex");
    idx.push_back(static_cast<std::size_t>(it - vertices.begin()));
  }
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (adjacent(idx[a], idx[b])) return false;
  return true;
}

ConflictGraph build_conflict_graph(int n, const TiltParams& params) {
  Ground ground(n);
  if (ground.subset_count() > kMaxGraphVertices)
    throw std::invalid_argument(
        "full-lattice conflict graph needs 2^n <= 2^16 (n <= 16), got n=" +
        std::to_string(n));
  std::vector<std::uint64_t> vertices(ground.subset_count());
  for (std::size_t m = 0; m < vertices.size(); ++m) vertices[m] = m;
  return build_graph_impl(n, std::move(vertices), params);
}

ConflictGraph build_conflict_graph(const Family& fam,
                                   const TiltParams& params) {
  return build_graph_impl(fam.n, fam.members, params);
}

// ---------------------------------------------------------------------------
// Branch and bound maximum independent set
// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;
using WordVec = std::vector<std::uint64_t>;

std::size_t words_popcount(const WordVec& w) {
  std::size_t c = 0;
  for (std::uint64_t x : w) c += std::popcount(x);
  return c;
}

bool words_test(const WordVec& w, std::size_t i) {
  return (w[i >> 6] >> (i & 63)) & 1u;
}

void words_reset(WordVec& w, std::size_t i) { w[i >> 6] &= ~(1ull << (i & 63)); }

struct SolverShared {
  const ConflictGraph* graph = nullptr;
  std::atomic<std::size_t> best_size{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> budget_hit{false};
  Clock::time_point deadline;
  std::mutex witness_mutex;
  std::vector<std::uint32_t> best_witness;  // sorted vertex indices

  void record(const std::vector<std::uint32_t>& chosen) {
    const std::size_t s = chosen.size();
    std::size_t cur = best_size.load(std::memory_order_relaxed);
    while (s > cur &&
           !best_size.compare_exchange_weak(cur, s, std::memory_order_relaxed)) {
    }
    std::lock_guard<std::mutex> lock(witness_mutex);
    std::vector<std::uint32_t> sorted = chosen;
    std::sort(sorted.begin(), sorted.end());
    if (s > best_witness.size() ||
        (s == best_witness.size() && sorted < best_witness))
      best_witness = std::move(sorted);
  }
};

struct Worker {
  SolverShared* shared;
  const ConflictGraph* g;
  std::size_t words;
  std::vector<WordVec> depth_buf;
  std::vector<WordVec> clique_buf;
  std::vector<std::uint32_t> chosen;

  explicit Worker(SolverShared* s)
      : shared(s), g(s->graph), words(g->row_words) {
    // Sized up front: expand() holds references into depth_buf across
    // recursive calls, so the vector must never reallocate.
    depth_buf.resize(g->vertex_count() + 1);
  }

  WordVec& buffer(std::size_t depth) { return depth_buf[depth]; }

  std::size_t pick_branch_vertex(const WordVec& cand) const {
    std::size_t best_v = SIZE_MAX;
    std::size_t best_deg = 0;
    for (std::size_t w = 0; w < words; ++w) {
      for (std::uint64_t m = cand[w]; m; m &= m - 1) {
        const std::size_t v = (w << 6) + std::countr_zero(m);
        const std::uint64_t* r = g->row(v);
        std::size_t deg = 0;
        for (std::size_t k = 0; k < words; ++k)
          deg += std::popcount(r[k] & cand[k]);
        if (best_v == SIZE_MAX || deg > best_deg) {
          best_v = v;
          best_deg = deg;
        }
      }
    }
    return best_v;
  }

  // Greedy partition of the candidates into cliques; their number bounds the
  // independent set size inside cand.
  std::size_t clique_cover_bound(const WordVec& cand) {
    std::size_t cliques = 0;
    for (std::size_t w = 0; w < words; ++w) {
      for (std::uint64_t m = cand[w]; m; m &= m - 1) {
        const std::size_t v = (w << 6) + std::countr_zero(m);
        bool placed = false;
        for (std::size_t c = 0; c < cliques; ++c) {
          if (words_test(clique_buf[c], v)) {
            const std::uint64_t* r = g->row(v);
            for (std::size_t k = 0; k < words; ++k) clique_buf[c][k] &= r[k];
            placed = true;
            break;
          }
        }
        if (!placed) {
          if (cliques >= clique_buf.size()) clique_buf.resize(cliques + 1);
          clique_buf[cliques].assign(g->row(v), g->row(v) + words);
          ++cliques;
        }
      }
    }
    return cliques;
  }

  void expand(WordVec& cand, std::size_t depth) {
    const std::uint64_t ticks =
        shared->nodes.fetch_add(1, std::memory_order_relaxed);
    if ((ticks & 1023u) == 0 && Clock::now() > shared->deadline)
      shared->budget_hit.store(true, std::memory_order_relaxed);
    if (shared->budget_hit.load(std::memory_order_relaxed)) return;

    if (words_popcount(cand) == 0) {
      if (chosen.size() > shared->best_size.load(std::memory_order_relaxed))
        shared->record(chosen);
      return;
    }
    while (words_popcount(cand) != 0) {
      const std::size_t bound = clique_cover_bound(cand);
      if (chosen.size() + bound <=
          shared->best_size.load(std::memory_order_relaxed))
        return;
      const std::size_t v = pick_branch_vertex(cand);
      WordVec& child = buffer(depth);
      child.resize(words);
      const std::uint64_t* r = g->row(v);
      for (std::size_t k = 0; k < words; ++k) child[k] = cand[k] & ~r[k];
      words_reset(child, v);
      chosen.push_back(static_cast<std::uint32_t>(v));
      expand(child, depth + 1);
      chosen.pop_back();
      if (shared->budget_hit.load(std::memory_order_relaxed)) return;
      words_reset(cand, v);
    }
    if (chosen.size() > shared->best_size.load(std::memory_order_relaxed))
      shared->record(chosen);
  }
};

struct RootJob {
  WordVec candidates;
  std::uint32_t included;
};

}  // namespace

SearchResult max_family_exact(int n, const TiltParams& params,
                              std::chrono::milliseconds budget, int workers) {
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  const ConflictGraph graph = build_conflict_graph(n, params);
  const std::size_t v = graph.vertex_count();

  SolverShared shared;
  shared.graph = &graph;
  shared.deadline = Clock::now() + budget;

  // Greedy seed: a strong deterministic lower bound before branching.
  const Family seed = greedy_family(n, params, GreedyOrder::kMiddleOut, 0);
  std::vector<std::uint32_t> seed_idx;
  for (std::uint64_t m : seed.members)
    seed_idx.push_back(static_cast<std::uint32_t>(m));  // vertex index == mask
  shared.best_size.store(seed_idx.size());
  shared.best_witness = seed_idx;

  WordVec all(graph.row_words, 0);
  for (std::size_t i = 0; i < v; ++i) all[i >> 6] |= 1ull << (i & 63);

  if (workers == 1) {
    Worker worker(&shared);
    WordVec root = all;
    worker.expand(root, 0);
  } else {
    // Deterministic root split: iteration k is "include v_k after excluding
    // v_0..v_{k-1}"; the jobs partition the space and workers share only the
    // monotone best size.
    std::vector<RootJob> jobs;
    WordVec rest = all;
    while (words_popcount(rest) != 0) {
      Worker probe(&shared);
      const std::size_t branch = probe.pick_branch_vertex(rest);
      RootJob job;
      job.candidates.resize(graph.row_words);
      const std::uint64_t* r = graph.row(branch);
      for (std::size_t k = 0; k < graph.row_words; ++k)
        job.candidates[k] = rest[k] & ~r[k];
      words_reset(job.candidates, branch);
      job.included = static_cast<std::uint32_t>(branch);
      jobs.push_back(std::move(job));
      words_reset(rest, branch);
    }
    std::atomic<std::size_t> next_job{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        Worker worker(&shared);
        for (;;) {
          const std::size_t j = next_job.fetch_add(1);
          if (j >= jobs.size()) return;
          worker.chosen.assign(1, jobs[j].included);
          WordVec cand = jobs[j].candidates;
          worker.expand(cand, 0);
          if (shared.budget_hit.load()) return;
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  SearchResult result;
  result.size = shared.best_size.load();
  result.nodes_explored = shared.nodes.load();
  result.time_budget_hit = shared.budget_hit.load();
  result.optimal = !result.time_budget_hit;
  std::vector<std::uint64_t> masks;
  masks.reserve(shared.best_witness.size());
  for (std::uint32_t i : shared.best_witness)
    masks.push_back(graph.vertices[i]);
  result.witness = Family::from_masks(n, std::move(masks));
  if (!verify_family(result.witness, params).valid)
    throw std::logic_error("search produced an invalid witness");
  if (result.witness.size() != result.size)
    throw std::logic_error("witness size disagrees with reported size");
  return result;
}

// ---------------------------------------------------------------------------
// Greedy and constructions
// ---------------------------------------------------------------------------

namespace {

// Next mask with the same popcount (Gosper), 0 when exhausted.
std::uint64_t next_same_popcount(std::uint64_t x) {
  const std::uint64_t u = x & (~x + 1);
  const std::uint64_t v = u + x;
  if (v == 0) return 0;
  return v + (((v ^ x) / u) >> 2);
}

void append_level(std::vector<std::uint64_t>& out, int n, int level) {
  if (level < 0 || level > n) return;
  if (level == 0) {
    out.push_back(0);
    return;
  }
  const std::uint64_t full = prefix_mask(n);
  for (std::uint64_t m = prefix_mask(level); m && m <= full;
       m = next_same_popcount(m)) {
    out.push_back(m);
    if (m == 0) break;
  }
}

// Levels by distance from n/2: m, m+1, m-1, m+2, m-2, ...
std::vector<int> levels_middle_out(int n) {
  std::vector<int> order;
  const int m = n / 2;
  order.push_back(m);
  for (int d = 1; static_cast<int>(order.size()) <= n; ++d) {
    if (m + d <= n) order.push_back(m + d);
    if (m - d >= 0) order.push_back(m - d);
  }
  return order;
}

void require_enumerable(int n, const char* what) {
  if (n > 26)
    throw std::invalid_argument(std::string(what) +
                                " materializes masks level by level; n <= 26 "
                                "keeps that in memory, got n=" +
                                std::to_string(n));
}

}  // namespace

Family greedy_family(int n, const TiltParams& params, GreedyOrder order,
                     std::uint64_t seed) {
  Ground ground(n);
  params.validate();
  if (n > 16)
    throw std::invalid_argument("greedy insertion enumerates all 2^n masks; "
                                "n <= 16 required");
  std::vector<std::uint64_t> candidates;
  candidates.reserve(ground.subset_count());
  switch (order) {
    case GreedyOrder::kMiddleOut:
      for (int level : levels_middle_out(n)) append_level(candidates, n, level);
      break;
    case GreedyOrder::kRandomPerm: {
      for (std::uint64_t m = 0; m < ground.subset_count(); ++m)
        candidates.push_back(m);
      std::mt19937_64 rng(seed);
      deterministic_shuffle(candidates, rng);
      break;
    }
    case GreedyOrder::kDegreeAscending: {
      const ConflictGraph graph = build_conflict_graph(n, params);
      std::vector<std::size_t> idx(graph.vertex_count());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const std::size_t da = graph.degree(a), db = graph.degree(b);
        return da != db ? da < db : a < b;
      });
      for (std::size_t i : idx) candidates.push_back(graph.vertices[i]);
      break;
    }
  }

  std::vector<std::uint64_t> accepted;
  for (std::uint64_t cand : candidates) {
    bool ok = true;
    for (std::uint64_t m : accepted) {
      if (is_conflicting_bits(cand, m, params)) {
        ok = false;
        break;
      }
    }
    if (ok) accepted.push_back(cand);
  }
  Family fam = Family::from_masks(n, std::move(accepted));
  if (!verify_family(fam, params).valid)
    throw std::logic_error("greedy produced an invalid family");
  return fam;
}

Family construct_middle_level(int n) {
  Ground ground(n);
  require_enumerable(n, "middle level construction");
  std::vector<std::uint64_t> masks;
  append_level(masks, n, n / 2);
  return Family::from_masks(n, std::move(masks));
}

Family construct_consecutive_levels(int n, long long p, long long q) {
  Ground ground(n);
  require_enumerable(n, "consecutive level construction");
  const TiltParams norm = normalize_params(TiltParams{p, q, false});
  if (!(norm.q > norm.p && norm.p >= 1))
    throw std::invalid_argument(
        "consecutive level construction needs coprime q > p >= 1 (got p=" +
        std::to_string(norm.p) + ", q=" + std::to_string(norm.q) + ")");
  const long long want = norm.q - norm.p;
  std::vector<std::uint64_t> masks;
  long long taken = 0;
  for (int level : levels_middle_out(n)) {
    if (taken == want) break;
    append_level(masks, n, level);
    ++taken;
  }
  return Family::from_masks(n, std::move(masks));
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

namespace {

std::size_t construction_size(int n, const TiltParams& norm) {
  if (norm.p == norm.q) return 1;  // no nontrivial construction known for p=q
  if (norm.q > norm.p && norm.p >= 1) {
    const long long want = norm.q - norm.p;
    BigInt total = 0;
    long long taken = 0;
    for (int level : levels_middle_out(n)) {
      if (taken == want) break;
      total += binomial(n, level);
      ++taken;
    }
    return total.convert_to<std::size_t>();
  }
  return binomial(n, n / 2).convert_to<std::size_t>();
}

}  // namespace

std::vector<SweepRow> sweep(int n_lo, int n_hi, const TiltParams& params,
                            SweepMode mode, std::chrono::milliseconds budget,
                            std::uint64_t seed) {
  if (n_lo < 2 || n_hi < n_lo || n_hi > 16)
    throw std::invalid_argument("sweep range must satisfy 2 <= lo <= hi <= 16");
  TiltParams norm = normalize_params(params);
  std::vector<SweepRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    SweepRow row;
    row.n = n;
    row.p = norm.p;
    row.q = norm.q;
    row.patterns = norm.patterns;
    row.construction = construction_size(n, norm);
    row.greedy =
        std::max(greedy_family(n, norm, GreedyOrder::kMiddleOut, 0).size(),
                 greedy_family(n, norm, GreedyOrder::kRandomPerm, seed).size());
    const bool try_exact =
        mode == SweepMode::kExact || (mode == SweepMode::kAuto && n <= 12);
    row.best = std::max(row.construction, row.greedy);
    if (try_exact) {
      const SearchResult res = max_family_exact(n, norm, budget, 1);
      row.best = std::max(row.best, res.size);
      row.exact = res.optimal;
    }
    row.upper_bound = explicit_upper_bound(n, norm.p, norm.q);
    row.ratio = static_cast<double>(row.best) * std::sqrt(n) /
                std::ldexp(1.0, n);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "n,p,q,patterns,best,exact,construction,greedy,upper_bound,ratio\n";
  char ratio[32];
  for (const SweepRow& row : rows) {
    std::snprintf(ratio, sizeof ratio, "%.6f", row.ratio);
    out += std::to_string(row.n) + "," + std::to_string(row.p) + "," +
           std::to_string(row.q) + "," + (row.patterns ? "true" : "false") +
           "," + std::to_string(row.best) + "," +
           (row.exact ? std::to_string(row.best) : "") + "," +
           std::to_string(row.construction) + "," + std::to_string(row.greedy) +
           "," + row.upper_bound.str() + "," + ratio + "\n";
  }
  return out;
}

}  // namespace tilted
