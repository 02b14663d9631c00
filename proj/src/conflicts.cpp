#include "bifix/conflicts.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "bifix/parallel.hpp"

namespace bifix {

std::string to_string(ConflictReason reason) {
  switch (reason) {
    case ConflictReason::kEscapesBbf: return "escapes-B_bf";
    case ConflictReason::kFocusesCollidingPair: return "focuses-colliding-pair";
    case ConflictReason::kForcesAllPairs: return "forces-all-pairs";
  }
  return "?";
}

namespace {

// Unordered middle-state pairs as bit positions; at most C(5,2) = 10 for the
// state counts the guards allow.
struct PairBits {
  int n;
  int middles;

  int index(State p, State q) const {  // p < q, both middle states
    const int i = p - 1;
    const int j = q - 1;
    return i * middles - i * (i + 1) / 2 + (j - i - 1);
  }
  int count() const { return middles * (middles - 1) / 2; }
  std::uint32_t full_mask() const {
    return count() == 0 ? 0 : (std::uint32_t{1} << count()) - 1;
  }
};

std::uint32_t colliding_pairs_of(std::uint64_t key, const PairBits& pb) {
  std::uint32_t mask = 0;
  const State a = key_image(key, 0);
  if (a >= 1 && a <= pb.middles) {
    for (State r = 1; r <= pb.middles; ++r) {
      const State b = key_image(key, r);
      if (b >= 1 && b <= pb.middles && b != a) {
        mask |= std::uint32_t{1} << pb.index(std::min(a, b), std::max(a, b));
      }
    }
  }
  return mask;
}

std::uint32_t focused_pairs_of(std::uint64_t key, const PairBits& pb) {
  std::uint32_t mask = 0;
  for (State p = 1; p <= pb.middles; ++p) {
    const State ip = key_image(key, p);
    if (ip == 0 || ip > pb.n - 2) continue;
    for (State q = p + 1; q <= pb.middles; ++q) {
      if (key_image(key, q) == ip) mask |= std::uint32_t{1} << pb.index(p, q);
    }
  }
  return mask;
}

// A uniform census pins the host semigroup inside one of the two known
// maxima: all pairs colliding forces a subsemigroup of the small family, all
// pairs focused leaves no colliding pair and forces the large one. A mixed
// census excludes nothing on its own; the union reading is kept as an
// optional strengthening.
bool census_conflicts(std::uint32_t colliding, std::uint32_t focused,
                      const PairBits& pb, bool union_census) {
  if (union_census) return (colliding | focused) == pb.full_mask();
  return colliding == pb.full_mask() || focused == pb.full_mask();
}

// Predicate-only variant used to fill the memo table; closure order is
// irrelevant for the outcome.
bool conflict_keys(std::uint64_t k1, std::uint64_t k2, int n, bool union_census) {
  const PairBits pb{n, n - 3};
  std::uint32_t colliding = 0;
  std::uint32_t focused = 0;
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> stack;
  const std::uint64_t gens[2] = {k1, k2};
  for (std::uint64_t g : gens) {
    if (seen.insert(g).second) stack.push_back(g);
  }
  std::size_t cursor = 0;
  while (cursor < stack.size()) {
    const std::uint64_t e = stack[cursor++];
    if (!in_bbf_key(e, n)) return true;
    colliding |= colliding_pairs_of(e, pb);
    focused |= focused_pairs_of(e, pb);
    if ((colliding & focused) != 0) return true;
    for (std::uint64_t g : gens) {
      const std::uint64_t prod = compose_keys(e, g, n);
      if (seen.insert(prod).second) stack.push_back(prod);
    }
  }
  return census_conflicts(colliding, focused, pb, union_census);
}

}  // namespace

ConflictVerdict conflict(const Transformation& t1, const Transformation& t2,
                         bool union_census) {
  if (t1.n() != t2.n()) {
    throw DimensionError("conflict requires transformations of a common n");
  }
  if (!in_bbf(t1) || !in_bbf(t2)) {
    throw PreconditionError("conflict requires both transformations in_bbf");
  }
  const int n = t1.n();
  const PairBits pb{n, n - 3};

  ConflictVerdict verdict;
  verdict.pairs_total = pb.count();
  std::uint32_t colliding = 0;
  std::uint32_t focused = 0;

  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> queue;  // breadth-first, deterministic witnesses
  const std::uint64_t gens[2] = {t1.key(), t2.key()};
  for (std::uint64_t g : gens) {
    if (seen.insert(g).second) queue.push_back(g);
  }
  std::size_t cursor = 0;
  while (cursor < queue.size()) {
    const std::uint64_t e = queue[cursor++];
    if (!in_bbf_key(e, n)) {
      verdict.conflicting = true;
      verdict.reason = ConflictReason::kEscapesBbf;
      verdict.witness_element = Transformation::from_key(e, n);
      return verdict;
    }
    colliding |= colliding_pairs_of(e, pb);
    focused |= focused_pairs_of(e, pb);
    if (const std::uint32_t both = colliding & focused; both != 0) {
      verdict.conflicting = true;
      verdict.reason = ConflictReason::kFocusesCollidingPair;
      verdict.witness_element = Transformation::from_key(e, n);
      for (State p = 1; p <= n - 3; ++p) {
        for (State q = p + 1; q <= n - 3; ++q) {
          if (both & (std::uint32_t{1} << pb.index(p, q))) {
            verdict.witness_pair = {p, q};
            break;
          }
        }
        if (verdict.witness_pair) break;
      }
      return verdict;
    }
    for (std::uint64_t g : gens) {
      const std::uint64_t prod = compose_keys(e, g, n);
      if (seen.insert(prod).second) queue.push_back(prod);
    }
  }
  verdict.pairs_colliding = std::popcount(colliding);
  verdict.pairs_focused = std::popcount(focused);
  if (census_conflicts(colliding, focused, pb, union_census)) {
    verdict.conflicting = true;
    verdict.reason = ConflictReason::kForcesAllPairs;
  }
  return verdict;
}

int greedy_matching(int num_vertices, std::vector<std::pair<int, int>> edges) {
  for (auto& [a, b] : edges) {
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= num_vertices) throw DimensionError("edge endpoint out of range");
    if (a == b) throw DimensionError("greedy_matching requires a simple graph");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<char> matched(static_cast<std::size_t>(num_vertices), 0);
  int size = 0;
  for (const auto& [a, b] : edges) {
    if (!matched[static_cast<std::size_t>(a)] && !matched[static_cast<std::size_t>(b)]) {
      matched[static_cast<std::size_t>(a)] = matched[static_cast<std::size_t>(b)] = 1;
      ++size;
    }
  }
  return size;
}

PruneTrace prune(int n, unsigned threads, bool collect_records, bool union_census) {
  if (n < 3) throw DomainError("prune requires n >= 3");
  if (n > 7) throw ResourceLimitError("prune is guarded to n <= 7");

  const Semigroup b0 = enumerate_bbf(n);
  const std::size_t total = b0.size();
  PruneTrace trace;
  trace.n = n;
  trace.threshold =
      std::max<std::uint64_t>(enumerate_wle5(n).size(), wge6_cardinality(n));
  trace.sizes.push_back(total);

  std::vector<std::uint64_t> keys(total);
  for (std::size_t i = 0; i < total; ++i) keys[i] = b0[i].key();

  // Symmetric memo over unordered index pairs; the predicate is pure, so one
  // upfront parallel fill serves every round.
  auto tri = [total](std::size_t i, std::size_t j) {
    return i * (2 * total - i - 1) / 2 + (j - i - 1);
  };
  std::vector<char> conflicts_table(total * (total - 1) / 2);
  parallel_for(total, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < total; ++j) {
      conflicts_table[tri(i, j)] =
          conflict_keys(keys[i], keys[j], n, union_census) ? 1 : 0;
    }
  }, 1);
  auto in_conflict = [&](std::size_t i, std::size_t j) {
    return conflicts_table[i < j ? tri(i, j) : tri(j, i)] != 0;
  };

  std::vector<std::size_t> alive(total);
  for (std::size_t i = 0; i < total; ++i) alive[i] = i;

  while (!alive.empty()) {
    std::vector<char> keep(alive.size(), 0);
    std::vector<PruneTrace::Record> records(alive.size());
    parallel_for(alive.size(), threads, [&](std::size_t a) {
      const std::size_t i = alive[a];
      std::vector<std::size_t> partners;  // non-conflicting, index-ascending
      partners.reserve(alive.size());
      for (std::size_t b = 0; b < alive.size(); ++b) {
        if (b != a && !in_conflict(i, alive[b])) partners.push_back(alive[b]);
      }
      // Greedy matching over the conflict edges among the partners, scanned
      // in lexicographic order (indices follow canonical key order).
      std::vector<char> matched(partners.size(), 0);
      std::uint32_t matching = 0;
      for (std::size_t u = 0; u < partners.size(); ++u) {
        if (matched[u]) continue;
        for (std::size_t v = u + 1; v < partners.size(); ++v) {
          if (!matched[v] && in_conflict(partners[u], partners[v])) {
            matched[u] = matched[v] = 1;
            ++matching;
            break;
          }
        }
      }
      const std::uint64_t bound = 1 + partners.size() - matching;
      keep[a] = bound >= trace.threshold ? 1 : 0;
      records[a] = {keys[i], static_cast<std::uint32_t>(partners.size()), matching,
                    bound};
    });

    if (collect_records) trace.iterations.push_back(std::move(records));
    std::vector<std::size_t> next;
    for (std::size_t a = 0; a < alive.size(); ++a) {
      if (keep[a]) next.push_back(alive[a]);
    }
    if (next.size() == alive.size()) {
      trace.failed = true;
      return trace;
    }
    alive = std::move(next);
    trace.sizes.push_back(alive.size());
  }
  return trace;
}

}  // namespace bifix
