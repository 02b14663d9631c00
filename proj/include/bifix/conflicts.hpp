#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bifix/semigroup.hpp"
#include "bifix/transformation.hpp"

namespace bifix {

enum class ConflictReason {
  kEscapesBbf,           // some product of the pair leaves the necessary set
  kFocusesCollidingPair, // the pair's closure both collides and focuses a pair
  kForcesAllPairs,       // every middle pair ends up colliding or focused
};

std::string to_string(ConflictReason reason);

struct ConflictVerdict {
  bool conflicting = false;
  std::optional<ConflictReason> reason;
  /// Reasons (a)/(b): offending closure element; (b) also names the pair.
  std::optional<Transformation> witness_element;
  std::optional<std::pair<State, State>> witness_pair;
  /// Reason (c) carries the census of the closure instead.
  int pairs_colliding = 0;
  int pairs_focused = 0;
  int pairs_total = 0;
};

/// Whether two candidate transformations can coexist in a large transition
/// semigroup other than the two known maxima, decided on close({t1, t2}):
/// conflicting if (a) the closure leaves the necessary set, (b) some middle
/// pair is simultaneously colliding and focused inside it, or (c) the pair
/// census is uniform: every middle pair colliding, or every middle pair
/// focused (either forces the host into one of the two maxima).
/// union_census strengthens (c) to "every pair colliding-or-focused", which
/// prunes harder but is not justified by the uniqueness arguments alone.
/// Requires both inputs in_bbf with a common n. The closure aborts early for
/// (a)/(b).
ConflictVerdict conflict(const Transformation& t1, const Transformation& t2,
                         bool union_census = false);

/// Size of the maximal matching built by scanning the edges in lexicographic
/// endpoint order and taking every edge with two unmatched endpoints.
/// |V| - |M| bounds every independent set from above.
int greedy_matching(int num_vertices, std::vector<std::pair<int, int>> edges);

struct PruneTrace {
  struct Record {
    std::uint64_t key = 0;       // element, by canonical key
    std::uint32_t candidates = 0;  // |B'|
    std::uint32_t matching = 0;    // |M|
    std::uint64_t bound = 0;       // 1 + |B'| - |M|
  };

  int n = 0;
  std::uint64_t threshold = 0;
  std::vector<std::uint64_t> sizes;  // |B_0|, |B_1|, ...
  bool failed = false;
  std::vector<std::vector<Record>> iterations;
};

/// Iterative pruning of the candidate set B_0 = enumerate_bbf(n): each round
/// keeps t iff 1 + |B'| - |M| >= max(|wle5(n)|, |wge6(n)|), where B' are t's
/// non-conflicting partners and M a greedy maximal matching of the conflict
/// graph on B'. Ends at the empty set (the two known maxima are the only
/// candidates of maximal size) or at a fixpoint (marked failed). Guarded to
/// 3 <= n <= 7. Conflicts are memoized; threads only affect speed.
PruneTrace prune(int n, unsigned threads = 0, bool collect_records = false,
                 bool union_census = false);

}  // namespace bifix
