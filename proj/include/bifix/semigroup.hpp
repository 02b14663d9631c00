#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bifix/dfa.hpp"
#include "bifix/transformation.hpp"

namespace bifix {

/// An ordered, deduplicated set of transformations of a common state set,
/// with generator provenance. Closed sets satisfy st in elements for all
/// member pairs s, t; enumerated sets need not be closed.
class Semigroup {
 public:
  Semigroup() = default;

  static Semigroup from_elements(int n, std::vector<Transformation> elements,
                                 std::vector<int> generator_indices = {});

  int n() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<Transformation>& elements() const { return elements_; }
  const Transformation& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<int>& generator_indices() const { return generator_indices_; }

  bool contains(const Transformation& t) const {
    return t.n() == n_ && contains_key(t.key());
  }
  bool contains_key(std::uint64_t key) const { return index_.count(key) != 0; }
  std::optional<std::size_t> index_of_key(std::uint64_t key) const;

  /// Exhaustive closure check (quadratic in size).
  bool is_closed() const;

 private:
  int n_ = 0;
  std::vector<Transformation> elements_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<int> generator_indices_;
};

/// Least composition-closed superset of the generators. Elements are ordered
/// breadth-first by word length over the generators: the generators first, in
/// the given order, then each next level's new elements in canonical key
/// order. An empty generator list yields the empty semigroup.
Semigroup close(const std::vector<Transformation>& generators);

/// Necessary conditions on a member of the transition semigroup of a minimal
/// DFA of a bifix-free language with the fixed state conventions: 0 is not in
/// the image, n-1 and n-2 both map to n-1, and for every j >= 1 either
/// 0.t^j = n-1 or 0.t^j differs from q.t^j for every q with 0 < q < n-1.
///
/// The quantifier over j is decided by checking j = 1..n: the forward chain
/// of 0 repeats a state within n steps, and a repeat means every later
/// constraint already appeared (the chain of images is eventually periodic).
bool in_bbf(const Transformation& t);
bool in_bbf_key(std::uint64_t key, int n);

/// Membership in the large-n maximal semigroup: one of the three families
/// (all of {0,n-2,n-1} to n-1 with middles avoiding 0; 0 to n-2 with middles
/// avoiding {0,n-2}; 0 to a middle state with all middles into {n-2,n-1}).
bool in_wge6(const Transformation& t);
bool in_wge6_key(std::uint64_t key, int n);

/// Membership in the small-n maximal semigroup: in_bbf and the restriction to
/// the middle states is injective except that several of them may share the
/// image n-1.
bool in_wle5(const Transformation& t);

/// All transformations of n states satisfying in_bbf, in canonical key order.
/// Guard: 2 <= n <= 8, and n = 8 only with allow_large.
Semigroup enumerate_bbf(int n, bool allow_large = false);

/// The large-n maximal semigroup, in canonical key order. Closed under
/// composition; its cardinality is wge6_cardinality(n).
Semigroup enumerate_wge6(int n);

/// The small-n maximal semigroup, in canonical key order. Same guard as
/// enumerate_bbf. No closed cardinality formula is known; counts are
/// reported as enumerated.
Semigroup enumerate_wle5(int n, bool allow_large = false);

/// (n-1)^(n-3) + (n-2)^(n-3) + (n-3)*2^(n-3)
std::uint64_t wge6_cardinality(int n);

/// (n-2)^(n-3) + (n-3)*2^(n-3) - 1
std::uint64_t witness_alphabet_size(int n);

/// The witness DFA whose letters generate the large-n maximal semigroup with
/// the smallest possible alphabet (n >= 4): the n-3 letters sending 0 to n-1
/// and one middle state to n-2, the non-degenerate letters of the second
/// family, and the non-degenerate letters of the third family grouped by the
/// image of 0.
Dfa witness_dfa(int n);

/// Closure of the letter transformations; its cardinality is the syntactic
/// complexity of the accepted language.
Semigroup transition_semigroup(const Dfa& d);

/// Census entry for one unordered pair of middle states.
struct PairStatus {
  State p = 0;
  State q = 0;
  /// Some member sends 0 to one of the pair and a middle state to the other.
  std::optional<Transformation> colliding_witness;
  /// Some member sends both states to one state r in Q_M union {n-2}.
  std::optional<std::pair<Transformation, State>> focused_witness;

  bool colliding() const { return colliding_witness.has_value(); }
  bool focused() const { return focused_witness.has_value(); }
};

/// Collision/focus witnesses for every unordered pair of middle states,
/// ordered by (p, q). Requires a nonempty set with n >= 4.
std::vector<PairStatus> pair_statuses(const Semigroup& s);

/// Elements not expressible as a product of two members; every generating set
/// must contain them. Requires a closed semigroup.
std::vector<Transformation> irreducible_elements(const Semigroup& s);

}  // namespace bifix
