#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bifix/errors.hpp"

namespace bifix {

using State = int;

/// A total self-map of the state set {0,...,n-1}.
///
/// Immutable value type. Also usable as its functional digraph with edges
/// q -> q.t; the graph queries below (orbits, in_degree, distance, tree_of)
/// all refer to that digraph.
class Transformation {
 public:
  // Images are packed four bits per state into a 64-bit dedup key.
  static constexpr int kMaxStates = 16;

  explicit Transformation(std::vector<State> images);

  static Transformation identity(int n);

  /// Rebuild a transformation of n states from its packed key.
  static Transformation from_key(std::uint64_t key, int n);

  int n() const { return static_cast<int>(images_.size()); }

  State operator[](State q) const {
    return static_cast<State>(images_[static_cast<std::size_t>(q)]);
  }

  /// q.t^j
  State apply_power(State q, int j) const;

  /// Images packed four bits per state, state 0 in the highest nibble, so
  /// numeric key order equals lexicographic order on the image sequence
  /// (for a fixed n). Unique only together with n.
  std::uint64_t key() const { return key_; }

  /// "p0 p1 ... p(n-1)", space-separated decimal images.
  std::string to_string() const;

  friend bool operator==(const Transformation& a, const Transformation& b) {
    return a.images_ == b.images_;
  }
  friend auto operator<=>(const Transformation& a, const Transformation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<std::uint8_t> images_;
  std::uint64_t key_ = 0;
};

/// Composition st, defined by q(st) = (qs)t: s is applied first, then t.
Transformation compose(const Transformation& s, const Transformation& t);

inline Transformation operator*(const Transformation& s,
                                const Transformation& t) {
  return compose(s, t);
}

/// Semiconstant map (S -> target): every state of S goes to target, all other
/// states are fixed. The unitary (p -> q) is the special case S = {p}.
Transformation semiconstant(const std::vector<State>& s, State target, int n);

/// Number of preimages of q under t (a fixed point counts itself).
int in_degree(const Transformation& t, State q);

/// Length of the path from `from` to `to` in the digraph of t, i.e.
/// min{j >= 0 : from.t^j == to}; empty when `to` is unreachable.
std::optional<int> distance(const Transformation& t, State from, State to);

/// All states with a path to `root` (including root itself), sorted.
/// `root` must not lie in a cycle of t.
std::vector<State> tree_of(const Transformation& t, State root);

/// Partition of the states into weakly connected components of the digraph
/// of t. Each component contains exactly one core: a cycle (length >= 2) or
/// a fixed point.
struct OrbitDecomposition {
  /// state -> component index
  std::vector<int> orbit_of;
  /// Per component, the core states: a single fixed point or a cycle listed
  /// starting from its smallest state and following t.
  std::vector<std::vector<State>> core;

  bool is_fixed_point(int orbit) const { return core[orbit].size() == 1; }
  bool on_core(State q) const;
  int orbit_count() const { return static_cast<int>(core.size()); }
};

OrbitDecomposition orbits(const Transformation& t);

/// true iff t has a cycle of length >= 2.
bool has_cycle(const Transformation& t);

// Key-level helpers for closure-heavy inner loops; no allocation.

inline State key_image(std::uint64_t key, State q) {
  return static_cast<State>((key >> (4 * (Transformation::kMaxStates - 1 - q))) & 0xF);
}

std::uint64_t compose_keys(std::uint64_t s, std::uint64_t t, int n);

}  // namespace bifix
