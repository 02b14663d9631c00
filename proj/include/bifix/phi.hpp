#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bifix/semigroup.hpp"
#include "bifix/transformation.hpp"

namespace bifix {

/// The 23 construction (sub)cases plus the identity supercase.
enum class CaseLabel {
  k1,
  k2_1,
  k2_2,
  k2_3,
  k2_4_1,
  k2_4_2,
  k2_4_3,
  k2_4_4,
  k2_4_5,
  k2_5_1,
  k2_5_2,
  k3_1,
  k3_2_1,
  k3_2_2,
  k3_2_3,
  k3_2_4,
  k3_3,
  k3_4_1,
  k3_4_2,
  k3_4_3,
  k3_5_1,
  k3_5_2,
  k3_5_3,
};

/// (i)/(ii) split; present only for 2.4.3, 3.2.1 and 3.2.3.
enum class Subsubcase { kNone, kI, kII };

std::string to_string(CaseLabel label);
std::string to_string(Subsubcase sub);

/// Selected states and counts feeding the per-case construction. Fields are
/// populated only where the matched case defines them; all "smallest state
/// such that" selections break ties by numeric state order.
struct CaseContext {
  State p = -1;                     // 0.t
  int k = 0;                        // maximal k with p.t^k outside {n-2, n-1}
  std::optional<State> r;           // smallest state on a cycle
  std::optional<State> z;           // cycle predecessor of r
  std::optional<State> f;           // the unique in-degree-1 fixed point
  std::optional<State> f1, f2;      // two smallest in-degree-1 fixed points
  std::optional<State> x;           // movable chain start
  std::optional<int> ell;           // its chain length
  std::optional<State> y;           // secondary preimage choice
  std::optional<int> c;             // largest distance to a q_i
  std::optional<State> q_m;         // the q_i reached from x
  std::vector<State> q_list;        // states mapped to n-2 (ascending)
  std::vector<State> r_list;        // states mapped to n-1 (ascending)
};

struct Classification {
  CaseLabel label = CaseLabel::k1;
  Subsubcase sub = Subsubcase::kNone;
  CaseContext ctx;
};

/// Assigns the unique first-matching case. Requires in_bbf(t) and n >= 6;
/// the injectivity guarantees only apply from n = 8 upward.
Classification classify(const Transformation& t);

/// The injective mapping into the large-n maximal semigroup: builds s from
/// the matched case. Fixed points of the map are exactly the members of that
/// semigroup (label 1). Labels 2.* send 0 to n-1, labels 3.* send 0 to n-2.
Transformation phi(const Transformation& t);
Transformation phi(const Transformation& t, const Classification& cls);

struct PhiCollision {
  Transformation a, b, s;
  CaseLabel label_a, label_b;
};

struct AuditReport {
  bool injective = false;
  bool image_in_wge6 = false;
  std::vector<PhiCollision> collisions;  // sorted by (s, a) canonical keys
  std::size_t domain_size = 0;
  std::size_t image_size = 0;
  bool has_colliding_pair = false;
  /// Set when a colliding pair exists and n >= 8: the strict bound
  /// |T| < wge6_cardinality(n) and the absence of the marker transformation
  /// (0 -> n-1, p1 -> p2, r1 -> p2, r2 <-> r3, middles otherwise fixed)
  /// from the image.
  std::optional<bool> strict_bound_holds;
  std::optional<bool> sentinel_absent;
};

/// Maps phi over every element, then verifies pairwise distinctness and
/// codomain membership. On sets that are not transition semigroups of a
/// minimal bifix-free DFA, collisions are reported, not errors.
AuditReport audit_injectivity(const Semigroup& T, unsigned threads = 0);

}  // namespace bifix
