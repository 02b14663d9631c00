#pragma once

#include <string>
#include <vector>

#include "bifix/transformation.hpp"

namespace bifix {

/// Complete DFA over an indexed alphabet: letter a acts on the states as the
/// transformation delta[a].
struct Dfa {
  int n = 0;
  std::vector<Transformation> delta;
  State initial = 0;
  std::vector<State> finals;  // sorted, no duplicates

  Dfa(int n, std::vector<Transformation> delta, State initial,
      std::vector<State> finals);

  int alphabet_size() const { return static_cast<int>(delta.size()); }
  bool is_final(State q) const;
  State step(State q, int letter) const { return delta[static_cast<std::size_t>(letter)][q]; }
};

/// true iff every state is reachable from the initial state and no two
/// distinct states are equivalent. Complete-DFA convention: a sink/empty
/// state counts as a state.
bool is_minimal(const Dfa& d);

/// One broken structural condition of the minimal-bifix-free DFA shape.
struct StructuralViolation {
  std::string condition;  // "empty-state", "final-quotient" or "initial-path"
  std::string detail;
};

struct BifixReport {
  bool prefix_free = false;
  bool suffix_free = false;
  std::vector<StructuralViolation> violations;

  bool bifix_free() const { return prefix_free && suffix_free; }
};

/// Decides prefix- and suffix-freeness of the language of a minimal DFA.
///
/// Prefix-freeness is L intersect L.Sigma+ = empty, checked structurally: no
/// final state may reach a final state by a nonempty word. Suffix-freeness is
/// L intersect Sigma+.L = empty, checked by product emptiness against the
/// one-extra-state machine for Sigma+.L whose fresh start state loops on all
/// letters and nondeterministically enters the initial state.
///
/// The report also lists structural violations of the standard empty-state /
/// unique-final-quotient / initial-path conditions.
BifixReport bifix_report(const Dfa& d);

/// Renames the states by the permutation perm (state q becomes perm[q]).
Dfa rename(const Dfa& d, const std::vector<State>& perm);

/// Renames the states of a minimal DFA of a bifix-free language to the fixed
/// conventions: initial 0, the unique final n-2, the empty state n-1, middle
/// states keeping their relative order. Errors if the DFA is not minimal or
/// its language is not bifix-free.
Dfa normalize_bifix(const Dfa& d);

}  // namespace bifix
