#include "bifix/dfa.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace bifix {

Dfa::Dfa(int n_, std::vector<Transformation> delta_, State initial_,
         std::vector<State> finals_)
    : n(n_), delta(std::move(delta_)), initial(initial_), finals(std::move(finals_)) {
  if (n < 1) throw DimensionError("DFA needs at least one state");
  if (delta.empty()) throw DimensionError("DFA needs at least one letter");
  for (const auto& row : delta) {
    if (row.n() != n) {
      throw DimensionError("letter transformation has " + std::to_string(row.n()) +
                           " states, DFA has " + std::to_string(n));
    }
  }
  if (initial < 0 || initial >= n) throw DimensionError("initial state out of range");
  std::sort(finals.begin(), finals.end());
  finals.erase(std::unique(finals.begin(), finals.end()), finals.end());
  for (State f : finals) {
    if (f < 0 || f >= n) throw DimensionError("final state out of range");
  }
}

bool Dfa::is_final(State q) const {
  return std::binary_search(finals.begin(), finals.end(), q);
}

namespace {

std::vector<bool> reachable_from_initial(const Dfa& d) {
  std::vector<bool> seen(static_cast<std::size_t>(d.n), false);
  std::deque<State> queue{d.initial};
  seen[static_cast<std::size_t>(d.initial)] = true;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (int a = 0; a < d.alphabet_size(); ++a) {
      State r = d.step(q, a);
      if (!seen[static_cast<std::size_t>(r)]) {
        seen[static_cast<std::size_t>(r)] = true;
        queue.push_back(r);
      }
    }
  }
  return seen;
}

// States from which some final state is reachable (by any word, incl. empty).
std::vector<bool> coreachable_to_final(const Dfa& d) {
  std::vector<bool> can(static_cast<std::size_t>(d.n), false);
  for (State f : d.finals) can[static_cast<std::size_t>(f)] = true;
  bool grew = false;
  do {
    grew = false;
    for (State q = 0; q < d.n; ++q) {
      if (can[static_cast<std::size_t>(q)]) continue;
      for (int a = 0; a < d.alphabet_size(); ++a) {
        if (can[static_cast<std::size_t>(d.step(q, a))]) {
          can[static_cast<std::size_t>(q)] = true;
          grew = true;
          break;
        }
      }
    }
  } while (grew);
  return can;
}

}  // namespace

bool is_minimal(const Dfa& d) {
  const auto seen = reachable_from_initial(d);
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;

  // Moore partition refinement from the final / non-final split.
  std::vector<int> cls(static_cast<std::size_t>(d.n));
  for (State q = 0; q < d.n; ++q) cls[static_cast<std::size_t>(q)] = d.is_final(q) ? 1 : 0;
  for (;;) {
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(d.n));
    for (State q = 0; q < d.n; ++q) {
      auto& s = sig[static_cast<std::size_t>(q)];
      s.reserve(static_cast<std::size_t>(d.alphabet_size()) + 1);
      s.push_back(cls[static_cast<std::size_t>(q)]);
      for (int a = 0; a < d.alphabet_size(); ++a) {
        s.push_back(cls[static_cast<std::size_t>(d.step(q, a))]);
      }
    }
    std::vector<std::vector<int>> keys = sig;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<int> next(static_cast<std::size_t>(d.n));
    for (State q = 0; q < d.n; ++q) {
      next[static_cast<std::size_t>(q)] = static_cast<int>(
          std::lower_bound(keys.begin(), keys.end(), sig[static_cast<std::size_t>(q)]) -
          keys.begin());
    }
    if (next == cls) break;
    cls = std::move(next);
  }
  std::set<int> classes(cls.begin(), cls.end());
  return static_cast<int>(classes.size()) == d.n;
}

BifixReport bifix_report(const Dfa& d) {
  if (!is_minimal(d)) {
    throw PreconditionError("bifix_report requires a minimal DFA");
  }
  BifixReport report;
  const auto can_accept = coreachable_to_final(d);

  // Prefix-free: no final state reaches a final state by a nonempty word.
  report.prefix_free = true;
  for (State f : d.finals) {
    for (int a = 0; a < d.alphabet_size() && report.prefix_free; ++a) {
      if (can_accept[static_cast<std::size_t>(d.step(f, a))]) report.prefix_free = false;
    }
  }

  // Suffix-free: intersect d with the machine for Sigma+.L and test emptiness.
  // Product states (q, r): q runs d, r runs d started after a nonempty prefix;
  // r = -1 is the fresh looping start state.
  {
    report.suffix_free = true;
    std::set<std::pair<State, State>> seen;
    std::deque<std::pair<State, State>> queue;
    queue.emplace_back(d.initial, -1);
    seen.insert({d.initial, -1});
    while (!queue.empty() && report.suffix_free) {
      auto [q, r] = queue.front();
      queue.pop_front();
      for (int a = 0; a < d.alphabet_size(); ++a) {
        State q2 = d.step(q, a);
        std::vector<State> nexts;
        if (r == -1) {
          nexts = {-1, d.initial};
        } else {
          nexts = {d.step(r, a)};
        }
        for (State r2 : nexts) {
          if (r2 != -1 && d.is_final(q2) && d.is_final(r2)) {
            report.suffix_free = false;
            break;
          }
          if (seen.insert({q2, r2}).second) queue.emplace_back(q2, r2);
        }
        if (!report.suffix_free) break;
      }
    }
  }

  // Structural conditions on the shape of a minimal bifix-free DFA.
  std::optional<State> empty_state;
  for (State q = 0; q < d.n; ++q) {
    if (!can_accept[static_cast<std::size_t>(q)]) empty_state = q;
  }
  if (!empty_state) {
    report.violations.push_back({"empty-state", "no empty state"});
  }
  if (d.finals.size() != 1) {
    report.violations.push_back(
        {"final-quotient",
         "expected exactly one final state, found " + std::to_string(d.finals.size())});
  } else if (empty_state) {
    State f = d.finals.front();
    for (int a = 0; a < d.alphabet_size(); ++a) {
      if (d.step(f, a) != *empty_state) {
        report.violations.push_back(
            {"final-quotient", "final state leaves by letter " + std::to_string(a) +
                                   ", its quotient is not {eps}"});
        break;
      }
    }
  }
  if (empty_state) {
    for (int a = 0; a < d.alphabet_size(); ++a) {
      if (!distance(d.delta[static_cast<std::size_t>(a)], d.initial, *empty_state)) {
        report.violations.push_back(
            {"initial-path", "letter " + std::to_string(a) +
                                 " has no path from the initial to the empty state"});
      }
    }
  }
  return report;
}

Dfa rename(const Dfa& d, const std::vector<State>& perm) {
  if (static_cast<int>(perm.size()) != d.n) {
    throw DimensionError("rename permutation has wrong length");
  }
  std::vector<State> check = perm;
  std::sort(check.begin(), check.end());
  for (State q = 0; q < d.n; ++q) {
    if (check[static_cast<std::size_t>(q)] != q) {
      throw DimensionError("rename argument is not a permutation");
    }
  }
  std::vector<Transformation> delta;
  delta.reserve(d.delta.size());
  for (const auto& row : d.delta) {
    std::vector<State> images(static_cast<std::size_t>(d.n));
    for (State q = 0; q < d.n; ++q) {
      images[static_cast<std::size_t>(perm[static_cast<std::size_t>(q)])] =
          perm[static_cast<std::size_t>(row[q])];
    }
    delta.emplace_back(std::move(images));
  }
  std::vector<State> finals;
  for (State f : d.finals) finals.push_back(perm[static_cast<std::size_t>(f)]);
  return Dfa(d.n, std::move(delta), perm[static_cast<std::size_t>(d.initial)],
             std::move(finals));
}

Dfa normalize_bifix(const Dfa& d) {
  const auto report = bifix_report(d);  // throws if not minimal
  if (!report.bifix_free()) {
    throw PreconditionError("normalize_bifix requires a bifix-free language");
  }
  if (d.finals.size() != 1) {
    throw PreconditionError("normalize_bifix requires exactly one final state");
  }
  const auto can_accept = coreachable_to_final(d);
  std::optional<State> empty_state;
  for (State q = 0; q < d.n; ++q) {
    if (!can_accept[static_cast<std::size_t>(q)]) empty_state = q;
  }
  if (!empty_state) {
    throw PreconditionError("normalize_bifix requires an empty state");
  }
  const State final_state = d.finals.front();
  std::vector<State> perm(static_cast<std::size_t>(d.n), -1);
  perm[static_cast<std::size_t>(d.initial)] = 0;
  perm[static_cast<std::size_t>(final_state)] = d.n - 2;
  perm[static_cast<std::size_t>(*empty_state)] = d.n - 1;
  State next = 1;
  for (State q = 0; q < d.n; ++q) {
    if (perm[static_cast<std::size_t>(q)] == -1) perm[static_cast<std::size_t>(q)] = next++;
  }
  return rename(d, perm);
}

}  // namespace bifix
