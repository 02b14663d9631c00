#include "bifix/semigroup.hpp"

#include <algorithm>

namespace bifix {

Semigroup Semigroup::from_elements(int n, std::vector<Transformation> elements,
                                   std::vector<int> generator_indices) {
  Semigroup s;
  s.n_ = n;
  for (auto& t : elements) {
    if (t.n() != n) {
      throw DimensionError("element has " + std::to_string(t.n()) +
                           " states, semigroup has " + std::to_string(n));
    }
    if (s.index_.emplace(t.key(), s.elements_.size()).second) {
      s.elements_.push_back(std::move(t));
    }
  }
  for (int g : generator_indices) {
    if (g < 0 || static_cast<std::size_t>(g) >= s.elements_.size()) {
      throw DimensionError("generator index out of range");
    }
  }
  s.generator_indices_ = std::move(generator_indices);
  return s;
}

std::optional<std::size_t> Semigroup::index_of_key(std::uint64_t key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Semigroup::is_closed() const {
  for (const auto& a : elements_) {
    for (const auto& b : elements_) {
      if (!contains_key(compose_keys(a.key(), b.key(), n_))) return false;
    }
  }
  return true;
}

Semigroup close(const std::vector<Transformation>& generators) {
  if (generators.empty()) return Semigroup();
  const int n = generators.front().n();
  for (const auto& g : generators) {
    if (g.n() != n) throw DimensionError("generators disagree on the state count");
  }

  std::vector<Transformation> elements;
  std::vector<int> generator_indices;
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::vector<std::uint64_t> gen_keys;
  for (const auto& g : generators) {
    if (index.emplace(g.key(), elements.size()).second) {
      generator_indices.push_back(static_cast<int>(elements.size()));
      elements.push_back(g);
    }
    gen_keys.push_back(g.key());
  }

  std::size_t level_begin = 0;
  while (level_begin < elements.size()) {
    const std::size_t level_end = elements.size();
    std::vector<std::uint64_t> fresh;
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const std::uint64_t left = elements[i].key();
      for (std::uint64_t g : gen_keys) {
        const std::uint64_t k = compose_keys(left, g, n);
        if (!index.count(k)) {
          index.emplace(k, 0);  // placeholder, fixed below
          fresh.push_back(k);
        }
      }
    }
    std::sort(fresh.begin(), fresh.end());
    for (std::uint64_t k : fresh) {
      index[k] = elements.size();
      elements.push_back(Transformation::from_key(k, n));
    }
    level_begin = level_end;
  }
  return Semigroup::from_elements(n, std::move(elements), std::move(generator_indices));
}

bool in_bbf_key(std::uint64_t key, int n) {
  const State sink = n - 1;
  if (key_image(key, n - 1) != sink) return false;
  if (n >= 2 && key_image(key, n - 2) != sink) return false;
  for (State q = 0; q < n; ++q) {
    if (key_image(key, q) == 0) return false;
  }
  // j-th powers of every state, advanced in lockstep; j <= n suffices (the
  // forward chain of 0 repeats within n steps, after which the constraints
  // repeat as well).
  std::uint64_t power = key;
  for (int j = 1; j <= n; ++j) {
    const State zero_j = key_image(power, 0);
    if (zero_j != sink) {
      for (State q = 1; q <= n - 2; ++q) {
        if (key_image(power, q) == zero_j) return false;
      }
    }
    power = compose_keys(power, key, n);
  }
  return true;
}

bool in_bbf(const Transformation& t) { return in_bbf_key(t.key(), t.n()); }

bool in_wge6_key(std::uint64_t key, int n) {
  const State sink = n - 1;
  const State final_state = n - 2;
  if (key_image(key, sink) != sink || key_image(key, final_state) != sink) return false;
  const State p = key_image(key, 0);
  if (p == sink) {
    for (State q = 1; q <= n - 3; ++q) {
      if (key_image(key, q) == 0) return false;
    }
    return true;
  }
  if (p == final_state) {
    for (State q = 1; q <= n - 3; ++q) {
      const State img = key_image(key, q);
      if (img == 0 || img == final_state) return false;
    }
    return true;
  }
  // 0 goes to a middle state: all middle states must go to {n-2, n-1}.
  for (State q = 1; q <= n - 3; ++q) {
    const State img = key_image(key, q);
    if (img != sink && img != final_state) return false;
  }
  return true;
}

bool in_wge6(const Transformation& t) { return in_wge6_key(t.key(), t.n()); }

bool in_wle5(const Transformation& t) {
  if (!in_bbf(t)) return false;
  const int n = t.n();
  for (State p = 1; p <= n - 3; ++p) {
    for (State q = p + 1; q <= n - 3; ++q) {
      if (t[p] == t[q] && t[p] != n - 1) return false;
    }
  }
  return true;
}

namespace {

void check_enumeration_guard(int n, int min_n, bool allow_large, const char* what) {
  if (n < min_n) {
    throw DomainError(std::string(what) + " requires n >= " + std::to_string(min_n));
  }
  if (n > 8) {
    throw ResourceLimitError(std::string(what) + " is not supported for n > 8");
  }
  if (n == 8 && !allow_large) {
    throw ResourceLimitError(std::string(what) +
                             " at n = 8 scans a large space; pass the explicit override");
  }
}

// Runs fn on every transformation fixing rows n-2 and n-1 at n-1 whose free
// rows range over the given values, in lexicographic image order.
template <typename Fn>
void scan_candidates(int n, const std::vector<State>& row_values, Fn&& fn) {
  const int free_rows = n - 2;
  std::vector<std::size_t> odo(static_cast<std::size_t>(free_rows), 0);
  std::vector<State> images(static_cast<std::size_t>(n), n - 1);
  for (;;) {
    for (int q = 0; q < free_rows; ++q) {
      images[static_cast<std::size_t>(q)] = row_values[odo[static_cast<std::size_t>(q)]];
    }
    fn(images);
    int pos = free_rows - 1;
    while (pos >= 0 && odo[static_cast<std::size_t>(pos)] + 1 == row_values.size()) {
      odo[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++odo[static_cast<std::size_t>(pos)];
  }
}

}  // namespace

Semigroup enumerate_bbf(int n, bool allow_large) {
  check_enumeration_guard(n, 2, allow_large, "enumerate_bbf");
  std::vector<State> values;
  for (State v = 1; v <= n - 1; ++v) values.push_back(v);
  std::vector<Transformation> elements;
  scan_candidates(n, values, [&](const std::vector<State>& images) {
    Transformation t(images);
    if (in_bbf(t)) elements.push_back(std::move(t));
  });
  return Semigroup::from_elements(n, std::move(elements));
}

Semigroup enumerate_wle5(int n, bool allow_large) {
  check_enumeration_guard(n, 3, allow_large, "enumerate_wle5");
  std::vector<State> values;
  for (State v = 1; v <= n - 1; ++v) values.push_back(v);
  std::vector<Transformation> elements;
  scan_candidates(n, values, [&](const std::vector<State>& images) {
    Transformation t(images);
    if (in_wle5(t)) elements.push_back(std::move(t));
  });
  return Semigroup::from_elements(n, std::move(elements));
}

Semigroup enumerate_wge6(int n) {
  if (n < 3) throw DomainError("enumerate_wge6 requires n >= 3");
  if (n > Transformation::kMaxStates) {
    throw DimensionError("enumerate_wge6 beyond 16 states is not representable");
  }
  std::vector<Transformation> elements;

  // Family 1: {0, n-2, n-1} to n-1, middles anywhere except 0.
  {
    std::vector<State> values;
    for (State v = 1; v <= n - 1; ++v) values.push_back(v);
    std::vector<std::size_t> odo(static_cast<std::size_t>(n - 3), 0);
    std::vector<State> images(static_cast<std::size_t>(n), n - 1);
    images[0] = n - 1;
    for (;;) {
      for (int q = 1; q <= n - 3; ++q) {
        images[static_cast<std::size_t>(q)] = values[odo[static_cast<std::size_t>(q - 1)]];
      }
      elements.emplace_back(images);
      int pos = n - 4;
      while (pos >= 0 && odo[static_cast<std::size_t>(pos)] + 1 == values.size()) {
        odo[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++odo[static_cast<std::size_t>(pos)];
    }
  }
  // Family 2: 0 to n-2, middles anywhere except {0, n-2}.
  {
    std::vector<State> values;
    for (State v = 1; v <= n - 3; ++v) values.push_back(v);
    values.push_back(n - 1);
    std::vector<std::size_t> odo(static_cast<std::size_t>(n - 3), 0);
    std::vector<State> images(static_cast<std::size_t>(n), n - 1);
    images[0] = n - 2;
    for (;;) {
      for (int q = 1; q <= n - 3; ++q) {
        images[static_cast<std::size_t>(q)] = values[odo[static_cast<std::size_t>(q - 1)]];
      }
      elements.emplace_back(images);
      int pos = n - 4;
      while (pos >= 0 && odo[static_cast<std::size_t>(pos)] + 1 == values.size()) {
        odo[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++odo[static_cast<std::size_t>(pos)];
    }
  }
  // Family 3: 0 to a middle state, middles into {n-2, n-1}.
  for (State p = 1; p <= n - 3; ++p) {
    std::vector<State> values = {n - 2, n - 1};
    std::vector<std::size_t> odo(static_cast<std::size_t>(n - 3), 0);
    std::vector<State> images(static_cast<std::size_t>(n), n - 1);
    images[0] = p;
    for (;;) {
      for (int q = 1; q <= n - 3; ++q) {
        images[static_cast<std::size_t>(q)] = values[odo[static_cast<std::size_t>(q - 1)]];
      }
      elements.emplace_back(images);
      int pos = n - 4;
      while (pos >= 0 && odo[static_cast<std::size_t>(pos)] + 1 == values.size()) {
        odo[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++odo[static_cast<std::size_t>(pos)];
    }
  }

  std::sort(elements.begin(), elements.end());
  return Semigroup::from_elements(n, std::move(elements));
}

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

std::uint64_t wge6_cardinality(int n) {
  return ipow(static_cast<std::uint64_t>(n - 1), n - 3) +
         ipow(static_cast<std::uint64_t>(n - 2), n - 3) +
         static_cast<std::uint64_t>(n - 3) * ipow(2, n - 3);
}

std::uint64_t witness_alphabet_size(int n) {
  return ipow(static_cast<std::uint64_t>(n - 2), n - 3) +
         static_cast<std::uint64_t>(n - 3) * ipow(2, n - 3) - 1;
}

Dfa witness_dfa(int n) {
  if (n < 4) throw DomainError("witness_dfa requires n >= 4");
  std::vector<Transformation> letters;

  // (0 -> n-1)(i -> n-2)(n-2 -> n-1) for each middle state i, ascending.
  for (State i = 1; i <= n - 3; ++i) {
    std::vector<State> images(static_cast<std::size_t>(n));
    for (State q = 0; q < n; ++q) images[static_cast<std::size_t>(q)] = q;
    images[0] = n - 1;
    images[static_cast<std::size_t>(i)] = n - 2;
    images[static_cast<std::size_t>(n - 2)] = n - 1;
    letters.emplace_back(std::move(images));
  }

  const auto all = enumerate_wge6(n);
  // Second family except the one mapping every middle state to n-1, in
  // canonical key order (enumerate_wge6 is already key-sorted).
  for (const auto& t : all.elements()) {
    if (t[0] != n - 2) continue;
    bool degenerate = true;
    for (State q = 1; q <= n - 3; ++q) degenerate &= (t[q] == n - 1);
    if (!degenerate) letters.push_back(t);
  }
  // Third family except the degenerate one per image of 0, grouped by that
  // image ascending (key order within a group).
  for (State p = 1; p <= n - 3; ++p) {
    for (const auto& t : all.elements()) {
      if (t[0] != p) continue;
      bool degenerate = true;
      for (State q = 1; q <= n - 3; ++q) degenerate &= (t[q] == n - 1);
      if (!degenerate) letters.push_back(t);
    }
  }

  return Dfa(n, std::move(letters), 0, {n - 2});
}

Semigroup transition_semigroup(const Dfa& d) { return close(d.delta); }

std::vector<PairStatus> pair_statuses(const Semigroup& s) {
  if (s.empty() || s.n() < 4) {
    throw PreconditionError("pair_statuses requires a nonempty set with n >= 4");
  }
  const int n = s.n();
  const int middles = n - 3;
  auto pair_index = [&](State p, State q) {
    // p < q, both in 1..n-3
    const int i = p - 1;
    const int j = q - 1;
    return static_cast<std::size_t>(i * middles - i * (i + 1) / 2 + (j - i - 1));
  };

  std::vector<PairStatus> census;
  for (State p = 1; p <= n - 3; ++p) {
    for (State q = p + 1; q <= n - 3; ++q) census.push_back({p, q, {}, {}});
  }
  for (const auto& t : s.elements()) {
    const State zero = t[0];
    if (zero >= 1 && zero <= n - 3) {
      for (State r = 1; r <= n - 3; ++r) {
        const State other = t[r];
        if (other >= 1 && other <= n - 3 && other != zero) {
          auto& st = census[pair_index(std::min(zero, other), std::max(zero, other))];
          if (!st.colliding_witness) st.colliding_witness = t;
        }
      }
    }
    for (State p = 1; p <= n - 3; ++p) {
      for (State q = p + 1; q <= n - 3; ++q) {
        if (t[p] == t[q] && t[p] != n - 1 && t[p] != 0) {
          auto& st = census[pair_index(p, q)];
          if (!st.focused_witness) st.focused_witness = {t, t[p]};
        }
      }
    }
  }
  return census;
}

std::vector<Transformation> irreducible_elements(const Semigroup& s) {
  const int n = s.n();
  std::vector<bool> reducible(s.size(), false);
  for (const auto& a : s.elements()) {
    for (const auto& b : s.elements()) {
      const std::uint64_t k = compose_keys(a.key(), b.key(), n);
      const auto idx = s.index_of_key(k);
      if (!idx) {
        throw PreconditionError("irreducible_elements requires a closed semigroup");
      }
      reducible[*idx] = true;
    }
  }
  std::vector<Transformation> result;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!reducible[i]) result.push_back(s[i]);
  }
  return result;
}

}  // namespace bifix
