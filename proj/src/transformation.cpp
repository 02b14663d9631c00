#include "bifix/transformation.hpp"

#include <algorithm>

namespace bifix {

namespace {

std::uint64_t pack(const std::vector<std::uint8_t>& images) {
  std::uint64_t key = 0;
  for (std::size_t q = 0; q < images.size(); ++q) {
    key |= static_cast<std::uint64_t>(images[q])
           << (4 * (Transformation::kMaxStates - 1 - static_cast<int>(q)));
  }
  return key;
}

}  // namespace

Transformation::Transformation(std::vector<State> images) {
  const int n = static_cast<int>(images.size());
  if (n < 1 || n > kMaxStates) {
    throw DimensionError("transformation must have between 1 and 16 states, got " +
                         std::to_string(n));
  }
  images_.resize(images.size());
  for (int q = 0; q < n; ++q) {
    const State img = images[static_cast<std::size_t>(q)];
    if (img < 0 || img >= n) {
      throw DimensionError("image " + std::to_string(img) + " of state " +
                           std::to_string(q) + " is outside {0..." +
                           std::to_string(n - 1) + "}");
    }
    images_[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(img);
  }
  key_ = pack(images_);
}

Transformation Transformation::identity(int n) {
  std::vector<State> images(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) images[static_cast<std::size_t>(q)] = q;
  return Transformation(std::move(images));
}

Transformation Transformation::from_key(std::uint64_t key, int n) {
  std::vector<State> images(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) images[static_cast<std::size_t>(q)] = key_image(key, q);
  return Transformation(std::move(images));
}

State Transformation::apply_power(State q, int j) const {
  State r = q;
  for (int i = 0; i < j; ++i) r = (*this)[r];
  return r;
}

std::string Transformation::to_string() const {
  std::string out;
  for (int q = 0; q < n(); ++q) {
    if (q) out += ' ';
    out += std::to_string((*this)[q]);
  }
  return out;
}

Transformation compose(const Transformation& s, const Transformation& t) {
  if (s.n() != t.n()) {
    throw DimensionError("cannot compose transformations of " +
                         std::to_string(s.n()) + " and " + std::to_string(t.n()) +
                         " states");
  }
  std::vector<State> images(static_cast<std::size_t>(s.n()));
  for (int q = 0; q < s.n(); ++q) images[static_cast<std::size_t>(q)] = t[s[q]];
  return Transformation(std::move(images));
}

Transformation semiconstant(const std::vector<State>& s, State target, int n) {
  if (target < 0 || target >= n) {
    throw DimensionError("semiconstant target " + std::to_string(target) +
                         " is outside {0..." + std::to_string(n - 1) + "}");
  }
  std::vector<State> images(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) images[static_cast<std::size_t>(q)] = q;
  for (State q : s) {
    if (q < 0 || q >= n) {
      throw DimensionError("semiconstant source state " + std::to_string(q) +
                           " is outside {0..." + std::to_string(n - 1) + "}");
    }
    images[static_cast<std::size_t>(q)] = target;
  }
  return Transformation(std::move(images));
}

int in_degree(const Transformation& t, State q) {
  if (q < 0 || q >= t.n()) {
    throw DimensionError("in_degree of state " + std::to_string(q) +
                         " in a transformation of " + std::to_string(t.n()) +
                         " states");
  }
  int count = 0;
  for (State p = 0; p < t.n(); ++p) count += (t[p] == q);
  return count;
}

std::optional<int> distance(const Transformation& t, State from, State to) {
  if (from < 0 || from >= t.n() || to < 0 || to >= t.n()) {
    throw DimensionError("distance query outside the state set");
  }
  // A path in an n-state functional digraph has length at most n-1.
  State q = from;
  for (int j = 0; j < t.n(); ++j) {
    if (q == to) return j;
    q = t[q];
  }
  return std::nullopt;
}

bool OrbitDecomposition::on_core(State q) const {
  const auto& c = core[static_cast<std::size_t>(orbit_of[static_cast<std::size_t>(q)])];
  return std::find(c.begin(), c.end(), q) != c.end();
}

OrbitDecomposition orbits(const Transformation& t) {
  const int n = t.n();
  OrbitDecomposition dec;
  dec.orbit_of.assign(static_cast<std::size_t>(n), -1);

  // Iterating t n times from any state lands on the core of its component.
  std::vector<bool> on_cycle(static_cast<std::size_t>(n), false);
  for (State q = 0; q < n; ++q) {
    State w = t.apply_power(q, n);
    if (on_cycle[static_cast<std::size_t>(w)]) continue;
    State r = w;
    do {
      on_cycle[static_cast<std::size_t>(r)] = true;
      r = t[r];
    } while (r != w);
  }

  for (State q = 0; q < n; ++q) {
    if (dec.orbit_of[static_cast<std::size_t>(q)] != -1) continue;
    State w = t.apply_power(q, n);
    // Canonical core listing: start from the smallest cycle state.
    State start = w;
    for (State r = t[w]; r != w; r = t[r]) start = std::min(start, r);
    std::vector<State> core;
    State r = start;
    do {
      core.push_back(r);
      r = t[r];
    } while (r != start);
    const int id = dec.orbit_count();
    dec.core.push_back(std::move(core));
    // Everything flowing into this core belongs to the same component.
    bool grew = true;
    for (State c : dec.core.back()) dec.orbit_of[static_cast<std::size_t>(c)] = id;
    while (grew) {
      grew = false;
      for (State p = 0; p < n; ++p) {
        if (dec.orbit_of[static_cast<std::size_t>(p)] == -1 &&
            dec.orbit_of[static_cast<std::size_t>(t[p])] == id) {
          dec.orbit_of[static_cast<std::size_t>(p)] = id;
          grew = true;
        }
      }
    }
  }
  return dec;
}

bool has_cycle(const Transformation& t) {
  const auto dec = orbits(t);
  for (int i = 0; i < dec.orbit_count(); ++i) {
    if (!dec.is_fixed_point(i)) return true;
  }
  return false;
}

std::vector<State> tree_of(const Transformation& t, State root) {
  if (root < 0 || root >= t.n()) {
    throw DimensionError("tree_of root outside the state set");
  }
  const auto dec = orbits(t);
  if (dec.on_core(root) && !dec.is_fixed_point(dec.orbit_of[static_cast<std::size_t>(root)])) {
    throw DomainError("state " + std::to_string(root) +
                      " lies in a cycle; trees are only defined off-cycle");
  }
  // A fixed point is not a cycle, so its tree is defined (and contains it).
  std::vector<bool> in(static_cast<std::size_t>(t.n()), false);
  in[static_cast<std::size_t>(root)] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (State p = 0; p < t.n(); ++p) {
      if (!in[static_cast<std::size_t>(p)] && in[static_cast<std::size_t>(t[p])]) {
        in[static_cast<std::size_t>(p)] = true;
        grew = true;
      }
    }
  }
  std::vector<State> result;
  for (State q = 0; q < t.n(); ++q) {
    if (in[static_cast<std::size_t>(q)]) result.push_back(q);
  }
  return result;
}

std::uint64_t compose_keys(std::uint64_t s, std::uint64_t t, int n) {
  std::uint64_t key = 0;
  for (int q = 0; q < n; ++q) {
    key |= static_cast<std::uint64_t>(key_image(t, key_image(s, q)))
           << (4 * (Transformation::kMaxStates - 1 - q));
  }
  return key;
}

}  // namespace bifix
