#include "bifix/phi.hpp"

#include <algorithm>
#include <stdexcept>

#include "bifix/parallel.hpp"

namespace bifix {

std::string to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::k1: return "1";
    case CaseLabel::k2_1: return "2.1";
    case CaseLabel::k2_2: return "2.2";
    case CaseLabel::k2_3: return "2.3";
    case CaseLabel::k2_4_1: return "2.4.1";
    case CaseLabel::k2_4_2: return "2.4.2";
    case CaseLabel::k2_4_3: return "2.4.3";
    case CaseLabel::k2_4_4: return "2.4.4";
    case CaseLabel::k2_4_5: return "2.4.5";
    case CaseLabel::k2_5_1: return "2.5.1";
    case CaseLabel::k2_5_2: return "2.5.2";
    case CaseLabel::k3_1: return "3.1";
    case CaseLabel::k3_2_1: return "3.2.1";
    case CaseLabel::k3_2_2: return "3.2.2";
    case CaseLabel::k3_2_3: return "3.2.3";
    case CaseLabel::k3_2_4: return "3.2.4";
    case CaseLabel::k3_3: return "3.3";
    case CaseLabel::k3_4_1: return "3.4.1";
    case CaseLabel::k3_4_2: return "3.4.2";
    case CaseLabel::k3_4_3: return "3.4.3";
    case CaseLabel::k3_5_1: return "3.5.1";
    case CaseLabel::k3_5_2: return "3.5.2";
    case CaseLabel::k3_5_3: return "3.5.3";
  }
  return "?";
}

std::string to_string(Subsubcase sub) {
  switch (sub) {
    case Subsubcase::kNone: return "";
    case Subsubcase::kI: return "i";
    case Subsubcase::kII: return "ii";
  }
  return "";
}

namespace {

// Smallest state lying on a cycle of t, with its cycle predecessor.
std::pair<State, State> min_cycle_state(const Transformation& t,
                                        const OrbitDecomposition& dec) {
  State r = -1;
  for (int o = 0; o < dec.orbit_count(); ++o) {
    if (dec.is_fixed_point(o)) continue;
    // Cores are listed starting from their smallest state.
    if (r == -1 || dec.core[static_cast<std::size_t>(o)].front() < r) {
      r = dec.core[static_cast<std::size_t>(o)].front();
    }
  }
  State z = r;
  for (State w = t[r]; w != r; w = t[w]) z = w;
  return {r, z};
}

// Fixed points other than the sink whose only preimage is themselves.
std::vector<State> lone_fixed_points(const Transformation& t) {
  std::vector<State> result;
  for (State q = 0; q < t.n() - 1; ++q) {
    if (t[q] == q && in_degree(t, q) == 1) result.push_back(q);
  }
  return result;
}

// Largest ell >= 1 with x.t^ell outside {x.t^(ell-1), n-2, n-1}; the caller
// guarantees x.t qualifies at ell = 1. Stops at the sink pair or at a fixed
// point, both of which end the chain for good.
int chain_length(const Transformation& t, State x) {
  const int n = t.n();
  int ell = 1;
  State prev = t[x];
  for (;;) {
    const State next = t[prev];
    if (next == prev || next == n - 2 || next == n - 1) return ell;
    ++ell;
    prev = next;
  }
}

// The (x, ell) selection shared by the two movable-chain cases: among the
// candidates, maximize ell first, break ties by the smallest x.
std::pair<State, int> pick_chain(const Transformation& t,
                                 const std::vector<State>& candidates) {
  State best_x = -1;
  int best_ell = 0;
  for (State x : candidates) {
    const int ell = chain_length(t, x);
    if (ell > best_ell) {
      best_ell = ell;
      best_x = x;
    }
  }
  return {best_x, best_ell};
}

}  // namespace

Classification classify(const Transformation& t) {
  const int n = t.n();
  if (n < 6) {
    throw DomainError("classify requires n >= 6 (injectivity holds from n = 8)");
  }
  if (!in_bbf(t)) {
    throw PreconditionError("classify requires a transformation satisfying in_bbf");
  }

  Classification cls;
  if (in_wge6(t)) {
    cls.label = CaseLabel::k1;
    return cls;
  }

  const State sink = n - 1;
  const State final_state = n - 2;
  auto& ctx = cls.ctx;
  ctx.p = t[0];
  ctx.k = 0;
  while (true) {
    const State next = t.apply_power(ctx.p, ctx.k + 1);
    if (next == sink || next == final_state) break;
    ++ctx.k;
  }
  const State chain_end = t.apply_power(ctx.p, ctx.k + 1);
  const State chain_tail = t.apply_power(ctx.p, ctx.k);  // p.t^k
  const auto dec = orbits(t);
  bool cyclic = false;
  for (int o = 0; o < dec.orbit_count(); ++o) cyclic |= !dec.is_fixed_point(o);

  if (chain_end == sink) {
    // 0 -> p -> ... -> p.t^k -> n-1.
    if (cyclic) {
      cls.label = CaseLabel::k2_1;
      auto [r, z] = min_cycle_state(t, dec);
      ctx.r = r;
      ctx.z = z;
      return cls;
    }
    if (ctx.k >= 1) {
      cls.label = CaseLabel::k2_2;
      return cls;
    }
    const auto lone = lone_fixed_points(t);
    if (lone.size() >= 2) {
      cls.label = CaseLabel::k2_3;
      ctx.f1 = lone[0];
      ctx.f2 = lone[1];
      return cls;
    }
    std::vector<State> movable;
    for (State x = 1; x < n; ++x) {
      if (in_degree(t, x) == 0 && t[x] != x && t[x] != final_state && t[x] != sink) {
        movable.push_back(x);
      }
    }
    if (!movable.empty()) {
      auto [x, ell] = pick_chain(t, movable);
      ctx.x = x;
      ctx.ell = ell;
      const State stop = t.apply_power(x, ell + 1);
      const State xt = t[x];
      if (stop == sink) {
        if (ell >= 2) {
          cls.label = CaseLabel::k2_4_1;
        } else if (in_degree(t, xt) > 1) {
          cls.label = CaseLabel::k2_4_2;
          for (State y = 0; y < n; ++y) {
            if (y != x && t[y] == xt) {
              ctx.y = y;
              break;
            }
          }
        } else {
          cls.label = CaseLabel::k2_4_3;
          cls.sub = ctx.p < xt ? Subsubcase::kI : Subsubcase::kII;
        }
      } else if (stop == final_state) {
        cls.label = CaseLabel::k2_4_4;
      } else {
        cls.label = CaseLabel::k2_4_5;
      }
      return cls;
    }
    // Exactly one fixed point besides the sink remains; everything else in
    // the middle goes straight to n-2 or n-1.
    if (lone.size() != 1) {
      throw std::logic_error("case 2.5 expects a unique lone fixed point");
    }
    ctx.f = lone[0];
    for (State q = 1; q <= n - 3; ++q) {
      if (q != ctx.p && q != *ctx.f && t[q] == sink) ctx.r_list.push_back(q);
    }
    if (ctx.r_list.size() >= 2) {
      cls.label = CaseLabel::k2_5_1;
      return cls;
    }
    ctx.r_list.clear();
    for (State q = 1; q <= n - 3; ++q) {
      if (t[q] == final_state) ctx.q_list.push_back(q);
    }
    cls.label = CaseLabel::k2_5_2;
    return cls;
  }

  // chain_end == n-2: 0 -> p -> ... -> p.t^k -> n-2 -> n-1.
  for (State q = 1; q <= n - 3; ++q) {
    if (q != chain_tail && t[q] == final_state) ctx.q_list.push_back(q);
  }
  const int v = static_cast<int>(ctx.q_list.size());

  if (ctx.k == 0) {
    if (cyclic) {
      cls.label = CaseLabel::k3_1;
      auto [r, z] = min_cycle_state(t, dec);
      ctx.r = r;
      ctx.z = z;
      return cls;
    }
    std::vector<State> movable;
    for (State x = 1; x < n; ++x) {
      if (t[x] != x && t[x] != final_state && t[x] != sink) movable.push_back(x);
    }
    if (!movable.empty()) {
      auto [x, ell] = pick_chain(t, movable);
      ctx.x = x;
      ctx.ell = ell;
      const State stop = t.apply_power(x, ell + 1);
      const State xt = t[x];
      if (stop == sink) {
        if (ell >= 2) {
          cls.label = CaseLabel::k3_2_1;
          bool any_qi_below_x = false;
          for (State qi : ctx.q_list) any_qi_below_x |= (qi < x);
          cls.sub = any_qi_below_x ? Subsubcase::kI : Subsubcase::kII;
        } else if (in_degree(t, xt) >= 2) {
          cls.label = CaseLabel::k3_2_2;
          for (State y = 0; y < n; ++y) {
            if (y != x && t[y] == xt) {
              ctx.y = y;
              break;
            }
          }
        } else {
          cls.label = CaseLabel::k3_2_3;
          cls.sub = (v >= 1 || ctx.p < xt) ? Subsubcase::kI : Subsubcase::kII;
        }
      } else if (stop == t.apply_power(x, ell)) {
        cls.label = CaseLabel::k3_2_4;
      } else {
        // A second chain into n-2 would clash with the initial chain at
        // power two, which in_bbf already excludes.
        throw std::logic_error("movable chain cannot end at n-2 under in_bbf");
      }
      return cls;
    }
    const auto lone = lone_fixed_points(t);
    if (lone.size() >= 2) {
      cls.label = CaseLabel::k3_3;
      ctx.f1 = lone[0];
      ctx.f2 = lone[1];
      return cls;
    }
    if (lone.size() != 1) {
      throw std::logic_error("case 3.4 expects a unique lone fixed point");
    }
    ctx.f = lone[0];
    for (State q = 1; q <= n - 3; ++q) {
      if (q != ctx.p && q != *ctx.f && t[q] == sink) ctx.r_list.push_back(q);
    }
    if (v >= 2) {
      cls.label = CaseLabel::k3_4_1;
    } else if (v == 1) {
      cls.label = CaseLabel::k3_4_2;
    } else {
      cls.label = CaseLabel::k3_4_3;
      if (ctx.r_list.empty()) {
        throw std::logic_error("case 3.4.3 expects at least one state mapped to n-1");
      }
    }
    return cls;
  }

  // k >= 1.
  if (v == 0) {
    if (in_degree(t, chain_tail) == 1) {
      cls.label = CaseLabel::k3_5_1;
      return cls;
    }
    cls.label = CaseLabel::k3_5_2;
    const State before_tail = t.apply_power(ctx.p, ctx.k - 1);
    for (State y = 0; y < n; ++y) {
      if (y != before_tail && t[y] == chain_tail) {
        ctx.y = y;
        break;
      }
    }
    return cls;
  }
  cls.label = CaseLabel::k3_5_3;
  // Furthest state from which some q_i is reachable, smallest first; the
  // first q_i on its path is q_m. If every q_i has in-degree 0 this reduces
  // to c = 0 and x = q_m = q_1.
  int c = -1;
  State x = -1;
  State q_m = -1;
  for (State q = 0; q < n; ++q) {
    State w = q;
    for (int d = 0; d < n; ++d) {
      if (std::binary_search(ctx.q_list.begin(), ctx.q_list.end(), w)) {
        if (d > c) {
          c = d;
          x = q;
          q_m = w;
        }
        break;
      }
      w = t[w];
    }
  }
  ctx.c = c;
  ctx.x = x;
  ctx.q_m = q_m;
  return cls;
}

Transformation phi(const Transformation& t) { return phi(t, classify(t)); }

Transformation phi(const Transformation& t, const Classification& cls) {
  if (cls.label == CaseLabel::k1) return t;

  const int n = t.n();
  const State sink = n - 1;
  const State final_state = n - 2;
  const auto& ctx = cls.ctx;
  std::vector<State> s(static_cast<std::size_t>(n));
  for (State q = 0; q < n; ++q) s[static_cast<std::size_t>(q)] = t[q];
  auto set = [&](State q, State img) { s[static_cast<std::size_t>(q)] = img; };
  auto chain_state = [&](int i) { return t.apply_power(ctx.p, i); };

  switch (cls.label) {
    case CaseLabel::k2_1:
      set(0, sink);
      set(ctx.p, *ctx.r);
      for (int i = 1; i <= ctx.k; ++i) set(chain_state(i), chain_state(i - 1));
      break;
    case CaseLabel::k2_2:
      set(0, sink);
      set(ctx.p, ctx.p);
      for (int i = 1; i <= ctx.k; ++i) set(chain_state(i), chain_state(i - 1));
      break;
    case CaseLabel::k2_3:
      // p joins f2, the larger state of the swapped pair, so the focused
      // pair lands on a non-minimal cycle state (what separates these images
      // from the ones built by the cycle case).
      set(0, sink);
      set(*ctx.f1, *ctx.f2);
      set(*ctx.f2, *ctx.f1);
      set(ctx.p, *ctx.f2);
      break;
    case CaseLabel::k2_4_1:
      set(0, sink);
      set(ctx.p, t.apply_power(*ctx.x, *ctx.ell));
      break;
    case CaseLabel::k2_4_2:
      set(0, sink);
      set(ctx.p, *ctx.y);
      set(t[*ctx.x], *ctx.x);
      set(*ctx.x, *ctx.y);
      break;
    case CaseLabel::k2_4_3:
      set(0, sink);
      set(ctx.p, *ctx.x);
      set(t[*ctx.x], *ctx.x);
      set(*ctx.x, cls.sub == Subsubcase::kI ? final_state : sink);
      break;
    case CaseLabel::k2_4_4:
      set(0, sink);
      set(ctx.p, final_state);
      break;
    case CaseLabel::k2_4_5:
      set(0, sink);
      set(ctx.p, t.apply_power(*ctx.x, *ctx.ell));
      break;
    case CaseLabel::k2_5_1: {
      set(0, sink);
      set(ctx.p, *ctx.f);
      const auto& r = ctx.r_list;
      for (std::size_t i = 0; i + 1 < r.size(); ++i) set(r[i], r[i + 1]);
      set(r.back(), r.front());
      break;
    }
    case CaseLabel::k2_5_2: {
      set(0, sink);
      set(ctx.p, *ctx.f);
      const auto& q = ctx.q_list;
      for (std::size_t i = 1; i < q.size(); ++i) set(q[i], q[i - 1]);
      if (!q.empty()) set(q.front(), q.back());
      break;
    }
    case CaseLabel::k3_1:
      set(0, final_state);
      set(ctx.p, *ctx.r);
      for (State qi : ctx.q_list) set(qi, ctx.p);
      break;
    case CaseLabel::k3_2_1: {
      set(0, final_state);
      const State top = t.apply_power(*ctx.x, *ctx.ell);
      set(ctx.p, top);
      set(top, cls.sub == Subsubcase::kI ? top : sink);
      for (State qi : ctx.q_list) set(qi, ctx.p);
      break;
    }
    case CaseLabel::k3_2_2:
      set(0, final_state);
      set(ctx.p, *ctx.y);
      set(t[*ctx.x], *ctx.x);
      set(*ctx.x, *ctx.y);
      for (State qi : ctx.q_list) set(qi, ctx.p);
      break;
    case CaseLabel::k3_2_3:
      set(0, final_state);
      set(ctx.p, *ctx.x);
      set(t[*ctx.x], *ctx.x);
      set(*ctx.x, cls.sub == Subsubcase::kI ? *ctx.x : sink);
      for (State qi : ctx.q_list) set(qi, ctx.p);
      break;
    case CaseLabel::k3_2_4: {
      set(0, final_state);
      set(ctx.p, t.apply_power(*ctx.x, *ctx.ell));
      for (int i = 1; i <= *ctx.ell; ++i) {
        set(t.apply_power(*ctx.x, i), t.apply_power(*ctx.x, i - 1));
      }
      set(*ctx.x, ctx.p);
      for (State qi : ctx.q_list) set(qi, *ctx.x);
      break;
    }
    case CaseLabel::k3_3:
      set(0, final_state);
      set(*ctx.f1, *ctx.f2);
      set(*ctx.f2, *ctx.f1);
      set(ctx.p, *ctx.f2);
      for (State qi : ctx.q_list) set(qi, ctx.p);
      break;
    case CaseLabel::k3_4_1: {
      set(0, final_state);
      set(ctx.p, *ctx.f);
      const auto& q = ctx.q_list;
      for (std::size_t i = 0; i + 1 < q.size(); ++i) set(q[i], q[i + 1]);
      set(q.back(), q.front());
      for (State ri : ctx.r_list) set(ri, q.back());
      break;
    }
    case CaseLabel::k3_4_2:
      set(0, final_state);
      set(ctx.p, *ctx.f);
      set(ctx.q_list.front(), *ctx.f);
      for (State ri : ctx.r_list) set(ri, ctx.p);
      break;
    case CaseLabel::k3_4_3: {
      set(0, final_state);
      set(ctx.p, *ctx.f);
      const auto& r = ctx.r_list;
      set(r.front(), ctx.p);
      for (std::size_t i = 1; i < r.size(); ++i) set(r[i], *ctx.f);
      break;
    }
    case CaseLabel::k3_5_1:
      set(0, final_state);
      set(ctx.p, ctx.p);
      for (int i = 1; i <= ctx.k; ++i) set(chain_state(i), chain_state(i - 1));
      break;
    case CaseLabel::k3_5_2:
      set(0, final_state);
      set(ctx.p, *ctx.y);
      set(*ctx.y, sink);
      for (int i = 1; i <= ctx.k; ++i) set(chain_state(i), chain_state(i - 1));
      break;
    case CaseLabel::k3_5_3: {
      set(0, final_state);
      set(ctx.p, *ctx.x);
      for (int i = 1; i <= ctx.k; ++i) set(chain_state(i), chain_state(i - 1));
      const auto& q = ctx.q_list;
      for (std::size_t i = 0; i + 1 < q.size(); ++i) set(q[i], q[i + 1]);
      set(q.back(), q.front());
      break;
    }
    case CaseLabel::k1:
      break;
  }
  return Transformation(std::move(s));
}

AuditReport audit_injectivity(const Semigroup& T, unsigned threads) {
  AuditReport report;
  report.domain_size = T.size();
  const int n = T.n();

  std::vector<Classification> cls(T.size());
  std::vector<std::uint64_t> image_keys(T.size());
  std::vector<char> in_codomain(T.size(), 0);
  parallel_for(T.size(), threads, [&](std::size_t i) {
    cls[i] = classify(T[i]);
    const Transformation s = phi(T[i], cls[i]);
    image_keys[i] = s.key();
    in_codomain[i] = in_wge6(s) ? 1 : 0;
  });

  report.image_in_wge6 =
      std::all_of(in_codomain.begin(), in_codomain.end(), [](char b) { return b != 0; });

  std::vector<std::size_t> order(T.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (image_keys[a] != image_keys[b]) return image_keys[a] < image_keys[b];
    return T[a].key() < T[b].key();
  });
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || image_keys[order[i]] != image_keys[order[i - 1]]) {
      ++distinct;
    } else {
      const std::size_t a = order[i - 1], b = order[i];
      report.collisions.push_back({T[a], T[b], phi(T[a], cls[a]), cls[a].label,
                                   cls[b].label});
    }
  }
  report.image_size = distinct;
  report.injective = report.collisions.empty();

  const auto census = pair_statuses(T);
  std::optional<std::pair<State, State>> colliding;
  for (const auto& st : census) {
    if (st.colliding()) {
      colliding = {st.p, st.q};
      break;
    }
  }
  report.has_colliding_pair = colliding.has_value();
  if (colliding && n >= 8) {
    report.strict_bound_holds = T.size() < wge6_cardinality(n);
    // Marker transformation: focuses the colliding pair, carries a length-2
    // cycle of two in-degree-1 states and a fixed point of in-degree 3, so
    // no construction case produces it.
    const auto [p1, p2] = *colliding;
    std::vector<State> picks;
    for (State q = 1; q <= n - 3 && picks.size() < 3; ++q) {
      if (q != p1 && q != p2) picks.push_back(q);
    }
    std::vector<State> images(static_cast<std::size_t>(n));
    for (State q = 0; q < n; ++q) images[static_cast<std::size_t>(q)] = q;
    images[0] = n - 1;
    images[static_cast<std::size_t>(n - 2)] = n - 1;
    images[static_cast<std::size_t>(n - 1)] = n - 1;
    images[static_cast<std::size_t>(p1)] = p2;
    images[static_cast<std::size_t>(picks[0])] = p2;
    images[static_cast<std::size_t>(picks[1])] = picks[2];
    images[static_cast<std::size_t>(picks[2])] = picks[1];
    const Transformation sentinel(std::move(images));
    report.sentinel_absent =
        std::find(image_keys.begin(), image_keys.end(), sentinel.key()) ==
        image_keys.end();
  }
  return report;
}

}  // namespace bifix
